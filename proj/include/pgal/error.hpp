#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgal {

/// Base class for every failure raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An enumeration would exceed its configured size budget.
class budget_exceeded : public error {
public:
    budget_exceeded(std::string budget_name, std::size_t requested, std::size_t budget)
        : error("budget '" + budget_name + "' exceeded: needs " + std::to_string(requested) +
                ", limit " + std::to_string(budget)),
          name_(std::move(budget_name)) {}

    const std::string& budget_name() const noexcept { return name_; }

private:
    std::string name_;
};

/// An internal consistency assertion failed; the math guarantees it cannot happen.
class defect : public error {
public:
    using error::error;
};

}  // namespace pgal

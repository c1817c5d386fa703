#pragma once

// Built-in instances.
//   E0  global-shift-F2   C3 shifting the factors of F2^3
//   E1  shift3-F2         E0 restricted to e = (1,1,0)
//   E2  shift3-F4         the same restriction over F4
//   E3  global-shift-F4   C3 shifting the factors of F4^3
//   N1  trivial-C2-F2     C2 acting trivially on F2 (not Galois)
//   H4  frobenius-C2-F4   C2 acting on F4 by Frobenius

#include "pgal/error.hpp"
#include "pgal/finring.hpp"
#include "pgal/groups.hpp"
#include "pgal/partial_action.hpp"

#include <string>
#include <vector>

namespace pgal {

inline RingPtr make_f4() { return make_gf(2, {1, 1, 1}); }

/// C_k acting on field^k by x_i -> x_{i+1 mod k}.
inline GlobalAction global_shift(const RingPtr& field, std::size_t k) {
    auto ring = make_product(std::vector<RingPtr>(k, field));
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = (i + 1) % k;
    return global_from_generators(ring, make_cyclic(static_cast<std::uint32_t>(k)),
                                  {product_automorphism(*ring, perm, 0)});
}

/// Index of (1,...,1,0) in field^k: the idempotent killing the last factor.
inline elem drop_last_factor(const FiniteRing& product) {
    const auto& comps = product.tag().components;
    std::vector<elem> parts;
    for (std::size_t i = 0; i < comps.size(); ++i) parts.push_back(i + 1 < comps.size() ? comps[i]->one() : comps[i]->zero());
    return product.join(parts);
}

struct FixtureInfo {
    std::string id;
    std::string name;
    std::string summary;
    bool galois;  // expected verdict
};

inline const std::vector<FixtureInfo>& fixture_catalog() {
    static const std::vector<FixtureInfo> catalog{
        {"E0", "global-shift-F2", "C3 shifting the factors of F2^3 (global)", true},
        {"E1", "shift3-F2", "C3 shift on F2^3 restricted to (1,1,0)", true},
        {"E2", "shift3-F4", "C3 shift on F4^3 restricted to (1,1,0)", true},
        {"E3", "global-shift-F4", "C3 shifting the factors of F4^3 (global)", true},
        {"N1", "trivial-C2-F2", "C2 acting trivially on F2", false},
        {"H4", "frobenius-C2-F4", "C2 acting on F4 by Frobenius (global)", true},
    };
    return catalog;
}

inline const FixtureInfo& fixture_info(const std::string& key) {
    for (const auto& f : fixture_catalog())
        if (f.id == key || f.name == key) return f;
    throw error("unknown fixture '" + key + "'");
}

inline PartialAction fixture(const std::string& key) {
    const auto& id = fixture_info(key).id;
    if (id == "E0") return PartialAction::make(as_partial(global_shift(make_zmod(2), 3)));
    if (id == "E3") return PartialAction::make(as_partial(global_shift(make_f4(), 3)));
    if (id == "E1" || id == "E2") {
        auto g = global_shift(id == "E1" ? make_zmod(2) : make_f4(), 3);
        return restrict_global(g, drop_last_factor(*g.ring));
    }
    if (id == "N1") return trivial_action(make_zmod(2), make_cyclic(2));
    auto f4 = make_f4();
    return PartialAction::make(as_partial(global_from_generators(f4, make_cyclic(2), {frobenius(*f4)})));
}

}  // namespace pgal

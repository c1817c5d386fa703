#pragma once

// Integer matrix normal forms over arbitrary-precision integers.
//
// Row-vector convention throughout: a lattice is the row span of a matrix,
// and a homomorphism Z^r -> Z^s acts as x |-> x * M for an r x s matrix M.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pgal::intmat {

using Int = boost::multiprecision::cpp_int;
using Vec = std::vector<Int>;
using Mat = std::vector<Vec>;

inline Mat identity(std::size_t n) {
    Mat m(n, Vec(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline Mat zeros(std::size_t rows, std::size_t cols) { return Mat(rows, Vec(cols, 0)); }

inline std::int64_t to_i64(const Int& v) { return v.convert_to<std::int64_t>(); }

// Floor-style division with nonnegative remainder for positive divisors.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

namespace detail {

inline void row_axpy(Vec& dst, const Vec& src, const Int& k) {
    if (k == 0) return;
    for (std::size_t j = 0; j < dst.size(); ++j)
        if (src[j] != 0) dst[j] += k * src[j];
}

inline void col_axpy(Mat& m, std::size_t dst, std::size_t src, const Int& k) {
    if (k == 0) return;
    for (auto& row : m)
        if (row[src] != 0) row[dst] += k * row[src];
}

inline void col_swap(Mat& m, std::size_t a, std::size_t b) {
    for (auto& row : m) std::swap(row[a], row[b]);
}

inline void row_negate(Vec& v) {
    for (auto& x : v) x = -x;
}

inline void col_negate(Mat& m, std::size_t c) {
    for (auto& row : m) row[c] = -row[c];
}

}  // namespace detail

/// Result of a Smith normal form computation: U * A * V = diag(d).
///
/// `diag` has min(rows, cols) entries, all nonnegative, each dividing the next
/// nonzero one; zeros come last. `vinv` is the inverse of `v`.
struct Smith {
    Mat u;
    Mat v;
    Mat vinv;
    Vec diag;
    std::size_t rank = 0;
};

inline Smith smith(Mat a, std::size_t cols) {
    const std::size_t rows = a.size();
    Smith s;
    s.u = identity(rows);
    s.v = identity(cols);
    s.vinv = identity(cols);
    const std::size_t n = std::min(rows, cols);

    auto swap_cols = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        detail::col_swap(a, x, y);
        detail::col_swap(s.v, x, y);
        std::swap(s.vinv[x], s.vinv[y]);
    };
    // column dst += k * column src  (V updated likewise, Vinv gets row src -= k * row dst)
    auto add_col = [&](std::size_t dst, std::size_t src, const Int& k) {
        detail::col_axpy(a, dst, src, k);
        detail::col_axpy(s.v, dst, src, k);
        detail::row_axpy(s.vinv[src], s.vinv[dst], -k);
    };
    auto swap_rows = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        std::swap(a[x], a[y]);
        std::swap(s.u[x], s.u[y]);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, const Int& k) {
        detail::row_axpy(a[dst], a[src], k);
        detail::row_axpy(s.u[dst], s.u[src], k);
    };

    // smallest nonzero entry of the trailing block, moved to (t, t) with a positive sign
    auto place_min = [&](std::size_t t) {
        bool found = false;
        std::size_t pr = t, pc = t;
        Int best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0 && (!found || abs(a[i][j]) < best)) {
                    best = abs(a[i][j]);
                    pr = i;
                    pc = j;
                    found = true;
                }
        if (!found) return false;
        swap_rows(t, pr);
        swap_cols(t, pc);
        if (a[t][t] < 0) {
            detail::row_negate(a[t]);
            detail::row_negate(s.u[t]);
        }
        return true;
    };
    // nearest-integer quotient keeps remainders within half the pivot
    auto nearest = [](const Int& x, const Int& p) { return floor_div(2 * x + p, 2 * p); };

    // each round either finishes pivot t or strictly lowers the block minimum
    std::size_t t = 0;
    for (; t < n; ++t) {
        if (!place_min(t)) break;
        for (;;) {
            const Int p = a[t][t];
            bool rest = false;
            for (std::size_t i = t + 1; i < rows; ++i)
                if (a[i][t] != 0) {
                    add_row(i, t, -nearest(a[i][t], p));
                    rest = rest || a[i][t] != 0;
                }
            for (std::size_t j = t + 1; j < cols; ++j)
                if (a[t][j] != 0) {
                    add_col(j, t, -nearest(a[t][j], p));
                    rest = rest || a[t][j] != 0;
                }
            if (!rest) {
                std::optional<std::size_t> bad;
                for (std::size_t i = t + 1; i < rows && !bad; ++i)
                    for (std::size_t j = t + 1; j < cols; ++j)
                        if (a[i][j] % p != 0) {
                            bad = i;
                            break;
                        }
                if (!bad) break;
                add_row(t, *bad, 1);
            }
            place_min(t);
        }
    }
    s.rank = t;
    s.diag.assign(n, 0);
    for (std::size_t i = 0; i < t; ++i) s.diag[i] = a[i][i];
    return s;
}

/// Row-style Hermite normal form basis of the row span (nonzero rows only,
/// pivots positive, entries above pivots reduced into [0, pivot)).
inline Mat hnf_basis(const Mat& rows, std::size_t cols) {
    std::vector<Vec> basis(cols);  // basis[c] has its pivot at column c, or is empty
    auto insert = [&](Vec v) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (v[c] == 0) continue;
            if (basis[c].empty()) {
                if (v[c] < 0) detail::row_negate(v);
                basis[c] = std::move(v);
                return;
            }
            Vec& b = basis[c];
            // extended-gcd combination of v and b on column c
            while (v[c] != 0) {
                Int q = floor_div(b[c], v[c]);
                detail::row_axpy(b, v, -q);
                std::swap(b, v);
            }
            if (b[c] < 0) detail::row_negate(b);
        }
    };
    for (const auto& r : rows) insert(r);
    Mat out;
    for (std::size_t c = 0; c < cols; ++c) {
        if (basis[c].empty()) continue;
        out.push_back(basis[c]);
    }
    // reduce above pivots
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::size_t pc = 0;
        while (out[i][pc] == 0) ++pc;
        for (std::size_t k = 0; k < i; ++k) {
            Int q = floor_div(out[k][pc], out[i][pc]);
            detail::row_axpy(out[k], out[i], -q);
        }
    }
    return out;
}

/// Coordinates c with c * basis == v, for an HNF basis; nullopt if v is not in the lattice.
inline std::optional<Vec> lattice_coords(const Mat& basis, Vec v) {
    Vec c(basis.size(), 0);
    std::size_t row = 0;
    for (std::size_t col = 0; col < v.size(); ++col) {
        if (v[col] == 0) {
            if (row < basis.size() && basis[row][col] != 0) ++row;
            continue;
        }
        if (row >= basis.size() || basis[row][col] == 0) return std::nullopt;
        if (v[col] % basis[row][col] != 0) return std::nullopt;
        Int q = v[col] / basis[row][col];
        c[row] = q;
        detail::row_axpy(v, basis[row], -q);
        ++row;
    }
    return c;
}

inline Vec vec_mat(const Vec& x, const Mat& m, std::size_t cols) {
    Vec out(cols, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < cols; ++j)
            if (m[i][j] != 0) out[j] += x[i] * m[i][j];
    }
    return out;
}

}  // namespace pgal::intmat

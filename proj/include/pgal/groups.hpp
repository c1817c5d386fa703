#pragma once

// Finite groups by Cayley table, and finite abelian group structure via
// integer normal forms.

#include "pgal/error.hpp"
#include "pgal/intmat.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace pgal {

using gelem = std::uint32_t;

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
public:
    std::size_t order() const noexcept { return order_; }
    gelem identity() const noexcept { return identity_; }
    gelem mul(gelem a, gelem b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
    gelem inv(gelem a) const { return inverse_[a]; }
    const std::string& name() const noexcept { return name_; }
    /// Orders of the cyclic factors for a product-of-cyclics group (element index is
    /// mixed radix, first factor most significant); empty for explicit tables.
    const std::vector<std::uint32_t>& cyclic_factors() const noexcept { return cyclic_; }
    std::string label(gelem g) const;

    /// Validates the table against the group axioms; throws on failure.
    static GroupPtr from_table(std::size_t order, std::vector<gelem> table, std::string name = "table");

private:
    FiniteGroup() = default;
    std::size_t order_ = 0;
    gelem identity_ = 0;
    std::vector<gelem> table_;
    std::vector<gelem> inverse_;
    std::vector<std::uint32_t> cyclic_;
    std::string name_;

    friend GroupPtr make_cyclic_product(std::vector<std::uint32_t>);
};

inline GroupPtr FiniteGroup::from_table(std::size_t order, std::vector<gelem> table, std::string name) {
    if (order == 0) throw error("group order must be positive");
    if (table.size() != order * order) throw error("group table must be order x order");
    for (gelem v : table)
        if (v >= order) throw error("group table entry out of range");
    auto m = [&](gelem a, gelem b) { return table[a * order + b]; };
    std::optional<gelem> id;
    for (gelem e = 0; e < order && !id; ++e) {
        bool ok = true;
        for (gelem a = 0; a < order && ok; ++a) ok = m(e, a) == a && m(a, e) == a;
        if (ok) id = e;
    }
    if (!id) throw error("group table has no identity");
    std::vector<gelem> inv(order);
    for (gelem a = 0; a < order; ++a) {
        std::optional<gelem> b;
        for (gelem c = 0; c < order; ++c)
            if (m(a, c) == *id && m(c, a) == *id) {
                b = c;
                break;
            }
        if (!b) throw error("group table: element " + std::to_string(a) + " has no inverse");
        inv[a] = *b;
    }
    for (gelem a = 0; a < order; ++a)
        for (gelem b = 0; b < order; ++b)
            for (gelem c = 0; c < order; ++c)
                if (m(m(a, b), c) != m(a, m(b, c)))
                    throw error("group table not associative at (" + std::to_string(a) + "," +
                                std::to_string(b) + "," + std::to_string(c) + ")");
    std::shared_ptr<FiniteGroup> g(new FiniteGroup());
    g->order_ = order;
    g->identity_ = *id;
    g->table_ = std::move(table);
    g->inverse_ = std::move(inv);
    g->name_ = std::move(name);
    return g;
}

/// C_{n_1} x ... x C_{n_k}; the empty list gives the trivial group.
inline GroupPtr make_cyclic_product(std::vector<std::uint32_t> factors) {
    std::size_t n = 1;
    for (auto f : factors) {
        if (f == 0) throw error("cyclic factor must be positive");
        n *= f;
        if (n > 4096) throw error("group too large");
    }
    std::shared_ptr<FiniteGroup> g(new FiniteGroup());
    g->order_ = n;
    g->identity_ = 0;
    g->table_.resize(n * n);
    g->inverse_.resize(n);
    auto split = [&](std::size_t a) {
        std::vector<std::uint32_t> d(factors.size());
        for (std::size_t i = factors.size(); i-- > 0;) {
            d[i] = static_cast<std::uint32_t>(a % factors[i]);
            a /= factors[i];
        }
        return d;
    };
    auto join = [&](const std::vector<std::uint32_t>& d) {
        std::size_t a = 0;
        for (std::size_t i = 0; i < factors.size(); ++i) a = a * factors[i] + d[i];
        return static_cast<gelem>(a);
    };
    for (std::size_t a = 0; a < n; ++a) {
        auto da = split(a);
        std::vector<std::uint32_t> di(factors.size());
        for (std::size_t i = 0; i < factors.size(); ++i) di[i] = (factors[i] - da[i]) % factors[i];
        g->inverse_[a] = join(di);
        for (std::size_t b = 0; b < n; ++b) {
            auto db = split(b);
            for (std::size_t i = 0; i < factors.size(); ++i) db[i] = (da[i] + db[i]) % factors[i];
            g->table_[a * n + b] = join(db);
        }
    }
    g->cyclic_ = factors;
    if (factors.empty()) {
        g->name_ = "1";
    } else {
        for (std::size_t i = 0; i < factors.size(); ++i)
            g->name_ += (i ? " x C" : "C") + std::to_string(factors[i]);
    }
    return g;
}

inline GroupPtr make_cyclic(std::uint32_t n) { return make_cyclic_product({n}); }

inline std::string FiniteGroup::label(gelem g) const {
    if (g == identity_) return "1";
    if (cyclic_.size() == 1) return g == 1 ? "g" : "g^" + std::to_string(g);
    return "#" + std::to_string(g);
}

/// Tuples of G^n in lexicographic order; index = sum g_i |G|^{n-i}.
inline std::vector<gelem> tuple_of(std::size_t index, std::size_t n, std::size_t order) {
    std::vector<gelem> t(n);
    for (std::size_t i = n; i-- > 0;) {
        t[i] = static_cast<gelem>(index % order);
        index /= order;
    }
    return t;
}

inline std::size_t index_of(std::span<const gelem> t, std::size_t order) {
    std::size_t idx = 0;
    for (gelem g : t) idx = idx * order + g;
    return idx;
}

// ---------------------------------------------------------------------------
// Finite abelian groups

using Coords = std::vector<std::int64_t>;

/// Invariant-factor decomposition d_1 | d_2 | ... (all > 1) with explicit generators.
template <class T>
struct FinAbPresentation {
    std::vector<T> generators;
    std::vector<std::int64_t> invariant_factors;

    std::size_t rank() const noexcept { return invariant_factors.size(); }
    std::uint64_t order() const {
        std::uint64_t n = 1;
        for (auto d : invariant_factors) n *= static_cast<std::uint64_t>(d);
        return n;
    }
};

/// Presentation of an abelian group given by its element list, an operation,
/// and the identity, together with the discrete-log map to generator coordinates.
template <class T, class Hash = std::hash<T>>
class AbelianStructure {
public:
    using Op = std::function<T(const T&, const T&)>;

    AbelianStructure(std::vector<T> elements, Op op, T identity);

    const FinAbPresentation<T>& presentation() const noexcept { return pres_; }
    const std::vector<std::int64_t>& factors() const noexcept { return pres_.invariant_factors; }
    const std::vector<T>& generators() const noexcept { return pres_.generators; }
    std::size_t order() const noexcept { return elements_.size(); }
    const std::vector<T>& elements() const noexcept { return elements_; }
    const T& identity() const noexcept { return identity_; }

    /// Coordinates of x; throws if x is not in the group.
    const Coords& dlog(const T& x) const {
        auto it = dlog_.find(x);
        if (it == dlog_.end()) throw error("element not in abelian group");
        return it->second;
    }
    bool contains(const T& x) const { return dlog_.count(x) != 0; }

    T element(const Coords& c) const {
        T acc = identity_;
        for (std::size_t i = 0; i < c.size(); ++i) {
            const auto d = pres_.invariant_factors[i];
            const auto k = ((c[i] % d) + d) % d;
            for (std::int64_t t = 0; t < k; ++t) acc = op_(acc, pres_.generators[i]);
        }
        return acc;
    }

private:
    std::vector<T> elements_;
    Op op_;
    T identity_;
    FinAbPresentation<T> pres_;
    std::unordered_map<T, Coords, Hash> dlog_;
};

template <class T, class Hash>
AbelianStructure<T, Hash>::AbelianStructure(std::vector<T> elements, Op op, T identity)
    : elements_(std::move(elements)), op_(std::move(op)), identity_(std::move(identity)) {
    const std::size_t n = elements_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (op_(elements_[i], elements_[j]) != op_(elements_[j], elements_[i]))
                throw error("abelian_structure: operation is not commutative");

    // greedy generating set, with breadth-first coordinates relative to it
    std::vector<T> gens;
    std::unordered_map<T, Coords, Hash> coords;
    std::vector<T> order_seen;
    intmat::Mat relations;
    auto explore = [&]() {
        coords.clear();
        order_seen.clear();
        relations.clear();
        const std::size_t k = gens.size();
        coords.emplace(identity_, Coords(k, 0));
        order_seen.push_back(identity_);
        for (std::size_t head = 0; head < order_seen.size(); ++head) {
            const T x = order_seen[head];
            const Coords cx = coords.at(x);
            for (std::size_t i = 0; i < k; ++i) {
                T y = op_(x, gens[i]);
                Coords cy = cx;
                ++cy[i];
                auto it = coords.find(y);
                if (it == coords.end()) {
                    coords.emplace(y, std::move(cy));
                    order_seen.push_back(std::move(y));
                } else if (it->second != cy) {
                    intmat::Vec rel(k);
                    for (std::size_t j = 0; j < k; ++j) rel[j] = cy[j] - it->second[j];
                    relations.push_back(std::move(rel));
                }
            }
        }
    };
    explore();
    for (const T& x : elements_) {
        if (coords.count(x)) continue;
        gens.push_back(x);
        explore();
    }
    if (coords.size() != n) throw error("abelian_structure: element list is not closed under the operation");

    const std::size_t k = gens.size();
    const intmat::Mat basis = intmat::hnf_basis(relations, k);
    if (basis.size() != k && k > 0) throw defect("abelian_structure: relation lattice not full rank");
    const intmat::Smith s = intmat::smith(basis, k);

    // new generator j = prod_i gens[i]^{vinv[j][i]}; new coords y = x * V
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < k; ++j)
        if (s.diag[j] != 1) keep.push_back(j);
    for (std::size_t j : keep) {
        T h = identity_;
        for (std::size_t i = 0; i < k; ++i) {
            // exponent reduced modulo the order of gens[i] is unnecessary for correctness;
            // reduce modulo the group order to keep the loop short
            const std::int64_t e = intmat::to_i64(intmat::mod_floor(s.vinv[j][i], intmat::Int(n)));
            for (std::int64_t t = 0; t < e; ++t) h = op_(h, gens[i]);
        }
        pres_.generators.push_back(h);
        pres_.invariant_factors.push_back(intmat::to_i64(s.diag[j]));
    }
    for (const auto& [x, cx] : coords) {
        Coords y(keep.size());
        for (std::size_t t = 0; t < keep.size(); ++t) {
            const std::size_t j = keep[t];
            intmat::Int acc = 0;
            for (std::size_t i = 0; i < k; ++i) acc += intmat::Int(cx[i]) * s.v[i][j];
            y[t] = intmat::to_i64(intmat::mod_floor(acc, s.diag[j]));
        }
        dlog_.emplace(x, std::move(y));
    }
}

/// Result of analysing a homomorphism between finite abelian groups given in
/// invariant-factor coordinates.
struct HomReport {
    std::uint64_t kernel_order = 1;
    std::uint64_t image_order = 1;
    std::uint64_t domain_order = 1;
    std::uint64_t codomain_order = 1;
    /// Representatives of codomain / image (empty when `reps_truncated`).
    std::vector<Coords> coset_reps;
    bool reps_truncated = false;
    /// Generators of the kernel, as domain coordinates.
    std::vector<Coords> kernel_generators;
};

namespace detail {

inline intmat::Int prod_int(std::span<const std::int64_t> v) {
    intmat::Int n = 1;
    for (auto d : v) n *= d;
    return n;
}

// saturating at UINT64_MAX
inline std::uint64_t to_u64(const intmat::Int& n) {
    return n > intmat::Int(UINT64_MAX) ? UINT64_MAX : static_cast<std::uint64_t>(n);
}

inline std::uint64_t prod_u64(std::span<const std::int64_t> v) { return to_u64(prod_int(v)); }

// rows of [images; diag(codomain)]
inline intmat::Mat stacked(std::span<const std::int64_t> codomain, std::span<const Coords> images) {
    const std::size_t s = codomain.size();
    intmat::Mat m;
    m.reserve(images.size() + s);
    for (const auto& im : images) {
        intmat::Vec row(s);
        for (std::size_t j = 0; j < s; ++j) row[j] = im[j];
        m.push_back(std::move(row));
    }
    for (std::size_t j = 0; j < s; ++j) {
        intmat::Vec row(s, 0);
        row[j] = codomain[j];
        m.push_back(std::move(row));
    }
    return m;
}

inline void check_images(std::span<const std::int64_t> domain, std::span<const std::int64_t> codomain,
                         std::span<const Coords> images) {
    if (images.size() != domain.size()) throw error("hom: one image per domain generator required");
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i].size() != codomain.size()) throw error("hom: image has wrong length");
        for (std::size_t j = 0; j < codomain.size(); ++j)
            if ((static_cast<intmat::Int>(domain[i]) * images[i][j]) % codomain[j] != 0)
                throw error("hom: image of generator " + std::to_string(i) +
                            " violates its order relation");
    }
}

}  // namespace detail

/// Kernel and image orders of the homomorphism sending domain generator i to
/// `images[i]` (codomain coordinates), plus coset representatives of the image.
inline HomReport hom_kernel_image(std::span<const std::int64_t> domain, std::span<const std::int64_t> codomain,
                                  std::span<const Coords> images, std::size_t max_reps = 4096) {
    detail::check_images(domain, codomain, images);
    HomReport rep;
    rep.domain_order = detail::prod_u64(domain);
    rep.codomain_order = detail::prod_u64(codomain);
    const std::size_t r = domain.size(), s = codomain.size();
    if (s == 0) {
        rep.image_order = 1;
        rep.kernel_order = rep.domain_order;
        rep.coset_reps.push_back({});
        for (std::size_t i = 0; i < r; ++i) {
            Coords c(r, 0);
            c[i] = 1;
            rep.kernel_generators.push_back(c);
        }
        return rep;
    }
    const intmat::Mat st = detail::stacked(codomain, images);
    const intmat::Smith sm = intmat::smith(st, s);
    intmat::Int quotient = 1;
    for (std::size_t j = 0; j < s; ++j) quotient *= sm.diag[j];
    const intmat::Int image = detail::prod_int(codomain) / quotient;
    rep.image_order = detail::to_u64(image);
    rep.kernel_order = detail::to_u64(detail::prod_int(domain) / image);

    // kernel: rows rank.. of U, projected to the first r coordinates
    for (std::size_t i = sm.rank; i < r + s; ++i) {
        Coords c(r);
        bool nonzero = false;
        for (std::size_t j = 0; j < r; ++j) {
            c[j] = intmat::to_i64(intmat::mod_floor(sm.u[i][j], intmat::Int(domain[j])));
            nonzero |= c[j] != 0;
        }
        if (nonzero) rep.kernel_generators.push_back(std::move(c));
    }

    if (quotient > intmat::Int(max_reps)) {
        rep.reps_truncated = true;
        return rep;
    }
    // enumerate the box prod [0, diag_j) in y-coordinates, map back x = y * Vinv
    const auto q = static_cast<std::size_t>(quotient);
    for (std::size_t code = 0; code < q; ++code) {
        std::size_t c = code;
        intmat::Vec y(s, 0);
        for (std::size_t j = s; j-- > 0;) {
            const auto dj = static_cast<std::size_t>(sm.diag[j]);
            y[j] = c % dj;
            c /= dj;
        }
        const intmat::Vec x = intmat::vec_mat(y, sm.vinv, s);
        Coords cx(s);
        for (std::size_t j = 0; j < s; ++j) cx[j] = intmat::to_i64(intmat::mod_floor(x[j], intmat::Int(codomain[j])));
        rep.coset_reps.push_back(std::move(cx));
    }
    return rep;
}

/// Some x with hom(x) == target, or nullopt if target is outside the image.
inline std::optional<Coords> hom_preimage(std::span<const std::int64_t> domain, std::span<const std::int64_t> codomain,
                                          std::span<const Coords> images, const Coords& target) {
    detail::check_images(domain, codomain, images);
    const std::size_t r = domain.size(), s = codomain.size();
    if (s == 0) return Coords(r, 0);
    const intmat::Mat st = detail::stacked(codomain, images);
    const intmat::Smith sm = intmat::smith(st, s);
    // z * St = b  <=>  (z U^{-1}) D = b V
    intmat::Vec b(s);
    for (std::size_t j = 0; j < s; ++j) b[j] = target[j];
    const intmat::Vec bv = intmat::vec_mat(b, sm.v, s);
    intmat::Vec w(r + s, 0);
    for (std::size_t j = 0; j < s; ++j) {
        if (j < sm.rank) {
            if (bv[j] % sm.diag[j] != 0) return std::nullopt;
            w[j] = bv[j] / sm.diag[j];
        } else if (bv[j] != 0) {
            return std::nullopt;
        }
    }
    const intmat::Vec z = intmat::vec_mat(w, sm.u, r + s);
    Coords x(r);
    for (std::size_t i = 0; i < r; ++i) x[i] = intmat::to_i64(intmat::mod_floor(z[i], intmat::Int(domain[i])));
    return x;
}

/// Structure of K / B for subgroups B <= K of A = (+) Z/a_i, each given by
/// generating coordinate vectors.
struct Subquotient {
    std::vector<std::int64_t> invariant_factors;  // all > 1
    std::vector<Coords> generators;               // A-coordinates of lifts
    std::uint64_t order = 1;
};

inline Subquotient subquotient(std::span<const std::int64_t> ambient, std::span<const Coords> k_gens,
                               std::span<const Coords> b_gens) {
    const std::size_t r = ambient.size();
    Subquotient out;
    if (r == 0) return out;
    auto lattice = [&](std::span<const Coords> gens) {
        intmat::Mat rows;
        for (const auto& g : gens) {
            intmat::Vec v(r);
            for (std::size_t i = 0; i < r; ++i) v[i] = g[i];
            rows.push_back(std::move(v));
        }
        for (std::size_t i = 0; i < r; ++i) {
            intmat::Vec v(r, 0);
            v[i] = ambient[i];
            rows.push_back(std::move(v));
        }
        return intmat::hnf_basis(rows, r);
    };
    const intmat::Mat lk = lattice(k_gens);
    const intmat::Mat lb = lattice(b_gens);
    intmat::Mat c;
    for (const auto& row : lb) {
        auto co = intmat::lattice_coords(lk, row);
        if (!co) throw error("subquotient: B is not contained in K");
        c.push_back(std::move(*co));
    }
    const intmat::Smith sm = intmat::smith(c, r);
    for (std::size_t j = 0; j < r; ++j) {
        if (sm.diag[j] == 1) continue;
        if (sm.diag[j] == 0) throw defect("subquotient: infinite quotient");
        out.invariant_factors.push_back(intmat::to_i64(sm.diag[j]));
        const intmat::Vec lift = intmat::vec_mat(sm.vinv[j], lk, r);
        Coords g(r);
        for (std::size_t i = 0; i < r; ++i) g[i] = intmat::to_i64(intmat::mod_floor(lift[i], intmat::Int(ambient[i])));
        out.generators.push_back(std::move(g));
        out.order *= static_cast<std::uint64_t>(out.invariant_factors.back());
    }
    return out;
}

}  // namespace pgal

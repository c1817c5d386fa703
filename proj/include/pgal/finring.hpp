#pragma once

// Finite commutative unital rings stored as dense addition / multiplication
// tables.
//
// Element numbering is part of the public contract:
//   * Z/n            : the residue k has index k.
//   * GF(p^k)        : c_0 + c_1 x + ... + c_{k-1} x^{k-1} has index
//                      c_0 + c_1 p + ... + c_{k-1} p^{k-1}.
//   * R_1 x ... x R_m: mixed radix with the first component most significant,
//                      i.e. lexicographic order over component tuples.

#include "pgal/error.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pgal {

using elem = std::uint32_t;

inline constexpr std::size_t default_ring_cap = 4096;

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

enum class RingKind { modular, galois_field, product, corner, table };

/// Describes how a ring was built. Only `kind` is meaningful for table rings.
struct StructureTag {
    RingKind kind = RingKind::table;
    std::uint32_t characteristic = 0;     // modular: n; galois_field: p
    std::vector<std::uint32_t> modulus;   // galois_field: c_0..c_k of the monic polynomial
    std::vector<RingPtr> components;      // product factors
    elem corner_idempotent = 0;           // corner: e in the ambient ring
    RingPtr ambient;                      // corner: the ambient ring
    std::vector<elem> corner_members;     // corner: ambient indices, ascending
};

class FiniteRing {
public:
    std::size_t order() const noexcept { return order_; }
    elem zero() const noexcept { return zero_; }
    elem one() const noexcept { return one_; }

    elem add(elem a, elem b) const { return add_[idx(a, b)]; }
    elem mul(elem a, elem b) const { return mul_[idx(a, b)]; }
    elem neg(elem a) const { return neg_[a]; }
    elem sub(elem a, elem b) const { return add(a, neg(b)); }

    /// n * a for a nonnegative integer n.
    elem times(std::uint64_t n, elem a) const {
        elem acc = zero_, base = a;
        while (n) {
            if (n & 1u) acc = add(acc, base);
            base = add(base, base);
            n >>= 1;
        }
        return acc;
    }

    elem pow(elem a, std::uint64_t n) const {
        elem acc = one_, base = a;
        while (n) {
            if (n & 1u) acc = mul(acc, base);
            base = mul(base, base);
            n >>= 1;
        }
        return acc;
    }

    bool is_idempotent(elem e) const { return mul(e, e) == e; }

    /// Multiples of e, i.e. the ideal Re, ascending.
    std::vector<elem> ideal(elem e) const {
        std::vector<char> seen(order_, 0);
        for (elem r = 0; r < order_; ++r) seen[mul(r, e)] = 1;
        std::vector<elem> out;
        for (elem r = 0; r < order_; ++r)
            if (seen[r]) out.push_back(r);
        return out;
    }

    const StructureTag& tag() const noexcept { return tag_; }
    std::string describe() const;

    /// Component tuple of a product-ring element (empty for non-products).
    std::vector<elem> split(elem a) const {
        std::vector<elem> out;
        if (tag_.kind != RingKind::product) return out;
        out.resize(tag_.components.size());
        for (std::size_t i = tag_.components.size(); i-- > 0;) {
            const auto m = static_cast<elem>(tag_.components[i]->order());
            out[i] = a % m;
            a /= m;
        }
        return out;
    }

    elem join(std::span<const elem> parts) const {
        elem a = 0;
        for (std::size_t i = 0; i < parts.size(); ++i)
            a = a * static_cast<elem>(tag_.components[i]->order()) + parts[i];
        return a;
    }

    /// Builds a ring from raw tables; checks every ring axiom exhaustively.
    static RingPtr from_tables(std::size_t order, std::vector<elem> add, std::vector<elem> mul,
                               elem zero, elem one, StructureTag tag = {});

    /// Table-axiom violations, empty if the ring is valid.
    std::vector<std::string> axiom_violations() const;

private:
    FiniteRing() = default;
    std::size_t idx(elem a, elem b) const { return static_cast<std::size_t>(a) * order_ + b; }
    void finish();

    std::size_t order_ = 0;
    elem zero_ = 0, one_ = 0;
    std::vector<std::uint16_t> add_, mul_;
    std::vector<elem> neg_;
    StructureTag tag_;

    friend RingPtr make_zmod(std::uint32_t, std::size_t);
    friend RingPtr make_gf(std::uint32_t, std::vector<std::uint32_t>, std::size_t);
    friend RingPtr make_product(std::vector<RingPtr>, std::size_t);
    friend RingPtr corner_ring(const RingPtr&, elem);
};

namespace detail {

inline void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap) throw budget_exceeded("ring size", n, cap);
    if (n > 65536) throw error("rings larger than 65536 elements are not representable");
}

inline bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Polynomials over Z/p as coefficient vectors, lowest degree first, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::uint32_t lead = m.back();
    // inverse of the leading coefficient
    std::uint32_t inv = 1;
    for (std::uint32_t t = 1; t < p; ++t)
        if ((static_cast<std::uint64_t>(t) * lead) % p == 1) inv = t;
    while (a.size() >= m.size()) {
        const std::uint64_t q = (static_cast<std::uint64_t>(a.back()) * inv) % p;
        const std::size_t shift = a.size() - m.size();
        for (std::size_t i = 0; i < m.size(); ++i)
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - (q * m[i]) % p) % p);
        trim(a);
    }
    return a;
}

inline bool irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t deg = f.size() - 1;
    // trial division by every monic polynomial of degree 1..deg/2
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly g(d + 1, 0);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                g[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            g[d] = 1;
            if (poly_mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

inline void FiniteRing::finish() {
    neg_.assign(order_, 0);
    for (elem a = 0; a < order_; ++a)
        for (elem b = 0; b < order_; ++b)
            if (add(a, b) == zero_) {
                neg_[a] = b;
                break;
            }
}

inline std::vector<std::string> FiniteRing::axiom_violations() const {
    std::vector<std::string> out;
    const auto n = static_cast<elem>(order_);
    auto fail = [&](std::string s) {
        if (out.size() < 16) out.push_back(std::move(s));
    };
    if (n > 1 && zero_ == one_) fail("zero equals one in a nontrivial ring");
    for (elem a = 0; a < n; ++a) {
        if (add(a, zero_) != a) fail("zero is not additive identity at " + std::to_string(a));
        if (mul(a, one_) != a) fail("one is not multiplicative identity at " + std::to_string(a));
        if (add(a, neg_[a]) != zero_) fail("no additive inverse for " + std::to_string(a));
        for (elem b = 0; b < n; ++b) {
            if (add(a, b) != add(b, a)) fail("addition not commutative");
            if (mul(a, b) != mul(b, a)) fail("multiplication not commutative");
            for (elem c = 0; c < n; ++c) {
                if (add(add(a, b), c) != add(a, add(b, c))) fail("addition not associative");
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) fail("multiplication not associative");
                if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) fail("not distributive");
            }
        }
        if (out.size() >= 16) break;
    }
    return out;
}

inline RingPtr FiniteRing::from_tables(std::size_t order, std::vector<elem> add, std::vector<elem> mul,
                                       elem zero, elem one, StructureTag tag) {
    detail::check_cap(order, 65536);
    if (order == 0) throw error("ring order must be positive");
    if (add.size() != order * order || mul.size() != order * order)
        throw error("ring tables must be order x order");
    if (zero >= order || one >= order) throw error("zero/one out of range");
    auto in_range = [&](elem v) { return v < order; };
    if (!std::all_of(add.begin(), add.end(), in_range) || !std::all_of(mul.begin(), mul.end(), in_range))
        throw error("ring table entry out of range");
    std::shared_ptr<FiniteRing> r(new FiniteRing());
    r->order_ = order;
    r->zero_ = zero;
    r->one_ = one;
    r->add_.assign(add.begin(), add.end());
    r->mul_.assign(mul.begin(), mul.end());
    r->tag_ = std::move(tag);
    r->finish();
    if (auto v = r->axiom_violations(); !v.empty()) throw error("ring tables invalid: " + v.front());
    return r;
}

/// Z/n.
inline RingPtr make_zmod(std::uint32_t n, std::size_t cap = default_ring_cap) {
    if (n == 0) throw error("Z/n requires n >= 1");
    detail::check_cap(n, cap);
    std::shared_ptr<FiniteRing> r(new FiniteRing());
    r->order_ = n;
    r->zero_ = 0;
    r->one_ = 1 % n;
    r->add_.resize(std::size_t{n} * n);
    r->mul_.resize(std::size_t{n} * n);
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b) {
            r->add_[a * n + b] = static_cast<std::uint16_t>((a + b) % n);
            r->mul_[a * n + b] = static_cast<std::uint16_t>((a * b) % n);
        }
    r->tag_.kind = RingKind::modular;
    r->tag_.characteristic = n;
    r->finish();
    return r;
}

/// GF(p^k) as Z/p[x] / (f); `modulus` lists c_0..c_k of a monic irreducible f.
inline RingPtr make_gf(std::uint32_t p, std::vector<std::uint32_t> modulus,
                       std::size_t cap = default_ring_cap) {
    if (!detail::is_prime(p)) throw error("GF(p^k) requires a prime p, got " + std::to_string(p));
    for (auto& c : modulus) c %= p;
    detail::trim(modulus);
    if (modulus.size() < 2) throw error("GF modulus must have degree >= 1");
    if (modulus.back() != 1) throw error("GF modulus must be monic");
    if (!detail::irreducible(modulus, p)) throw error("GF modulus is reducible over Z/" + std::to_string(p));
    const std::size_t k = modulus.size() - 1;
    std::size_t q = 1;
    for (std::size_t i = 0; i < k; ++i) {
        q *= p;
        detail::check_cap(q, cap);
    }
    auto decode = [&](std::size_t v) {
        detail::Poly a(k, 0);
        for (std::size_t i = 0; i < k; ++i) {
            a[i] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        return a;
    };
    auto encode = [&](detail::Poly a) {
        a.resize(k, 0);
        std::size_t v = 0;
        for (std::size_t i = k; i-- > 0;) v = v * p + a[i];
        return static_cast<elem>(v);
    };
    std::shared_ptr<FiniteRing> r(new FiniteRing());
    r->order_ = q;
    r->zero_ = 0;
    r->one_ = 1;
    r->add_.resize(q * q);
    r->mul_.resize(q * q);
    for (std::size_t a = 0; a < q; ++a) {
        const auto pa = decode(a);
        for (std::size_t b = 0; b < q; ++b) {
            const auto pb = decode(b);
            detail::Poly s(k), m(2 * k, 0);
            for (std::size_t i = 0; i < k; ++i) s[i] = (pa[i] + pb[i]) % p;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    m[i + j] = static_cast<std::uint32_t>((m[i + j] + std::uint64_t{pa[i]} * pb[j]) % p);
            r->add_[a * q + b] = static_cast<std::uint16_t>(encode(s));
            r->mul_[a * q + b] = static_cast<std::uint16_t>(encode(detail::poly_mod(m, modulus, p)));
        }
    }
    r->tag_.kind = RingKind::galois_field;
    r->tag_.characteristic = p;
    r->tag_.modulus = modulus;
    r->finish();
    return r;
}

/// Direct product with componentwise operations.
inline RingPtr make_product(std::vector<RingPtr> parts, std::size_t cap = default_ring_cap) {
    if (parts.empty()) throw error("empty ring product");
    std::size_t n = 1;
    for (const auto& p : parts) {
        n *= p->order();
        detail::check_cap(n, cap);
    }
    std::shared_ptr<FiniteRing> r(new FiniteRing());
    r->order_ = n;
    r->tag_.kind = RingKind::product;
    r->tag_.components = parts;
    const std::size_t m = parts.size();
    std::vector<std::vector<elem>> comp(n, std::vector<elem>(m));
    for (std::size_t a = 0; a < n; ++a) comp[a] = r->split(static_cast<elem>(a));
    r->add_.resize(n * n);
    r->mul_.resize(n * n);
    std::vector<elem> s(m), t(m);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t i = 0; i < m; ++i) {
                s[i] = parts[i]->add(comp[a][i], comp[b][i]);
                t[i] = parts[i]->mul(comp[a][i], comp[b][i]);
            }
            r->add_[a * n + b] = static_cast<std::uint16_t>(r->join(s));
            r->mul_[a * n + b] = static_cast<std::uint16_t>(r->join(t));
        }
    std::vector<elem> z(m), o(m);
    for (std::size_t i = 0; i < m; ++i) {
        z[i] = parts[i]->zero();
        o[i] = parts[i]->one();
    }
    r->zero_ = r->join(z);
    r->one_ = r->join(o);
    r->finish();
    return r;
}

/// The corner ring Re with identity e; element i is the i-th smallest ambient index in Re.
inline RingPtr corner_ring(const RingPtr& ambient, elem e) {
    if (!ambient->is_idempotent(e)) throw error("corner_ring requires an idempotent");
    const auto members = ambient->ideal(e);
    const std::size_t n = members.size();
    std::vector<elem> local(ambient->order(), 0);
    for (std::size_t i = 0; i < n; ++i) local[members[i]] = static_cast<elem>(i);
    std::shared_ptr<FiniteRing> r(new FiniteRing());
    r->order_ = n;
    r->add_.resize(n * n);
    r->mul_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            r->add_[a * n + b] = static_cast<std::uint16_t>(local[ambient->add(members[a], members[b])]);
            r->mul_[a * n + b] = static_cast<std::uint16_t>(local[ambient->mul(members[a], members[b])]);
        }
    r->zero_ = local[ambient->zero()];
    r->one_ = local[e];
    r->tag_.kind = RingKind::corner;
    r->tag_.ambient = ambient;
    r->tag_.corner_idempotent = e;
    r->tag_.corner_members = members;
    r->finish();
    return r;
}

inline std::string FiniteRing::describe() const {
    switch (tag_.kind) {
        case RingKind::modular:
            return "Z/" + std::to_string(tag_.characteristic);
        case RingKind::galois_field: {
            std::size_t q = order_;
            return "GF(" + std::to_string(q) + ")";
        }
        case RingKind::product: {
            std::string s;
            for (std::size_t i = 0; i < tag_.components.size(); ++i) {
                if (i) s += " x ";
                s += tag_.components[i]->describe();
            }
            return s;
        }
        case RingKind::corner:
            return "(" + tag_.ambient->describe() + ")*e[" + std::to_string(tag_.corner_idempotent) + "]";
        case RingKind::table:
            break;
    }
    return "ring of order " + std::to_string(order_);
}

/// All solutions of e*e = e, ascending.
inline std::vector<elem> idempotents(const FiniteRing& r) {
    std::vector<elem> out;
    for (elem e = 0; e < r.order(); ++e)
        if (r.is_idempotent(e)) out.push_back(e);
    return out;
}

/// Minimal nonzero idempotents, ascending. They are pairwise orthogonal and sum to one.
inline std::vector<elem> primitive_idempotents(const FiniteRing& r) {
    std::vector<elem> out;
    for (elem e : idempotents(r)) {
        if (e == r.zero()) continue;
        bool minimal = true;
        for (elem f : idempotents(r))
            if (f != r.zero() && f != e && r.mul(e, f) == f) {
                minimal = false;
                break;
            }
        if (minimal) out.push_back(e);
    }
    return out;
}

/// The unit group U(Re) with identity e; `inverse[i]` is the corner inverse of `elements[i]`.
struct CornerUnits {
    elem identity = 0;
    std::vector<elem> elements;
    std::vector<elem> inverse;

    std::size_t size() const noexcept { return elements.size(); }
    bool contains(elem u) const { return std::binary_search(elements.begin(), elements.end(), u); }
    std::optional<elem> inverse_of(elem u) const {
        auto it = std::lower_bound(elements.begin(), elements.end(), u);
        if (it == elements.end() || *it != u) return std::nullopt;
        return inverse[static_cast<std::size_t>(it - elements.begin())];
    }
};

inline CornerUnits corner_units(const FiniteRing& r, elem e) {
    if (!r.is_idempotent(e)) throw error("corner_units requires an idempotent");
    CornerUnits cu;
    cu.identity = e;
    const auto members = r.ideal(e);
    for (elem u : members) {
        std::optional<elem> inv;
        for (elem v : members)
            if (r.mul(u, v) == e) {
                if (inv) throw defect("corner inverse not unique");
                inv = v;
            }
        if (inv) {
            cu.elements.push_back(u);
            cu.inverse.push_back(*inv);
        }
    }
    return cu;
}

/// A subset of a ring closed under the ring operations and containing 0 and 1.
struct Subring {
    RingPtr ambient;
    std::vector<elem> members;  // ascending

    std::size_t size() const noexcept { return members.size(); }
    bool contains(elem a) const { return std::binary_search(members.begin(), members.end(), a); }
    bool is_field() const {
        for (elem a : members) {
            if (a == ambient->zero()) continue;
            bool unit = false;
            for (elem b : members)
                if (ambient->mul(a, b) == ambient->one()) {
                    unit = true;
                    break;
                }
            if (!unit) return false;
        }
        return members.size() > 1;
    }
};

/// Smallest subring containing `seeds`, by closure iteration.
inline Subring subring_generated(const RingPtr& ring, std::span<const elem> seeds) {
    std::vector<char> in(ring->order(), 0);
    std::vector<elem> members;
    auto push = [&](elem a) {
        if (!in[a]) {
            in[a] = 1;
            members.push_back(a);
        }
    };
    push(ring->zero());
    push(ring->one());
    for (elem s : seeds) push(s);
    for (std::size_t i = 0; i < members.size(); ++i) {
        const elem a = members[i];
        push(ring->neg(a));
        for (std::size_t j = 0; j <= i; ++j) {
            push(ring->add(a, members[j]));
            push(ring->mul(a, members[j]));
        }
    }
    std::sort(members.begin(), members.end());
    return Subring{ring, std::move(members)};
}

/// True iff `members` (any order) forms a subring of `ring`.
inline bool is_subring(const FiniteRing& ring, std::span<const elem> members) {
    std::vector<char> in(ring.order(), 0);
    for (elem a : members) in[a] = 1;
    if (!in[ring.zero()] || !in[ring.one()]) return false;
    for (elem a : members) {
        if (!in[ring.neg(a)]) return false;
        for (elem b : members)
            if (!in[ring.add(a, b)] || !in[ring.mul(a, b)]) return false;
    }
    return true;
}

}  // namespace pgal

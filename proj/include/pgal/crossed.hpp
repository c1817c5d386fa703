#pragma once

// Graded algebras over a partial action: the skew group ring, crossed products
// twisted by a 2-cocycle, and Delta(Theta) built from the twisted bimodules
// (D_g)_{g^-1}. Elements are per-component vectors (a_g)_g with a_g in D_g.

#include "pgal/additive.hpp"
#include "pgal/cohomology.hpp"
#include "pgal/error.hpp"
#include "pgal/partial_action.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace pgal {

/// (D_g)_{g^-1}: left action r*d = r d, right action d*r = d alpha_g(r 1_{g^-1}).
class TwistedBimodule {
public:
    TwistedBimodule(const PartialAction& a, gelem g) : a_(a), g_(g) {}

    gelem degree() const noexcept { return g_; }
    const std::vector<elem>& carrier() const { return a_.domain(g_); }
    elem left(elem r, elem d) const { return a_.ring().mul(r, d); }
    elem right(elem d, elem r) const { return a_.ring().mul(d, a_.apply(g_, r)); }

    /// First (r, d) breaking r d = d * alpha_{g^-1}(r 1_g), if any.
    std::optional<std::pair<elem, elem>> compatibility_violation() const {
        const auto& R = a_.ring();
        const gelem gi = a_.group().inv(g_);
        for (elem r = 0; r < R.order(); ++r)
            for (elem d : carrier())
                if (left(r, d) != right(d, a_.apply(gi, r))) return std::pair{r, d};
        return std::nullopt;
    }

private:
    const PartialAction& a_;
    gelem g_;
};

enum class AlgebraKind { skew, crossed, delta_theta };

inline const char* to_string(AlgebraKind k) {
    switch (k) {
        case AlgebraKind::skew: return "skew group ring";
        case AlgebraKind::crossed: return "crossed product";
        case AlgebraKind::delta_theta: return "Delta(Theta)";
    }
    return "?";
}

struct AssociativityReport {
    std::uint64_t triples = 0;
    bool sampled = false;
    bool ok = true;
    std::string witness;
};

struct BasisElement {
    gelem g;
    elem value;  // additive generator of D_g
    std::int64_t order;
};

class GradedAlgebra {
public:
    using Element = std::vector<elem>;
    using Product = std::function<elem(gelem, elem, gelem, elem)>;

    GradedAlgebra(std::shared_ptr<const PartialAction> action, AlgebraKind kind, std::optional<Cochain> twist,
                  Product product)
        : a_(std::move(action)), kind_(kind), twist_(std::move(twist)), product_(std::move(product)) {
        const auto& R = a_->ring();
        for (gelem g = 0; g < a_->group_order(); ++g) {
            components_.push_back(additive_structure(a_->ring_ptr(), a_->domain(g)));
            offset_.push_back(basis_.size());
            const auto& st = components_.back();
            for (std::size_t j = 0; j < st.generators().size(); ++j)
                basis_.push_back({g, st.generators()[j], st.factors()[j]});
        }
        unity_ = zero();
        const gelem e = a_->group().identity();
        unity_[e] = twist_ ? CochainContext(*a_).inverse(R.one(), twist_->values[index_of(std::vector<gelem>{e, e},
                                                                                             a_->group_order())])
                           : R.one();
    }

    const PartialAction& action() const noexcept { return *a_; }
    AlgebraKind kind() const noexcept { return kind_; }
    const std::optional<Cochain>& twist() const noexcept { return twist_; }
    const std::vector<BasisElement>& basis() const noexcept { return basis_; }
    const AdditiveStructure& component(gelem g) const { return components_[g]; }

    std::uint64_t order() const {
        std::uint64_t n = 1;
        for (const auto& c : components_) n *= c.order();
        return n;
    }

    Element zero() const { return Element(a_->group_order(), a_->ring().zero()); }
    const Element& unity() const noexcept { return unity_; }

    /// a delta_g as an algebra element; a must lie in D_g.
    Element homogeneous(gelem g, elem a) const {
        if (a_->ring().mul(a, a_->one_g(g)) != a) throw error("homogeneous: coefficient outside D_g");
        Element x = zero();
        x[g] = a;
        return x;
    }

    /// The image of r under R -> algebra, r |-> r * unity.
    Element embed(elem r) const {
        Element x = zero();
        const gelem e = a_->group().identity();
        x[e] = a_->ring().mul(r, unity_[e]);
        return x;
    }

    /// (a delta_g)(b delta_h) as the coefficient of delta_{gh}.
    elem product(gelem g, elem a, gelem h, elem b) const { return product_(g, a, h, b); }

    Element add(const Element& x, const Element& y) const {
        Element z(x.size());
        for (std::size_t g = 0; g < x.size(); ++g) z[g] = a_->ring().add(x[g], y[g]);
        return z;
    }

    Element mul(const Element& x, const Element& y) const {
        const auto& R = a_->ring();
        const auto& G = a_->group();
        Element z = zero();
        for (gelem g = 0; g < x.size(); ++g) {
            if (x[g] == R.zero()) continue;
            for (gelem h = 0; h < y.size(); ++h) {
                if (y[h] == R.zero()) continue;
                const gelem gh = G.mul(g, h);
                z[gh] = R.add(z[gh], product(g, x[g], h, y[h]));
            }
        }
        return z;
    }

    Element basis_element(std::size_t i) const { return homogeneous(basis_[i].g, basis_[i].value); }

    /// The index-th element, with the last component varying fastest.
    Element element(std::uint64_t index) const {
        Element x = zero();
        for (gelem g = static_cast<gelem>(components_.size()); g-- > 0;) {
            const auto& els = components_[g].elements();
            x[g] = els[index % els.size()];
            index /= els.size();
        }
        return x;
    }

    /// Checks (xy)z = x(yz) on basis triples; exhaustive up to `limit` triples, else
    /// `limit` random triples from a fixed seed.
    AssociativityReport check_associativity(std::uint64_t limit = 1'000'000) const {
        AssociativityReport rep;
        const std::uint64_t b = basis_.size();
        auto test = [&](std::size_t i, std::size_t j, std::size_t k) {
            const auto x = basis_element(i), y = basis_element(j), z = basis_element(k);
            ++rep.triples;
            if (mul(mul(x, y), z) != mul(x, mul(y, z))) {
                rep.ok = false;
                std::ostringstream os;
                os << "basis triple (" << i << ", " << j << ", " << k << ")";
                rep.witness = os.str();
                return false;
            }
            return true;
        };
        if (b * b * b <= limit) {
            for (std::size_t i = 0; i < b; ++i)
                for (std::size_t j = 0; j < b; ++j)
                    for (std::size_t k = 0; k < b; ++k)
                        if (!test(i, j, k)) return rep;
            return rep;
        }
        rep.sampled = true;
        std::mt19937_64 rng(0x5eed);
        std::uniform_int_distribution<std::size_t> pick(0, b - 1);
        for (std::uint64_t t = 0; t < limit; ++t)
            if (!test(pick(rng), pick(rng), pick(rng))) return rep;
        return rep;
    }

    /// Whether unity() is a two-sided identity on every basis element.
    bool unity_ok() const {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const auto x = basis_element(i);
            if (mul(unity_, x) != x || mul(x, unity_) != x) return false;
        }
        return true;
    }

    /// Lines "i j k c": basis_i basis_j = sum_k c basis_k (only nonzero c).
    std::string structure_constants() const {
        std::ostringstream os;
        const auto& G = a_->group();
        for (std::size_t i = 0; i < basis_.size(); ++i)
            for (std::size_t j = 0; j < basis_.size(); ++j) {
                const gelem gh = G.mul(basis_[i].g, basis_[j].g);
                const elem c = product(basis_[i].g, basis_[i].value, basis_[j].g, basis_[j].value);
                const auto& co = components_[gh].dlog(c);
                for (std::size_t k = 0; k < co.size(); ++k)
                    if (co[k] != 0) os << i << ' ' << j << ' ' << offset_[gh] + k << ' ' << co[k] << '\n';
            }
        return os.str();
    }

private:
    std::shared_ptr<const PartialAction> a_;
    AlgebraKind kind_;
    std::optional<Cochain> twist_;
    Product product_;
    std::vector<AdditiveStructure> components_;
    std::vector<std::size_t> offset_;
    std::vector<BasisElement> basis_;
    Element unity_;
};

inline GradedAlgebra skew_group_ring(const PartialAction& action) {
    auto a = std::make_shared<const PartialAction>(action);
    const PartialAction* p = a.get();
    return GradedAlgebra(a, AlgebraKind::skew, std::nullopt, [p](gelem g, elem x, gelem, elem y) {
        return p->ring().mul(x, p->apply(g, y));
    });
}

/// Z^2 failure with the offending triple (g, h, l).
class cocycle_error : public error {
public:
    cocycle_error(std::vector<gelem> triple, const std::string& what) : error(what), triple_(std::move(triple)) {}
    const std::vector<gelem>& triple() const noexcept { return triple_; }

private:
    std::vector<gelem> triple_;
};

inline GradedAlgebra crossed_product(const PartialAction& action, const Cochain& f) {
    auto a = std::make_shared<const PartialAction>(action);
    CochainContext ctx(*a);
    if (f.arity != 2) throw error("crossed_product needs a 2-cochain");
    if (auto v = cocycle_violation(ctx, f)) {
        auto t = tuple_of(*v, 3, a->group_order());
        throw cocycle_error(t, "twist fails the 2-cocycle identity at (g,h,l) = (" + std::to_string(t[0]) + "," +
                                   std::to_string(t[1]) + "," + std::to_string(t[2]) + ")");
    }
    const PartialAction* p = a.get();
    const std::size_t m = a->group_order();
    GradedAlgebra alg(a, AlgebraKind::crossed, f, [p, f, m](gelem g, elem x, gelem h, elem y) {
        const auto& R = p->ring();
        return R.mul(R.mul(x, p->apply(g, y)), f.values[static_cast<std::size_t>(g) * m + h]);
    });
    if (auto rep = alg.check_associativity(); !rep.ok) throw defect("crossed product not associative: " + rep.witness);
    if (!alg.unity_ok()) throw defect("f(1,1)^-1 delta_1 is not an identity");
    return alg;
}

// ---------------------------------------------------------------------------
// Theta and its factor set

/// f^Theta_{g,h}(u (x) v) = u alpha_g(v 1_{g^-1}) tabulated on D_g x D_h.
class ThetaFactorSet {
public:
    explicit ThetaFactorSet(const PartialAction& a) : a_(a) {
        const std::size_t m = a.group_order();
        const auto& R = a.ring();
        pos_.assign(m, std::vector<std::uint32_t>(R.order(), UINT32_MAX));
        for (gelem g = 0; g < m; ++g)
            for (std::size_t i = 0; i < a.domain(g).size(); ++i) pos_[g][a.domain(g)[i]] = static_cast<std::uint32_t>(i);
        table_.resize(m * m);
        for (gelem g = 0; g < m; ++g)
            for (gelem h = 0; h < m; ++h) {
                auto& t = table_[g * m + h];
                for (elem u : a.domain(g))
                    for (elem v : a.domain(h)) t.push_back(R.mul(u, a.apply(g, v)));
            }
    }

    elem operator()(gelem g, elem u, gelem h, elem v) const {
        const std::size_t m = a_.group_order();
        const auto i = pos_[g][u], j = pos_[h][v];
        if (i == UINT32_MAX || j == UINT32_MAX) throw error("f^Theta: argument outside its component");
        return table_[g * m + h][i * a_.domain(h).size() + j];
    }

    /// Bilinearity over the twisted actions and the associativity square, on all
    /// element triples while the count stays below `limit`; empty when all hold.
    std::vector<std::string> violations(std::uint64_t limit = 5'000'000) const;

private:
    const PartialAction& a_;
    std::vector<std::vector<std::uint32_t>> pos_;
    std::vector<std::vector<elem>> table_;
};

inline std::vector<std::string> ThetaFactorSet::violations(std::uint64_t limit) const {
    std::vector<std::string> out;
    const auto& R = a_.ring();
    const auto& G = a_.group();
    const std::size_t m = a_.group_order();
    auto say = [&](std::string what, gelem g, gelem h) {
        if (out.size() < 8) out.push_back(what + " at (g,h) = (" + std::to_string(g) + "," + std::to_string(h) + ")");
    };
    for (gelem g = 0; g < m; ++g)
        for (gelem h = 0; h < m; ++h) {
            const gelem gh = G.mul(g, h);
            const TwistedBimodule mg(a_, g), mh(a_, h), mgh(a_, gh);
            for (elem u : a_.domain(g))
                for (elem v : a_.domain(h)) {
                    const elem w = (*this)(g, u, h, v);
                    if (R.mul(w, a_.one_g(gh)) != w || R.mul(w, a_.one_g(g)) != w) say("f^Theta leaves D_g D_gh", g, h);
                    for (elem r = 0; r < R.order(); ++r) {
                        if ((*this)(g, mg.right(u, r), h, v) != (*this)(g, u, h, mh.left(r, v)))
                            say("f^Theta not balanced", g, h);
                        if ((*this)(g, mg.left(r, u), h, v) != mgh.left(r, w)) say("f^Theta not left linear", g, h);
                        if ((*this)(g, u, h, mh.right(v, r)) != mgh.right(w, r)) say("f^Theta not right linear", g, h);
                    }
                }
        }
    std::uint64_t triples = 0;
    for (gelem g = 0; g < m; ++g)
        for (gelem h = 0; h < m; ++h)
            for (gelem l = 0; l < m; ++l)
                triples += a_.domain(g).size() * a_.domain(h).size() * a_.domain(l).size();
    std::mt19937_64 rng(0x7e7a);
    const bool exhaustive = triples <= limit;
    for (gelem g = 0; g < m; ++g)
        for (gelem h = 0; h < m; ++h)
            for (gelem l = 0; l < m; ++l) {
                const auto &dg = a_.domain(g), &dh = a_.domain(h), &dl = a_.domain(l);
                auto check = [&](elem u, elem v, elem w) {
                    if ((*this)(G.mul(g, h), (*this)(g, u, h, v), l, w) != (*this)(g, u, G.mul(h, l), (*this)(h, v, l, w)))
                        say("f^Theta associativity square fails for l = " + std::to_string(l), g, h);
                };
                if (exhaustive) {
                    for (elem u : dg)
                        for (elem v : dh)
                            for (elem w : dl) check(u, v, w);
                } else {
                    const std::uint64_t per = limit / (m * m * m) + 1;
                    for (std::uint64_t t = 0; t < per; ++t)
                        check(dg[rng() % dg.size()], dh[rng() % dh.size()], dl[rng() % dl.size()]);
                }
            }
    return out;
}

inline ThetaFactorSet theta_factor_set(const PartialAction& a) { return ThetaFactorSet(a); }

/// Delta(Theta) = (+)_g (D_g)_{g^-1} with u_g o u_h = f^Theta_{g,h}(u_g (x) u_h).
inline GradedAlgebra delta_theta(const PartialAction& action) {
    auto a = std::make_shared<const PartialAction>(action);
    auto ft = std::make_shared<const ThetaFactorSet>(*a);
    GradedAlgebra alg(a, AlgebraKind::delta_theta, std::nullopt,
                      [ft](gelem g, elem u, gelem h, elem v) { return (*ft)(g, u, h, v); });
    if (auto rep = alg.check_associativity(); !rep.ok) throw defect("Delta(Theta) not associative: " + rep.witness);
    if (!alg.unity_ok()) throw defect("Delta(Theta) has no unity at 1 delta_1");
    return alg;
}

// ---------------------------------------------------------------------------
// Degree-preserving maps between graded algebras over the same action

struct AlgebraMapReport {
    bool additive = true;
    bool bijective = true;
    bool multiplicative = true;
    bool unital = true;
    bool fixes_base = true;  // r |-> r as embedded in source and target
    std::uint64_t pairs_checked = 0;
    std::string witness;
    bool ok() const { return additive && bijective && multiplicative && unital && fixes_base; }
};

/// phi(sum a_g delta_g) = sum phi_g(a_g) delta_g with phi_g given as a table on D_g.
class GradedMap {
public:
    GradedMap(const GradedAlgebra& src, const GradedAlgebra& dst, std::vector<std::vector<elem>> tables)
        : src_(src), dst_(dst), tables_(std::move(tables)) {}

    GradedAlgebra::Element operator()(const GradedAlgebra::Element& x) const {
        GradedAlgebra::Element y(x.size());
        for (gelem g = 0; g < x.size(); ++g) y[g] = tables_[g][x[g]];
        return y;
    }

    /// Additivity and bijectivity per component exhaustively, multiplicativity on
    /// every pair of basis elements (enough, by biadditivity), unity and R fixed.
    AlgebraMapReport verify() const {
        AlgebraMapReport rep;
        const auto& a = src_.action();
        const auto& R = a.ring();
        auto fail = [&](bool& flag, std::string w) {
            if (flag) {
                flag = false;
                if (rep.witness.empty()) rep.witness = std::move(w);
            }
        };
        for (gelem g = 0; g < a.group_order(); ++g) {
            const auto& d = a.domain(g);
            std::vector<char> hit(R.order(), 0);
            for (elem x : d) {
                const elem y = tables_[g][x];
                if (R.mul(y, a.one_g(g)) != y || hit[y]++) fail(rep.bijective, "component " + std::to_string(g));
                for (elem z : d)
                    if (tables_[g][R.add(x, z)] != R.add(y, tables_[g][z]))
                        fail(rep.additive, "component " + std::to_string(g));
            }
        }
        const auto& B = src_.basis();
        for (std::size_t i = 0; i < B.size(); ++i)
            for (std::size_t j = 0; j < B.size(); ++j) {
                ++rep.pairs_checked;
                const auto x = src_.basis_element(i), y = src_.basis_element(j);
                if ((*this)(src_.mul(x, y)) != dst_.mul((*this)(x), (*this)(y)))
                    fail(rep.multiplicative, "basis pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
            }
        if ((*this)(src_.unity()) != dst_.unity()) fail(rep.unital, "unity");
        for (elem r = 0; r < R.order(); ++r)
            if ((*this)(src_.embed(r)) != dst_.embed(r)) fail(rep.fixes_base, "r = " + std::to_string(r));
        return rep;
    }

private:
    const GradedAlgebra& src_;
    const GradedAlgebra& dst_;
    std::vector<std::vector<elem>> tables_;
};

/// a_g delta_g |-> a_g eps_g delta_g from R *_{alpha,f} G to R *_{alpha,f'} G,
/// given f = f' delta^1(eps).
inline GradedMap coiso_map(const GradedAlgebra& src, const GradedAlgebra& dst, const Cochain& eps) {
    const auto& a = src.action();
    const CochainContext ctx(a);
    if (!src.twist() || !dst.twist()) throw error("coiso_map needs two crossed products");
    if (eps.arity != 1) throw error("coiso_map needs a 1-cochain witness");
    ctx.check(eps);
    if (ctx.multiply(*dst.twist(), ctx.coboundary(eps)) != *src.twist())
        throw error("witness does not satisfy f = f' delta(eps)");
    std::vector<std::vector<elem>> tables(a.group_order(), std::vector<elem>(a.ring().order(), 0));
    for (gelem g = 0; g < a.group_order(); ++g)
        for (elem x : a.domain(g)) tables[g][x] = a.ring().mul(x, eps.values[g]);
    return GradedMap(src, dst, std::move(tables));
}

/// kappa(u_g) = u_g delta_g from Delta(Theta) to R *_alpha G.
inline GradedMap kappa_iso(const GradedAlgebra& theta, const GradedAlgebra& skew) {
    const auto& a = theta.action();
    std::vector<std::vector<elem>> tables(a.group_order(), std::vector<elem>(a.ring().order(), 0));
    for (gelem g = 0; g < a.group_order(); ++g)
        for (elem x : a.domain(g)) tables[g][x] = x;
    return GradedMap(theta, skew, std::move(tables));
}

// ---------------------------------------------------------------------------

/// Additive span of {x y : x in D_g delta_g, y in D_h delta_h} inside D_{gh}.
inline std::vector<elem> component_product_span(const GradedAlgebra& alg, gelem g, gelem h) {
    const auto& a = alg.action();
    const auto& R = a.ring();
    std::vector<elem> seeds;
    for (elem x : a.domain(g))
        for (elem y : a.domain(h)) seeds.push_back(alg.product(g, x, h, y));
    std::vector<char> in(R.order(), 0);
    std::vector<elem> span{R.zero()};
    in[R.zero()] = 1;
    for (std::size_t i = 0; i < span.size(); ++i)
        for (elem s : seeds) {
            const elem z = R.add(span[i], s);
            if (!in[z]) {
                in[z] = 1;
                span.push_back(z);
            }
        }
    std::sort(span.begin(), span.end());
    return span;
}

/// (D_g delta_g)(D_{g^-1} delta_{g^-1}) = D_g delta_1 and
/// (D_g delta_g)(D_{g^-1} delta_{g^-1})(D_g delta_g) = D_g delta_g for every g.
inline std::vector<std::string> partial_representation_violations(const GradedAlgebra& alg) {
    std::vector<std::string> out;
    const auto& a = alg.action();
    const auto& R = a.ring();
    for (gelem g = 0; g < a.group_order(); ++g) {
        const gelem gi = a.group().inv(g);
        const auto prod = component_product_span(alg, g, gi);
        if (prod != a.domain(g)) out.push_back("D_g D_{g^-1} != D_g at g = " + std::to_string(g));
        std::vector<char> in(R.order(), 0);
        std::vector<elem> span{R.zero()};
        in[R.zero()] = 1;
        std::vector<elem> seeds;
        for (elem x : prod)
            for (elem y : a.domain(g)) seeds.push_back(alg.product(a.group().identity(), x, g, y));
        for (std::size_t i = 0; i < span.size(); ++i)
            for (elem s : seeds) {
                const elem z = R.add(span[i], s);
                if (!in[z]) {
                    in[z] = 1;
                    span.push_back(z);
                }
            }
        std::sort(span.begin(), span.end());
        if (span != a.domain(g)) out.push_back("theta_g theta_{g^-1} theta_g != theta_g at g = " + std::to_string(g));
    }
    return out;
}

}  // namespace pgal

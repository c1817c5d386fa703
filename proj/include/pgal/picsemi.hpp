#pragma once

// PicS_R(R) for a finite commutative ring R. R is a product of local rings, each
// with trivial Picard group, so every projective module of rank <= 1 is Re for a
// unique idempotent e and PicS_R(R) is the semilattice E(R) under multiplication.
// The class [Re] is represented by e throughout.

#include "pgal/error.hpp"
#include "pgal/finring.hpp"
#include "pgal/partial_action.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace pgal {

struct PicSMonoid {
    RingPtr ring;
    std::vector<elem> classes;  // E(R), ascending
    elem neutral;                // 1

    elem product(elem e, elem f) const { return ring->mul(e, f); }
    bool below(elem e, elem f) const { return ring->mul(e, f) == e; }
    std::vector<elem> below_set(elem f) const {
        std::vector<elem> out;
        for (elem e : classes)
            if (below(e, f)) out.push_back(e);
        return out;
    }
};

inline PicSMonoid pics_monoid(const RingPtr& ring) { return {ring, idempotents(*ring), ring->one()}; }

/// Units of the corner monoid X_f = {e <= f} with identity f.
inline std::vector<elem> corner_monoid_units(const PicSMonoid& m, elem f) {
    const auto xs = m.below_set(f);
    std::vector<elem> out;
    for (elem e : xs)
        if (std::any_of(xs.begin(), xs.end(), [&](elem d) { return m.product(e, d) == f; })) out.push_back(e);
    return out;
}

class PicSAction {
public:
    explicit PicSAction(const PartialAction& a) : a_(a), monoid_(pics_monoid(a.ring_ptr())) {
        const auto& R = a.ring();
        star_.resize(a.group_order());
        for (gelem g = 0; g < a.group_order(); ++g)
            for (elem e : monoid_.below_set(a.one_g(a.group().inv(g)))) {
                const elem img = a.apply(g, e);
                if (!R.is_idempotent(img)) throw defect("alpha_g moved an idempotent off E(R)");
                star_[g].emplace(e, img);
            }
    }

    const PartialAction& base() const noexcept { return a_; }
    const PicSMonoid& monoid() const noexcept { return monoid_; }

    /// alpha*_g on [Re], e <= 1_{g^-1}.
    elem star(gelem g, elem e) const {
        auto it = star_[g].find(e);
        if (it == star_[g].end()) throw error("alpha*_g applied outside X_{g^-1}");
        return it->second;
    }
    const std::map<elem, elem>& table(gelem g) const { return star_[g]; }

    /// Partial-action axioms on the monoid; empty when all hold.
    std::vector<std::string> violations() const {
        std::vector<std::string> out;
        const auto& G = a_.group();
        const auto& m = monoid_;
        auto og = [&](gelem g) { return a_.one_g(g); };
        for (elem e : m.classes)
            if (star(G.identity(), e) != e) out.push_back("alpha*_1 is not the identity");
        for (gelem g = 0; g < a_.group_order(); ++g) {
            std::vector<elem> img;
            for (auto [e, f] : star_[g]) {
                if (!m.below(f, og(g))) out.push_back("alpha*_" + std::to_string(g) + " leaves X_g");
                img.push_back(f);
                if (star(G.inv(g), f) != e) out.push_back("alpha*_{g^-1} alpha*_g != id at g = " + std::to_string(g));
                for (auto [d, fd] : star_[g])
                    if (star(g, m.product(e, d)) != m.product(f, fd))
                        out.push_back("alpha*_" + std::to_string(g) + " not multiplicative");
            }
            std::sort(img.begin(), img.end());
            if (img != m.below_set(og(g))) out.push_back("alpha*_" + std::to_string(g) + " not onto X_g");
            if (star(g, og(G.inv(g))) != og(g)) out.push_back("alpha*_g [D_{g^-1}] != [D_g]");
            for (gelem h = 0; h < a_.group_order(); ++h)
                for (elem e : m.classes) {
                    // alpha*_g(alpha*_h(e 1_{h^-1}) 1_{g^-1}) = alpha*_gh(e 1_{(gh)^-1}) 1_g
                    const elem lhs = star(g, m.product(star(h, m.product(e, og(G.inv(h)))), og(G.inv(g))));
                    const gelem gh = G.mul(g, h);
                    const elem rhs = m.product(star(gh, m.product(e, og(G.inv(gh)))), og(g));
                    if (lhs != rhs)
                        out.push_back("alpha* composition fails at (g,h) = (" + std::to_string(g) + "," +
                                      std::to_string(h) + ")");
                }
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Element-level cross-check of alpha*_g(e) for e <= 1_{g^-1}: the left annihilator of
    /// (D_g)_{g^-1} (x) Re, computed as D_g / (D_g * R(1-e)), and that of Re with the
    /// action r . p = alpha_{g^-1}(r 1_g) p, must both equal R(1 - alpha*_g(e)).
    std::vector<std::string> annihilator_mismatches() const {
        std::vector<std::string> out;
        const auto& R = a_.ring();
        const auto& G = a_.group();
        for (gelem g = 0; g < a_.group_order(); ++g) {
            const gelem gi = G.inv(g);
            const auto& dg = a_.domain(g);
            for (auto [e, f] : star_[g]) {
                const elem ce = R.sub(R.one(), e);
                // N = additive span of d alpha_g(x 1_{g^-1}), x in R(1-e)
                std::vector<char> inN(R.order(), 0);
                std::vector<elem> n{R.zero()};
                inN[R.zero()] = 1;
                std::vector<elem> seeds;
                for (elem d : dg)
                    for (elem x : R.ideal(ce)) seeds.push_back(R.mul(d, a_.apply(g, x)));
                for (std::size_t i = 0; i < n.size(); ++i)
                    for (elem s : seeds)
                        if (const elem z = R.add(n[i], s); !inN[z]) {
                            inN[z] = 1;
                            n.push_back(z);
                        }
                std::vector<elem> ann_tensor, ann_twisted;
                for (elem r = 0; r < R.order(); ++r) {
                    if (std::all_of(dg.begin(), dg.end(), [&](elem d) { return inN[R.mul(r, d)] != 0; }))
                        ann_tensor.push_back(r);
                    if (R.mul(a_.apply(gi, r), e) == R.zero()) ann_twisted.push_back(r);
                }
                const auto expect = R.ideal(R.sub(R.one(), f));
                if (ann_tensor != expect)
                    out.push_back("tensor annihilator differs from 1 - alpha*_g(e) at g = " + std::to_string(g) +
                                  ", e = " + std::to_string(e));
                if (ann_twisted != expect)
                    out.push_back("twisted annihilator differs from 1 - alpha*_g(e) at g = " + std::to_string(g) +
                                  ", e = " + std::to_string(e));
            }
        }
        return out;
    }

private:
    const PartialAction& a_;
    PicSMonoid monoid_;
    std::vector<std::map<elem, elem>> star_;
};

inline PicSAction star_action(const PartialAction& a) { return PicSAction(a); }

struct PicSCocycles {
    std::vector<std::vector<elem>> cocycles;  // f as (f(g))_g
    std::vector<std::vector<elem>> unit_choices;  // U(X_g) per g
    std::uint64_t candidates = 0;
    bool only_identity = false;  // exactly {g |-> 1_g}
};

/// Z^1(G, alpha*, PicS_R(R)): all f with f(g) in U(X_g) and
/// alpha*_g(f(h) 1_{g^-1}) f(g) = f(gh) 1_g, by exhaustive search.
inline PicSCocycles z1_pics(const PicSAction& s) {
    const auto& a = s.base();
    const auto& G = a.group();
    const auto& m = s.monoid();
    const std::size_t n = a.group_order();
    PicSCocycles out;
    for (gelem g = 0; g < n; ++g) out.unit_choices.push_back(corner_monoid_units(m, a.one_g(g)));
    std::vector<std::size_t> idx(n, 0);
    std::vector<elem> f(n);
    for (;;) {
        for (gelem g = 0; g < n; ++g) f[g] = out.unit_choices[g][idx[g]];
        ++out.candidates;
        bool ok = true;
        for (gelem g = 0; g < n && ok; ++g)
            for (gelem h = 0; h < n && ok; ++h) {
                const elem lhs = m.product(s.star(g, m.product(f[h], a.one_g(G.inv(g)))), f[g]);
                ok = lhs == m.product(f[G.mul(g, h)], a.one_g(g));
            }
        if (ok) out.cocycles.push_back(f);
        std::size_t p = n;
        while (p > 0 && idx[p - 1] + 1 == out.unit_choices[p - 1].size()) --p;
        if (p == 0) break;
        ++idx[p - 1];
        for (std::size_t q = p; q < n; ++q) idx[q] = 0;
    }
    std::vector<elem> ident(n);
    for (gelem g = 0; g < n; ++g) ident[g] = a.one_g(g);
    out.only_identity = out.cocycles.size() == 1 && out.cocycles.front() == ident;
    return out;
}

}  // namespace pgal

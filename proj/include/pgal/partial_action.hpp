#pragma once

// Unital partial actions of a finite group on a finite commutative ring.
//
// D_g = R 1_g for an idempotent 1_g, and alpha_g : D_{g^-1} -> D_g is stored as a
// table over the ascending element list of D_{g^-1}. Applying alpha_g to an
// arbitrary r means alpha_g(r 1_{g^-1}).

#include "pgal/error.hpp"
#include "pgal/finring.hpp"
#include "pgal/groups.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace pgal {

/// An unvalidated description of a partial action.
struct ActionData {
    RingPtr ring;
    GroupPtr group;
    std::vector<elem> one;                 // one[g] = 1_g
    std::vector<std::vector<elem>> alpha;  // alpha[g][i] = alpha_g(i-th element of D_{g^-1})
};

struct Violation {
    std::string axiom;
    gelem g = 0;
    gelem h = 0;
    elem s = 0;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const noexcept { return violations.empty(); }
};

namespace axiom {
inline constexpr const char* shape = "table shape";
inline constexpr const char* idempotent = "1_g is idempotent";
inline constexpr const char* unit_identity = "1_1 = 1";
inline constexpr const char* alpha_identity = "alpha_1 = id";
inline constexpr const char* into = "alpha_g maps D_{g^-1} into D_g";
inline constexpr const char* bijective = "alpha_g is bijective onto D_g";
inline constexpr const char* additive = "alpha_g is additive";
inline constexpr const char* multiplicative = "alpha_g is multiplicative";
inline constexpr const char* unital = "alpha_g carries 1_{g^-1} to 1_g";
inline constexpr const char* inverse = "alpha_{g^-1} is the inverse of alpha_g";
inline constexpr const char* idempotent_transport = "alpha_g(1_h 1_{g^-1}) = 1_g 1_{gh}";
inline constexpr const char* composition = "alpha_g(alpha_h(s 1_{h^-1}) 1_{g^-1}) = alpha_gh(s 1_{(gh)^-1}) 1_g";
}  // namespace axiom

/// Positions in `members` (an additive subgroup) of a greedy generating set.
inline std::vector<std::size_t> additive_generators(const FiniteRing& R, const std::vector<elem>& members,
                                                     const std::vector<std::int64_t>& pos) {
    std::vector<char> in(R.order(), 0);
    std::vector<elem> span{R.zero()};
    in[R.zero()] = 1;
    std::vector<std::size_t> gens;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const elem x = members[i];
        if (in[x] || pos[x] < 0) continue;
        gens.push_back(i);
        std::vector<elem> frontier = span;
        while (!frontier.empty()) {
            std::vector<elem> next;
            for (elem s : frontier) {
                const elem t = R.add(s, x);
                if (!in[t]) {
                    in[t] = 1;
                    next.push_back(t);
                }
            }
            span.insert(span.end(), next.begin(), next.end());
            frontier = std::move(next);
        }
    }
    return gens;
}

inline ValidationReport validate(const ActionData& a) {
    ValidationReport rep;
    constexpr std::size_t per_axiom_cap = 4;
    std::vector<std::pair<std::string, std::size_t>> counts;
    auto report = [&](const char* ax, gelem g, gelem h, elem s, std::string detail) {
        auto it = std::find_if(counts.begin(), counts.end(), [&](auto& c) { return c.first == ax; });
        if (it == counts.end()) {
            counts.emplace_back(ax, 0);
            it = counts.end() - 1;
        }
        if (it->second++ < per_axiom_cap) rep.violations.push_back({ax, g, h, s, std::move(detail)});
    };
    if (!a.ring || !a.group) {
        report(axiom::shape, 0, 0, 0, "missing ring or group");
        return rep;
    }
    const FiniteRing& R = *a.ring;
    const FiniteGroup& G = *a.group;
    const std::size_t n = G.order();
    if (a.one.size() != n || a.alpha.size() != n) {
        report(axiom::shape, 0, 0, 0, "need one idempotent and one table per group element");
        return rep;
    }
    for (gelem g = 0; g < n; ++g) {
        if (a.one[g] >= R.order()) {
            report(axiom::shape, g, 0, a.one[g], "1_g out of range");
            return rep;
        }
        if (!R.is_idempotent(a.one[g])) report(axiom::idempotent, g, 0, a.one[g], "1_g * 1_g != 1_g");
    }
    if (!rep.ok()) return rep;
    std::vector<std::vector<elem>> dom(n);
    for (gelem g = 0; g < n; ++g) dom[g] = R.ideal(a.one[g]);
    for (gelem g = 0; g < n; ++g) {
        const auto& src = dom[G.inv(g)];
        if (a.alpha[g].size() != src.size()) {
            report(axiom::shape, g, 0, 0,
                   "alpha_g table has " + std::to_string(a.alpha[g].size()) + " entries, D_{g^-1} has " +
                       std::to_string(src.size()));
            continue;
        }
        for (elem v : a.alpha[g])
            if (v >= R.order()) report(axiom::shape, g, 0, v, "alpha_g entry out of range");
    }
    if (!rep.ok()) return rep;

    // lookup: position of r in D_{g^-1}
    std::vector<std::vector<std::int64_t>> pos(n, std::vector<std::int64_t>(R.order(), -1));
    for (gelem g = 0; g < n; ++g)
        for (std::size_t i = 0; i < dom[g].size(); ++i) pos[g][dom[g][i]] = static_cast<std::int64_t>(i);
    // truncated application alpha_g(r 1_{g^-1})
    auto apply = [&](gelem g, elem r) {
        const gelem gi = G.inv(g);
        return a.alpha[g][static_cast<std::size_t>(pos[gi][R.mul(r, a.one[gi])])];
    };

    const gelem e = G.identity();
    if (a.one[e] != R.one()) report(axiom::unit_identity, e, 0, a.one[e], "1_1 != 1");
    else
        for (elem r = 0; r < R.order(); ++r)
            if (apply(e, r) != r) report(axiom::alpha_identity, e, 0, r, "alpha_1(s) != s");

    bool maps_ok = true;
    for (gelem g = 0; g < n; ++g) {
        const gelem gi = G.inv(g);
        const auto& src = dom[gi];
        std::vector<char> hit(R.order(), 0);
        for (std::size_t i = 0; i < src.size(); ++i) {
            const elem v = a.alpha[g][i];
            if (pos[g][v] < 0) {
                report(axiom::into, g, 0, src[i], "image " + std::to_string(v) + " not in D_g");
                maps_ok = false;
            } else if (hit[v]++) {
                report(axiom::bijective, g, 0, src[i], "image " + std::to_string(v) + " hit twice");
                maps_ok = false;
            }
        }
        if (src.size() != dom[g].size()) {
            report(axiom::bijective, g, 0, 0, "|D_{g^-1}| != |D_g|");
            maps_ok = false;
        }
        // f(x + a) = f(x) + f(a) over additive generators a gives additivity; with it,
        // f(x a) = f(x) f(a) over the same generators gives multiplicativity
        for (const std::size_t j : additive_generators(R, src, pos[gi]))
            for (std::size_t i = 0; i < src.size(); ++i) {
                const elem x = src[i], y = src[j];
                const std::size_t s = static_cast<std::size_t>(pos[gi][R.add(x, y)]);
                const std::size_t m = static_cast<std::size_t>(pos[gi][R.mul(x, y)]);
                if (a.alpha[g][s] != R.add(a.alpha[g][i], a.alpha[g][j]))
                    report(axiom::additive, g, 0, x, "fails with y = " + std::to_string(y));
                if (a.alpha[g][m] != R.mul(a.alpha[g][i], a.alpha[g][j]))
                    report(axiom::multiplicative, g, 0, x, "fails with y = " + std::to_string(y));
            }
        if (a.alpha[g][static_cast<std::size_t>(pos[gi][a.one[gi]])] != a.one[g])
            report(axiom::unital, g, 0, a.one[gi], "alpha_g(1_{g^-1}) != 1_g");
    }
    if (!maps_ok) return rep;

    for (gelem g = 0; g < n; ++g) {
        const gelem gi = G.inv(g);
        for (elem d : dom[gi])
            if (apply(gi, apply(g, d)) != d) report(axiom::inverse, g, gi, d, "alpha_{g^-1}(alpha_g(s)) != s");
    }
    for (gelem g = 0; g < n; ++g)
        for (gelem h = 0; h < n; ++h) {
            const gelem gi = G.inv(g);
            if (apply(g, R.mul(a.one[h], a.one[gi])) != R.mul(a.one[g], a.one[G.mul(g, h)]))
                report(axiom::idempotent_transport, g, h, 0, "");
            const gelem gh = G.mul(g, h);
            for (elem s = 0; s < R.order(); ++s) {
                const elem lhs = R.mul(apply(g, apply(h, s)), a.one[g]);
                const elem rhs = R.mul(apply(gh, s), a.one[g]);
                if (lhs != rhs) report(axiom::composition, g, h, s, "");
            }
        }
    return rep;
}

class invalid_action : public error {
public:
    explicit invalid_action(ValidationReport r)
        : error("invalid partial action: " + r.violations.front().axiom), report_(std::move(r)) {}
    const ValidationReport& report() const noexcept { return report_; }

private:
    ValidationReport report_;
};

/// A validated unital partial action.
class PartialAction {
public:
    /// Validates eagerly; throws invalid_action with the full report on failure.
    static PartialAction make(ActionData data) {
        auto rep = validate(data);
        if (!rep.ok()) throw invalid_action(std::move(rep));
        return PartialAction(std::move(data));
    }

    const FiniteRing& ring() const noexcept { return *data_.ring; }
    const RingPtr& ring_ptr() const noexcept { return data_.ring; }
    const FiniteGroup& group() const noexcept { return *data_.group; }
    const GroupPtr& group_ptr() const noexcept { return data_.group; }
    const ActionData& data() const noexcept { return data_; }
    std::size_t group_order() const noexcept { return data_.group->order(); }

    elem one_g(gelem g) const { return data_.one[g]; }
    /// Ascending element list of D_g.
    const std::vector<elem>& domain(gelem g) const { return domains_[g]; }
    /// alpha_g(r 1_{g^-1}).
    elem apply(gelem g, elem r) const { return applied_[g][r]; }

private:
    explicit PartialAction(ActionData d) : data_(std::move(d)) {
        const auto& R = *data_.ring;
        const auto& G = *data_.group;
        const std::size_t n = G.order();
        domains_.resize(n);
        for (gelem g = 0; g < n; ++g) domains_[g] = R.ideal(data_.one[g]);
        applied_.assign(n, std::vector<elem>(R.order(), 0));
        for (gelem g = 0; g < n; ++g) {
            const gelem gi = G.inv(g);
            const auto& src = domains_[gi];
            for (elem r = 0; r < R.order(); ++r) {
                const elem t = R.mul(r, data_.one[gi]);
                const auto it = std::lower_bound(src.begin(), src.end(), t);
                applied_[g][r] = data_.alpha[g][static_cast<std::size_t>(it - src.begin())];
            }
        }
    }

    ActionData data_;
    std::vector<std::vector<elem>> domains_;
    std::vector<std::vector<elem>> applied_;
};

// ---------------------------------------------------------------------------
// Global actions

struct GlobalAction {
    RingPtr ring;
    GroupPtr group;
    std::vector<std::vector<elem>> sigma;  // sigma[g] is a full automorphism table
};

/// Empty iff sigma is a homomorphism from the group into Aut(ring).
inline std::vector<std::string> global_violations(const GlobalAction& a) {
    std::vector<std::string> out;
    const auto& R = *a.ring;
    const auto& G = *a.group;
    if (a.sigma.size() != G.order()) return {"need one automorphism per group element"};
    for (gelem g = 0; g < G.order(); ++g) {
        const auto& s = a.sigma[g];
        if (s.size() != R.order()) return {"automorphism table has wrong size"};
        std::vector<char> hit(R.order(), 0);
        for (elem x = 0; x < R.order(); ++x) {
            if (s[x] >= R.order() || hit[s[x]]++) {
                out.push_back("sigma_" + std::to_string(g) + " is not a bijection");
                return out;
            }
        }
        for (elem x = 0; x < R.order(); ++x)
            for (elem y = 0; y < R.order(); ++y)
                if (s[R.add(x, y)] != R.add(s[x], s[y]) || s[R.mul(x, y)] != R.mul(s[x], s[y])) {
                    out.push_back("sigma_" + std::to_string(g) + " is not a ring homomorphism");
                    x = static_cast<elem>(R.order());
                    break;
                }
        if (s[R.one()] != R.one()) out.push_back("sigma_" + std::to_string(g) + " does not fix 1");
    }
    for (elem x = 0; x < R.order(); ++x)
        if (a.sigma[G.identity()][x] != x) {
            out.push_back("sigma_1 is not the identity");
            break;
        }
    for (gelem g = 0; g < G.order(); ++g)
        for (gelem h = 0; h < G.order(); ++h)
            for (elem x = 0; x < R.order(); ++x)
                if (a.sigma[g][a.sigma[h][x]] != a.sigma[G.mul(g, h)][x]) {
                    out.push_back("sigma_g sigma_h != sigma_gh at g=" + std::to_string(g) +
                                  ", h=" + std::to_string(h));
                    return out;
                }
    return out;
}

/// The global action read as a partial action with every 1_g = 1.
inline ActionData as_partial(const GlobalAction& a) {
    ActionData d{a.ring, a.group, std::vector<elem>(a.group->order(), a.ring->one()), a.sigma};
    return d;
}

/// R = Se, 1_g = e sigma_g(e), alpha_g = sigma_g restricted to D_{g^-1}.
inline PartialAction restrict_global(const GlobalAction& a, elem e) {
    if (auto v = global_violations(a); !v.empty()) throw error("invalid global action: " + v.front());
    const auto& S = *a.ring;
    const auto& G = *a.group;
    if (!S.is_idempotent(e)) throw error("restriction element is not idempotent");
    RingPtr R = corner_ring(a.ring, e);
    const auto& members = R->tag().corner_members;
    auto local = [&](elem s) {
        auto it = std::lower_bound(members.begin(), members.end(), s);
        if (it == members.end() || *it != s) throw defect("element outside the corner");
        return static_cast<elem>(it - members.begin());
    };
    ActionData d;
    d.ring = R;
    d.group = a.group;
    d.one.resize(G.order());
    d.alpha.resize(G.order());
    for (gelem g = 0; g < G.order(); ++g) d.one[g] = local(S.mul(e, a.sigma[g][e]));
    for (gelem g = 0; g < G.order(); ++g) {
        const auto src = R->ideal(d.one[G.inv(g)]);
        for (elem x : src) d.alpha[g].push_back(local(a.sigma[g][members[x]]));
    }
    return PartialAction::make(std::move(d));
}

/// Every group element acts as the identity.
inline PartialAction trivial_action(const RingPtr& ring, const GroupPtr& group) {
    ActionData d{ring, group, std::vector<elem>(group->order(), ring->one()), {}};
    std::vector<elem> id(ring->order());
    for (elem x = 0; x < ring->order(); ++x) id[x] = x;
    d.alpha.assign(group->order(), id);
    return PartialAction::make(std::move(d));
}

/// Frobenius x |-> x^p on a field (identity on prime fields).
inline std::vector<elem> frobenius(const FiniteRing& field) {
    std::vector<elem> t(field.order());
    const auto p = field.tag().characteristic;
    for (elem x = 0; x < field.order(); ++x) t[x] = field.pow(x, p);
    return t;
}

/// On a product of copies of one ring: sigma(x)_{perm[i]} = phi^k(x_i), where phi is
/// the Frobenius of the component field (identity for Z/n components).
inline std::vector<elem> product_automorphism(const FiniteRing& ring, const std::vector<std::size_t>& perm,
                                              unsigned frob_power) {
    const auto& comps = ring.tag().components;
    if (ring.tag().kind != RingKind::product || comps.size() != perm.size())
        throw error("product_automorphism needs a product ring with one permutation slot per component");
    for (const auto& c : comps)
        if (c->order() != comps[0]->order() || c->tag().kind != comps[0]->tag().kind ||
            c->tag().modulus != comps[0]->tag().modulus)
            throw error("product_automorphism needs identical components");
    std::vector<elem> phi(comps[0]->order());
    for (elem x = 0; x < phi.size(); ++x) phi[x] = x;
    if (comps[0]->tag().kind == RingKind::galois_field) {
        const auto f = frobenius(*comps[0]);
        for (unsigned k = 0; k < frob_power; ++k)
            for (auto& v : phi) v = f[v];
    }
    std::vector<elem> t(ring.order());
    std::vector<elem> out(perm.size());
    for (elem x = 0; x < ring.order(); ++x) {
        const auto parts = ring.split(x);
        for (std::size_t i = 0; i < perm.size(); ++i) out[perm[i]] = phi[parts[i]];
        t[x] = ring.join(out);
    }
    return t;
}

/// Global action of C_{n_1} x ... x C_{n_k} determined by one automorphism per cyclic generator.
inline GlobalAction global_from_generators(const RingPtr& ring, const GroupPtr& group,
                                           const std::vector<std::vector<elem>>& gens) {
    const auto& factors = group->cyclic_factors();
    if (factors.size() != gens.size()) throw error("one automorphism per cyclic generator required");
    GlobalAction a{ring, group, {}};
    a.sigma.resize(group->order());
    for (gelem g = 0; g < group->order(); ++g) {
        std::vector<elem> t(ring->order());
        for (elem x = 0; x < ring->order(); ++x) t[x] = x;
        std::size_t rest = g;
        std::vector<std::size_t> digits(factors.size());
        for (std::size_t i = factors.size(); i-- > 0;) {
            digits[i] = rest % factors[i];
            rest /= factors[i];
        }
        for (std::size_t i = 0; i < factors.size(); ++i)
            for (std::size_t k = 0; k < digits[i]; ++k)
                for (auto& v : t) v = gens[i][v];
        a.sigma[g] = std::move(t);
    }
    if (auto v = global_violations(a); !v.empty()) throw error("invalid global action: " + v.front());
    return a;
}

// ---------------------------------------------------------------------------

/// {r : alpha_g(r 1_{g^-1}) = r 1_g for all g}.
inline Subring invariant_subring(const PartialAction& a) {
    const auto& R = a.ring();
    Subring s{a.ring_ptr(), {}};
    for (elem r = 0; r < R.order(); ++r) {
        bool fixed = true;
        for (gelem g = 0; g < a.group_order() && fixed; ++g) fixed = a.apply(g, r) == R.mul(r, a.one_g(g));
        if (fixed) s.members.push_back(r);
    }
    if (!is_subring(R, s.members)) throw defect("ring of invariants is not a subring");
    return s;
}

struct OrbitReport {
    std::vector<std::size_t> domain_sizes;        // |D_g|
    std::vector<elem> idempotents;                // E(R), ascending
    std::vector<std::size_t> lattice_position;    // index of 1_g in `idempotents`
    std::vector<std::size_t> below_count;         // #{e in E(R) : e <= 1_g}
    /// dynamics[g] lists (e, alpha_g(e)) for idempotents e <= 1_{g^-1}.
    std::vector<std::vector<std::pair<elem, elem>>> dynamics;
};

inline OrbitReport orbit_report(const PartialAction& a) {
    const auto& R = a.ring();
    OrbitReport o;
    o.idempotents = idempotents(R);
    for (gelem g = 0; g < a.group_order(); ++g) {
        const elem og = a.one_g(g);
        o.domain_sizes.push_back(a.domain(g).size());
        o.lattice_position.push_back(static_cast<std::size_t>(
            std::lower_bound(o.idempotents.begin(), o.idempotents.end(), og) - o.idempotents.begin()));
        std::size_t below = 0;
        std::vector<std::pair<elem, elem>> dyn;
        const elem ogi = a.one_g(a.group().inv(g));
        for (elem e : o.idempotents) {
            if (R.mul(e, og) == e) ++below;
            if (R.mul(e, ogi) == e) dyn.emplace_back(e, a.apply(g, e));
        }
        o.below_count.push_back(below);
        o.dynamics.push_back(std::move(dyn));
    }
    return o;
}

}  // namespace pgal

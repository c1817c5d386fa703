#pragma once

// Finite-scale consequences of the seven-term exact sequence
//   0 -> H^1(G,a,R) -> Pic(R^a) -> PicS_R(R)^{a*} n Pic(R) -> H^2(G,a,R) -> B(R/R^a)
//     -> H^1(G,a*,PicS_R(R)) -> H^3(G,a,R)
// for a partial Galois extension of a finite commutative ring. Pic of a finite ring
// is trivial, so exactness gives H^1 = 1 and embeds H^2 into B(R/R^a), which is trivial
// for finite rings. PicS collapses to E(R), so the PicS-valued terms are computed
// directly. H^3 is reported without a prediction.

#include "pgal/cohomology.hpp"
#include "pgal/crossed.hpp"
#include "pgal/error.hpp"
#include "pgal/galois.hpp"
#include "pgal/partial_action.hpp"
#include "pgal/picsemi.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pgal {

class not_galois : public error {
public:
    explicit not_galois(const CertificateSearch& s)
        : error(std::string("no Galois certificate (") + (s.conclusive ? "conclusive" : "inconclusive") +
                " search via " + to_string(s.route) + ")") {}
};

inline GaloisCertificate require_certificate(const PartialAction& a) {
    auto s = find_certificate(a);
    if (!s.found()) throw not_galois(s);
    return *s.certificate;
}

struct TwistedInvariants {
    std::vector<elem> invariants;  // R^G under the f-twisted action
    bool module_ok = true;         // closed under + and under R^alpha
    std::optional<elem> generator;
    bool free_rank_one() const { return generator.has_value(); }
};

/// R^G = {r : alpha_g(r 1_{g^-1}) f(g)^-1 = r 1_g for all g}, i.e. the elements fixed by
/// (a_g delta_g) . r = a_g alpha_g(r 1_{g^-1}) f(g)^-1; free of rank 1 over R^alpha is
/// decided by trying every m in R^G as a generator.
inline TwistedInvariants twisted_invariants(const CochainContext& ctx, const Cochain& f) {
    const auto& a = ctx.action();
    const auto& R = a.ring();
    require_certificate(a);
    if (f.arity != 1) throw error("twisted_invariants needs a 1-cochain");
    if (auto v = cocycle_violation(ctx, f)) throw error("f is not a 1-cocycle (violated at tuple " + std::to_string(*v) + ")");
    std::vector<elem> finv(a.group_order());
    for (gelem g = 0; g < a.group_order(); ++g) finv[g] = ctx.inverse(a.one_g(g), f.values[g]);
    TwistedInvariants out;
    for (elem r = 0; r < R.order(); ++r) {
        bool fixed = true;
        for (gelem g = 0; g < a.group_order() && fixed; ++g)
            fixed = R.mul(a.apply(g, r), finv[g]) == R.mul(r, a.one_g(g));
        if (fixed) out.invariants.push_back(r);
    }
    const auto inv = invariant_subring(a);
    std::vector<char> in(R.order(), 0);
    for (elem r : out.invariants) in[r] = 1;
    for (elem x : out.invariants) {
        for (elem y : out.invariants) out.module_ok = out.module_ok && in[R.add(x, y)];
        for (elem s : inv.members) out.module_ok = out.module_ok && in[R.mul(s, x)];
    }
    if (!out.module_ok) throw defect("twisted invariants are not an R^alpha-module");
    if (out.invariants.size() != inv.size()) return out;
    for (elem m : out.invariants) {
        std::vector<char> hit(R.order(), 0);
        bool onto = true;
        for (elem s : inv.members) {
            const elem y = R.mul(s, m);
            if (hit[y]++) {
                onto = false;
                break;
            }
        }
        if (onto) {
            out.generator = m;
            break;
        }
    }
    return out;
}

struct BrauerVerdict {
    std::uint64_t algebra_order = 0;        // |Delta(Theta)|
    std::uint64_t endomorphism_order = 0;   // |End_{R^alpha}(R)|
    bool kappa_ok = false;                  // Delta(Theta) -> R *_alpha G verified
    bool rho_injective = false;
    bool rho_bijective = false;
    std::optional<std::size_t> degree;
    std::size_t invariant_order = 0;
    bool matrix_ring = false;
    std::string verdict;  // e.g. "M_2(F_4)"
};

/// Delta(Theta) ~ R *_alpha G ~ End_{R^alpha}(R) through kappa and the regular
/// representation; when R^alpha is a field F_q and |R| = q^k this is M_k(F_q).
inline BrauerVerdict delta_theta_brauer_class(const PartialAction& a) {
    require_certificate(a);
    BrauerVerdict out;
    const auto theta = delta_theta(a);
    const auto skew = skew_group_ring(a);
    out.algebra_order = theta.order();
    out.kappa_ok = kappa_iso(theta, skew).verify().ok();
    const auto rr = regular_representation(a);
    out.endomorphism_order = rr.endomorphism_order;
    out.rho_injective = rr.injective;
    out.rho_bijective = rr.bijective;
    out.degree = rr.matrix_degree;
    out.invariant_order = rr.invariant_order;
    out.matrix_ring = out.kappa_ok && rr.bijective && rr.invariants_field && rr.matrix_degree &&
                      out.algebra_order == out.endomorphism_order;
    out.verdict = out.matrix_ring ? rr.verdict : "not a full matrix ring (" + rr.verdict + ")";
    return out;
}

struct SequenceEntry {
    std::string name;
    std::string order;      // decimal, or "-" when not computed
    std::string method;
    std::string prediction; // "1" or "none"
    std::string verdict;    // "consistent", "INCONSISTENT", "reported"
};

struct SequenceReport {
    std::vector<SequenceEntry> entries;
    std::vector<std::string> checks;     // auxiliary checks, each "name: ok" or "name: FAILED ..."
    std::vector<std::string> notes;
    bool consistent = true;
};

struct SequenceOptions {
    Engine engine = Engine::automatic;
    std::size_t budget = default_enumeration_budget;
};

inline SequenceReport consequence_check(const PartialAction& a, const SequenceOptions& opt = {}) {
    require_certificate(a);
    SequenceReport rep;
    const CochainContext ctx(a);
    auto entry = [&](std::string name, std::uint64_t order, std::string method, bool predicted) {
        SequenceEntry e{std::move(name), std::to_string(order), std::move(method), predicted ? "1" : "none",
                        predicted ? (order == 1 ? "consistent" : "INCONSISTENT") : "reported"};
        if (predicted && order != 1) rep.consistent = false;
        rep.entries.push_back(std::move(e));
    };
    auto check = [&](std::string name, bool ok, std::string detail = {}) {
        rep.checks.push_back(name + (ok ? ": ok" : ": FAILED" + (detail.empty() ? "" : " (" + detail + ")")));
        if (!ok) rep.consistent = false;
    };

    const auto h1 = cohomology_group(ctx, 1, {opt.engine, opt.budget});
    const auto h2 = cohomology_group(ctx, 2, {opt.engine, opt.budget});
    const auto h3 = cohomology_group(ctx, 3, {Engine::structure, opt.budget});
    const auto star = star_action(a);
    const auto z1s = z1_pics(star);

    entry("H^1(G,alpha,U(R))", h1.h_order, h1.engine, true);
    entry("Pic(R^alpha)", 1, "finite-ring collapse", true);
    entry("PicS_R(R)^{alpha*} n Pic(R)", 1, "finite-ring collapse", true);
    entry("H^2(G,alpha,U(R))", h2.h_order, h2.engine, true);
    const auto br = delta_theta_brauer_class(a);
    rep.entries.push_back({"B(R/R^alpha) class of Delta(Theta)", br.matrix_ring ? "1" : "nontrivial",
                           "regular representation", "1", br.matrix_ring ? "consistent" : "INCONSISTENT"});
    if (!br.matrix_ring) rep.consistent = false;
    entry("Z^1(G,alpha*,PicS_R(R))", z1s.cocycles.size(), "exhaustive over U(X_g)", true);
    entry("H^1(G,alpha*,PicS_R(R))", z1s.cocycles.size(), "Z^1 / B^1 with B^1 = {g -> 1_g}", true);
    entry("H^3(G,alpha,U(R))", h3.h_order, h3.engine, false);

    check("Z^1(G,alpha*,PicS) is the identity cocycle g -> 1_g", z1s.only_identity);
    const auto sv = star.violations();
    check("alpha* satisfies the partial action axioms on E(R)", sv.empty(), sv.empty() ? "" : sv.front());
    const auto am = star.annihilator_mismatches();
    check("annihilator cross-check of alpha*", am.empty(), am.empty() ? "" : am.front());
    check("Delta(Theta) = " + br.verdict, br.matrix_ring);

    // exactness at H^1, literally: R^G free of rank 1 iff f cohomologous to the identity
    if (ctx.cochain_count(1) <= opt.budget) {
        const auto z1 = enumerate_cocycles(ctx, 1, opt.budget);
        std::size_t agree = 0, free = 0;
        for (const auto& f : z1) {
            const bool free1 = twisted_invariants(ctx, f).free_rank_one();
            const bool trivial = cohomologous(ctx, f, ctx.identity(1), opt.budget).has_value();
            agree += free1 == trivial;
            free += free1;
        }
        const auto count = std::to_string(z1.size());
        check("R^G free of rank 1 <=> f in B^1, for all " + count + " f in Z^1", agree == z1.size());
        check("R^G free of rank 1 for all " + count + " f in Z^1", free == z1.size());
    } else {
        rep.notes.push_back("twisted invariants skipped: |C^1| exceeds the budget");
    }
    rep.notes.push_back("Pic(R^alpha) and Pic(R) are trivial for finite commutative rings");
    rep.notes.push_back("PicS_R(R) is realised as the idempotent semilattice E(R); PicS_0 and the quotient H^1 bar coincide with the collapsed objects here");
    rep.notes.push_back("Delta(fTheta) = Delta(Theta) since Z^1(G,alpha*,PicS_R(R)) is trivial");
    rep.notes.push_back("H^3 is reported without a prediction");
    return rep;
}

}  // namespace pgal

#include "pgal/fixtures.hpp"
#include "pgal/sequence.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace pgal;

namespace {

std::set<elem> scaled(const PartialAction& a, elem x) {
    std::set<elem> out;
    for (elem s : invariant_subring(a).members) out.insert(a.ring().mul(s, x));
    return out;
}

}  // namespace

TEST(TwistedInvariants, CoboundaryTwistsGiveRAlphaTimesTheWitness) {
    // f = delta^0(x) makes R^G = R^alpha x
    for (const char* key : {"E1", "E2", "H4", "E0"}) {
        const auto a = fixture(key);
        const CochainContext ctx(a);
        for (elem x : ctx.units(a.ring().one()).elements) {
            const Cochain f = ctx.coboundary(Cochain{0, {x}});
            const auto t = twisted_invariants(ctx, f);
            const auto want = scaled(a, x);
            EXPECT_EQ(std::set<elem>(t.invariants.begin(), t.invariants.end()), want) << key << " x=" << x;
            ASSERT_TRUE(t.free_rank_one()) << key;
            EXPECT_EQ(scaled(a, *t.generator), want) << key;
        }
    }
}

TEST(TwistedInvariants, FreeExactlyForCohomologousCocycles) {
    for (const char* key : {"E1", "E2", "H4"}) {
        const auto a = fixture(key);
        const CochainContext ctx(a);
        for (const auto& f : enumerate_cocycles(ctx, 1)) {
            const auto t = twisted_invariants(ctx, f);
            // oracle: rank one over R^alpha means |R^G| = |R^alpha|
            std::size_t fixed = 0;
            for (elem r = 0; r < a.ring().order(); ++r) {
                bool ok = true;
                for (gelem g = 0; g < a.group_order(); ++g)
                    ok = ok && a.apply(g, r) == a.ring().mul(r, f.values[g]);
                fixed += ok;
            }
            EXPECT_EQ(t.invariants.size(), fixed);
            EXPECT_EQ(t.free_rank_one(), cohomologous(ctx, f, ctx.identity(1)).has_value());
        }
    }
}

TEST(TwistedInvariants, RejectsNonCocycles) {
    const auto a = fixture("E2");
    const CochainContext ctx(a);
    Cochain f = ctx.identity(1);
    const auto& u = ctx.units(a.one_g(1)).elements;
    f.values[1] = *std::find_if(u.begin(), u.end(), [&](elem x) { return x != f.values[1]; });
    EXPECT_THROW(twisted_invariants(ctx, f), error);
}

TEST(Refusal, NonGaloisInstancesAreRefused) {
    const auto a = fixture("N1");
    const CochainContext ctx(a);
    EXPECT_THROW(twisted_invariants(ctx, ctx.identity(1)), not_galois);
    EXPECT_THROW(delta_theta_brauer_class(a), not_galois);
    try {
        consequence_check(a);
        FAIL() << "accepted a non-Galois instance";
    } catch (const not_galois& e) {
        EXPECT_NE(std::string(e.what()).find("conclusive"), std::string::npos);
    }
}

TEST(Brauer, DeltaThetaIsAFullMatrixRing) {
    const auto br = delta_theta_brauer_class(fixture("E2"));
    EXPECT_EQ(br.algebra_order, 256u);
    EXPECT_EQ(br.endomorphism_order, 256u);
    EXPECT_TRUE(br.kappa_ok);
    EXPECT_TRUE(br.rho_bijective);
    EXPECT_EQ(br.degree, std::optional<std::size_t>(2));
    EXPECT_EQ(br.verdict, "M_2(F_4)");
    EXPECT_EQ(delta_theta_brauer_class(fixture("E1")).verdict, "M_2(F_2)");
    EXPECT_EQ(delta_theta_brauer_class(fixture("H4")).verdict, "M_2(F_2)");
}

TEST(ConsequenceCheck, ConsistentOnGaloisFixtures) {
    for (const char* key : {"E0", "E1", "E2", "H4"}) {
        const auto rep = consequence_check(fixture(key));
        EXPECT_TRUE(rep.consistent) << key;
        ASSERT_EQ(rep.entries.size(), 8u);
        EXPECT_EQ(rep.entries[0].name, "H^1(G,alpha,U(R))");
        EXPECT_EQ(rep.entries[3].name, "H^2(G,alpha,U(R))");
        EXPECT_EQ(rep.entries[7].verdict, "reported");
        for (std::size_t i = 0; i < 7; ++i) EXPECT_EQ(rep.entries[i].verdict, "consistent") << key << " " << i;
        for (const auto& c : rep.checks) EXPECT_NE(c.find(": ok"), std::string::npos) << key << " " << c;
        EXPECT_EQ(rep.checks.size(), 6u);
    }
}

TEST(ConsequenceCheck, EngineChoiceDoesNotChangeTheReport) {
    const auto a = fixture("E2");
    const auto x = consequence_check(a, {Engine::enumerate, default_enumeration_budget});
    const auto y = consequence_check(a, {Engine::structure, default_enumeration_budget});
    const auto z = consequence_check(a, {Engine::both, default_enumeration_budget});
    ASSERT_EQ(x.entries.size(), y.entries.size());
    for (std::size_t i = 0; i < x.entries.size(); ++i) {
        EXPECT_EQ(x.entries[i].order, y.entries[i].order);
        EXPECT_EQ(x.entries[i].order, z.entries[i].order);
    }
}

TEST(ConsequenceCheck, SmallBudgetSkipsTheTwistedInvariants) {
    // |C^1| = 81 on E2; the cohomology itself still fits
    const auto rep = consequence_check(fixture("E2"), {Engine::structure, 80});
    EXPECT_EQ(rep.checks.size(), 4u);
    EXPECT_TRUE(std::any_of(rep.notes.begin(), rep.notes.end(),
                            [](const std::string& n) { return n.find("skipped") != std::string::npos; }));
}

// Randomized instances: shifts and Frobenius twists on products of small fields,
// restricted to random idempotents. Total ring order stays at or below 1024.

#include "pgal/cohomology.hpp"
#include "pgal/crossed.hpp"
#include "pgal/fixtures.hpp"
#include "pgal/galois.hpp"
#include "pgal/picsemi.hpp"
#include "pgal/sequence.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pgal;

namespace {

struct Sample {
    GlobalAction global;
    elem e;
    std::string label;
};

RingPtr small_field(std::mt19937& rng) {
    switch (rng() % 4) {
        case 0: return make_zmod(2);
        case 1: return make_zmod(3);
        case 2: return make_f4();
        default: return make_zmod(5);
    }
}

// C_k acting on F^k by a power of the shift, composed with a Frobenius power when F = F4
Sample random_sample(std::mt19937& rng) {
    for (;;) {
        const auto field = small_field(rng);
        const std::size_t k = 2 + rng() % 3;
        std::uint64_t order = 1;
        for (std::size_t i = 0; i < k; ++i) order *= field->order();
        if (order > 1024) continue;
        auto ring = make_product(std::vector<RingPtr>(k, field));
        std::vector<std::size_t> perm(k);
        for (std::size_t i = 0; i < k; ++i) perm[i] = (i + 1) % k;
        const unsigned frob = field->order() == 4 && k % 2 == 0 ? rng() % 2 : 0;
        auto g = global_from_generators(ring, make_cyclic(static_cast<std::uint32_t>(k)),
                                        {product_automorphism(*ring, perm, frob)});
        const auto es = idempotents(*ring);
        const elem e = es[1 + rng() % (es.size() - 1)];
        return {g, e,
                "F" + std::to_string(field->order()) + "^" + std::to_string(k) + " frob " + std::to_string(frob) +
                    " e " + std::to_string(e)};
    }
}

}  // namespace

TEST(Properties, RestrictionsAreValidPartialActions) {
    std::mt19937 rng(101);
    for (int trial = 0; trial < 40; ++trial) {
        const auto s = random_sample(rng);
        const auto a = restrict_global(s.global, s.e);
        EXPECT_TRUE(validate(a.data()).ok()) << s.label;
        // alpha_g agrees with sigma_g on D_{g^-1}
        const auto& members = a.ring().tag().corner_members;
        for (gelem g = 0; g < a.group_order(); ++g)
            for (elem r : a.domain(a.group().inv(g))) ASSERT_EQ(members[a.apply(g, r)], s.global.sigma[g][members[r]]);
    }
}

TEST(Properties, RestrictedGaloisActionsHaveVerifiedCertificates) {
    std::mt19937 rng(103);
    for (int trial = 0; trial < 40; ++trial) {
        const auto s = random_sample(rng);
        const auto a = restrict_global(s.global, s.e);
        const auto c = find_certificate(a);
        ASSERT_TRUE(c.found()) << s.label;
        const auto& R = a.ring();
        for (gelem g = 0; g < a.group_order(); ++g) {
            elem sum = R.zero();
            for (const auto& [x, y] : c.certificate->pairs) sum = R.add(sum, R.mul(x, a.apply(g, y)));
            EXPECT_EQ(sum, g == 0 ? R.one() : R.zero()) << s.label;
        }
    }
}

TEST(Properties, InvariantsAreTheCutDownGlobalInvariants) {
    // R^alpha = S^G e for a restriction of a Galois action
    std::mt19937 rng(107);
    for (int trial = 0; trial < 30; ++trial) {
        const auto s = random_sample(rng);
        const auto a = restrict_global(s.global, s.e);
        const auto& S = *s.global.ring;
        std::vector<elem> want;
        for (elem x = 0; x < S.order(); ++x) {
            bool fixed = true;
            for (const auto& sg : s.global.sigma) fixed = fixed && sg[x] == x;
            if (fixed) want.push_back(S.mul(x, s.e));
        }
        std::sort(want.begin(), want.end());
        want.erase(std::unique(want.begin(), want.end()), want.end());
        std::vector<elem> got;
        for (elem r : invariant_subring(a).members) got.push_back(a.ring().tag().corner_members[r]);
        EXPECT_EQ(got, want) << s.label;
    }
}

TEST(Properties, CoboundarySquaresToOne) {
    std::mt19937 rng(109);
    for (int trial = 0; trial < 25; ++trial) {
        const auto s = random_sample(rng);
        const auto a = restrict_global(s.global, s.e);
        const CochainContext ctx(a);
        for (std::size_t n = 0; n <= 1; ++n) {
            Cochain f = ctx.identity(n);
            for (std::size_t t = 0; t < f.values.size(); ++t) {
                const auto& u = ctx.units(ctx.corner_of(n, t)).elements;
                f.values[t] = u[rng() % u.size()];
            }
            EXPECT_EQ(ctx.coboundary(ctx.coboundary(f)), ctx.identity(n + 2)) << s.label;
        }
    }
}

TEST(Properties, LowCohomologyVanishesAndEnginesAgree) {
    std::mt19937 rng(113);
    for (int trial = 0; trial < 20; ++trial) {
        const auto s = random_sample(rng);
        const auto a = restrict_global(s.global, s.e);
        const CochainContext ctx(a);
        for (std::size_t n = 1; n <= 2; ++n) {
            const bool small = ctx.cochain_count(n - 1) <= 100'000 && ctx.tuple_count(n) <= 16;
            const auto h = cohomology_group(ctx, n, {small ? Engine::both : Engine::structure, default_enumeration_budget});
            EXPECT_EQ(h.h_order, 1u) << s.label << " n=" << n;
            EXPECT_EQ(h.z_order, h.b_order);
        }
    }
}

TEST(Properties, SkewGroupRingIsAMatrixAlgebra) {
    std::mt19937 rng(127);
    for (int trial = 0; trial < 15; ++trial) {
        const auto s = random_sample(rng);
        const auto a = restrict_global(s.global, s.e);
        const auto rr = regular_representation(a);
        EXPECT_TRUE(rr.bijective) << s.label;
        EXPECT_EQ(rr.domain_order, rr.endomorphism_order) << s.label;
        const auto skew = skew_group_ring(a);
        EXPECT_TRUE(skew.check_associativity(20'000).ok) << s.label;
        EXPECT_TRUE(partial_representation_violations(skew).empty()) << s.label;
    }
}

TEST(Properties, StarActionAndSequenceChecks) {
    std::mt19937 rng(131);
    for (int trial = 0; trial < 12; ++trial) {
        const auto s = random_sample(rng);
        const auto a = restrict_global(s.global, s.e);
        const auto st = star_action(a);
        EXPECT_TRUE(st.violations().empty()) << s.label;
        EXPECT_TRUE(st.annihilator_mismatches().empty()) << s.label;
        EXPECT_TRUE(z1_pics(st).only_identity) << s.label;
        if (a.ring().order() <= 256) EXPECT_TRUE(consequence_check(a).consistent) << s.label;
    }
}

TEST(Properties, TrivialActionsOfNontrivialGroupsAreNotGalois) {
    std::mt19937 rng(137);
    for (int trial = 0; trial < 10; ++trial) {
        const auto field = small_field(rng);
        const std::size_t k = 1 + rng() % 3;
        auto ring = k == 1 ? field : make_product(std::vector<RingPtr>(k, field));
        const auto a = trivial_action(ring, make_cyclic(2 + rng() % 3));
        const auto c = find_certificate(a);
        EXPECT_FALSE(c.found());
        EXPECT_TRUE(c.conclusive);
        EXPECT_FALSE(regular_representation(a).bijective);
        EXPECT_THROW(consequence_check(a), not_galois);
    }
}

TEST(Properties, RandomTableMutationsAreRejected) {
    std::mt19937 rng(139);
    for (int trial = 0; trial < 200; ++trial) {
        const auto s = random_sample(rng);
        const auto a = restrict_global(s.global, s.e);
        auto d = a.data();
        const gelem g = static_cast<gelem>(rng() % a.group_order());
        if (d.alpha[g].size() < 2) continue;
        const std::size_t i = rng() % d.alpha[g].size();
        elem v = d.alpha[g][i];
        while (v == d.alpha[g][i]) v = static_cast<elem>(rng() % a.ring().order());
        d.alpha[g][i] = v;
        EXPECT_FALSE(validate(d).ok()) << s.label;
    }
}

#include "pgal/crossed.hpp"
#include "pgal/fixtures.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pgal;

namespace {

using Element = GradedAlgebra::Element;

// sum_{g,h} a_g alpha_g(b_h 1_{g^-1}) f(g,h) delta_{gh}, f = 1 when absent
Element oracle_mul(const PartialAction& a, const Cochain* f, const Element& x, const Element& y) {
    const auto& R = a.ring();
    const std::size_t m = a.group_order();
    Element z(m, R.zero());
    for (gelem g = 0; g < m; ++g)
        for (gelem h = 0; h < m; ++h) {
            elem t = R.mul(x[g], a.apply(g, y[h]));
            if (f) t = R.mul(t, f->values[g * m + h]);
            const gelem gh = a.group().mul(g, h);
            z[gh] = R.add(z[gh], t);
        }
    return z;
}

Cochain random_cochain(const CochainContext& ctx, std::size_t n, std::mt19937& rng) {
    Cochain c = ctx.identity(n);
    for (std::size_t t = 0; t < c.values.size(); ++t) {
        const auto& u = ctx.units(ctx.corner_of(n, t)).elements;
        c.values[t] = u[rng() % u.size()];
    }
    return c;
}

Element random_element(const GradedAlgebra& alg, std::mt19937_64& rng) { return alg.element(rng() % alg.order()); }

}  // namespace

TEST(SkewGroupRing, E1IsAssociativeOnAllElementTriples) {
    const auto a = fixture("E1");
    const auto s = skew_group_ring(a);
    ASSERT_EQ(s.order(), 16u);
    EXPECT_EQ(s.basis().size(), 4u);
    for (std::uint64_t i = 0; i < 16; ++i)
        for (std::uint64_t j = 0; j < 16; ++j) {
            const auto x = s.element(i), y = s.element(j);
            ASSERT_EQ(s.mul(x, y), oracle_mul(a, nullptr, x, y));
            for (std::uint64_t k = 0; k < 16; ++k) {
                const auto z = s.element(k);
                ASSERT_EQ(s.mul(s.mul(x, y), z), s.mul(x, s.mul(y, z)));
            }
        }
    EXPECT_TRUE(s.check_associativity().ok);
    EXPECT_TRUE(s.unity_ok());
}

TEST(SkewGroupRing, SampledElementTriplesOnLargerFixtures) {
    std::mt19937_64 rng(41);
    for (const char* key : {"E2", "E3", "H4"}) {
        const auto a = fixture(key);
        const auto s = skew_group_ring(a);
        for (int t = 0; t < 3000; ++t) {
            const auto x = random_element(s, rng), y = random_element(s, rng), z = random_element(s, rng);
            ASSERT_EQ(s.mul(s.mul(x, y), z), s.mul(x, s.mul(y, z))) << key;
            ASSERT_EQ(s.mul(x, y), oracle_mul(a, nullptr, x, y)) << key;
            ASSERT_EQ(s.mul(s.unity(), x), x);
        }
    }
}

TEST(SkewGroupRing, PartialRepresentationIdentities) {
    for (const auto& f : fixture_catalog()) {
        const auto a = fixture(f.id);
        const auto s = skew_group_ring(a);
        EXPECT_TRUE(partial_representation_violations(s).empty()) << f.id;
        for (gelem g = 0; g < a.group_order(); ++g)
            EXPECT_EQ(component_product_span(s, g, a.group().inv(g)), a.domain(g)) << f.id;
    }
}

TEST(CrossedProduct, IdentityTwistIsTheSkewGroupRing) {
    for (const char* key : {"E1", "E2", "H4"}) {
        const auto a = fixture(key);
        const CochainContext ctx(a);
        const auto c = crossed_product(a, ctx.identity(2));
        const auto s = skew_group_ring(a);
        std::mt19937_64 rng(43);
        for (int t = 0; t < 2000; ++t) {
            const auto x = random_element(s, rng), y = random_element(s, rng);
            ASSERT_EQ(c.mul(x, y), s.mul(x, y)) << key;
        }
        EXPECT_EQ(c.unity(), s.unity());
        EXPECT_EQ(c.structure_constants(), s.structure_constants());
    }
}

TEST(CrossedProduct, TwistedProductsAreAssociativeAndUnital) {
    std::mt19937 rng(47);
    std::mt19937_64 rng64(47);
    for (const char* key : {"E1", "E2", "H4"}) {
        const auto a = fixture(key);
        const CochainContext ctx(a);
        for (int trial = 0; trial < 4; ++trial) {
            // a cohomologous twist, usually not normalized
            const Cochain f = ctx.coboundary(random_cochain(ctx, 1, rng));
            const auto c = crossed_product(a, f);
            const auto u = c.unity();
            EXPECT_EQ(a.ring().mul(u[0], f.values[0]), a.ring().one());
            for (int t = 0; t < 500; ++t) {
                const auto x = random_element(c, rng64), y = random_element(c, rng64), z = random_element(c, rng64);
                ASSERT_EQ(c.mul(x, y), oracle_mul(a, &f, x, y));
                ASSERT_EQ(c.mul(c.mul(x, y), z), c.mul(x, c.mul(y, z)));
                ASSERT_EQ(c.mul(u, x), x);
                ASSERT_EQ(c.mul(x, u), x);
            }
        }
    }
}

TEST(CrossedProduct, NonCocycleTwistIsRejectedWithWitness) {
    const auto a = fixture("E2");
    const CochainContext ctx(a);
    Cochain f = ctx.identity(2);
    const auto& u = ctx.units(ctx.corner_of(2, 5)).elements;  // (g, g^-1), corner 1_g
    f.values[5] = *std::find_if(u.begin(), u.end(), [&](elem x) { return x != f.values[5]; });
    const auto v = cocycle_violation(ctx, f);
    ASSERT_TRUE(v);
    try {
        crossed_product(a, f);
        FAIL() << "accepted a non-cocycle";
    } catch (const cocycle_error& e) {
        EXPECT_EQ(e.triple(), tuple_of(*v, 3, 3));
    }
    EXPECT_THROW(crossed_product(a, ctx.identity(1)), error);
}

TEST(CrossedProduct, SampledAssociativityReportsSampling) {
    const auto a = fixture("E2");
    const auto s = skew_group_ring(a);
    const auto rep = s.check_associativity(100);
    EXPECT_TRUE(rep.sampled);
    EXPECT_TRUE(rep.ok);
    EXPECT_EQ(rep.triples, 100u);
    EXPECT_FALSE(s.check_associativity().sampled);
}

TEST(Coiso, CohomologousTwistsGiveIsomorphicAlgebras) {
    std::mt19937 rng(53);
    for (const char* key : {"E1", "E2", "H4"}) {
        const auto a = fixture(key);
        const CochainContext ctx(a);
        const auto z = enumerate_cocycles(ctx, 2);
        for (int trial = 0; trial < 5; ++trial) {
            const Cochain fp = z[rng() % z.size()];
            const Cochain eps = random_cochain(ctx, 1, rng);
            const Cochain f = ctx.multiply(fp, ctx.coboundary(eps));
            const auto src = crossed_product(a, f);
            const auto dst = crossed_product(a, fp);
            const auto phi = coiso_map(src, dst, eps);
            const auto rep = phi.verify();
            EXPECT_TRUE(rep.ok()) << key << ": " << rep.witness;
            // direct check on element pairs
            std::mt19937_64 r64(trial);
            for (int t = 0; t < 300; ++t) {
                const auto x = random_element(src, r64), y = random_element(src, r64);
                ASSERT_EQ(phi(src.mul(x, y)), dst.mul(phi(x), phi(y)));
            }
        }
    }
}

TEST(Coiso, WrongWitnessIsRefused) {
    const auto a = fixture("E2");
    const CochainContext ctx(a);
    std::mt19937 rng(59);
    Cochain eps = random_cochain(ctx, 1, rng);
    while (ctx.coboundary(eps) == ctx.identity(2)) eps = random_cochain(ctx, 1, rng);
    const auto src = crossed_product(a, ctx.identity(2));
    const auto dst = crossed_product(a, ctx.identity(2));
    EXPECT_THROW(coiso_map(src, dst, eps), error);
}

TEST(Theta, FactorSetLawsHold) {
    for (const char* key : {"E1", "E2", "H4", "N1", "E0", "E3"}) {
        const auto a = fixture(key);
        const auto ft = theta_factor_set(a);
        const auto v = ft.violations(key == std::string("E3") ? 200'000 : 5'000'000);
        EXPECT_TRUE(v.empty()) << key << ": " << (v.empty() ? "" : v.front());
        for (gelem g = 0; g < a.group_order(); ++g)
            for (elem u : a.domain(g))
                for (elem w : a.domain(g)) EXPECT_EQ(ft(g, u, 0, w), a.ring().mul(u, a.apply(g, w)));
    }
}

TEST(Theta, OutOfComponentArgumentsThrow) {
    const auto a = fixture("E1");
    const auto ft = theta_factor_set(a);
    EXPECT_THROW(ft(1, 3, 0, 1), error);  // 3 = (1,1,0) is not in D_g
}

TEST(Theta, KappaIsAnIsomorphismOntoTheSkewGroupRing) {
    for (const char* key : {"E0", "E1", "E2", "H4"}) {
        const auto a = fixture(key);
        const auto d = delta_theta(a);
        const auto s = skew_group_ring(a);
        EXPECT_EQ(d.order(), s.order());
        const auto k = kappa_iso(d, s);
        const auto rep = k.verify();
        EXPECT_TRUE(rep.ok()) << key << ": " << rep.witness;
        EXPECT_EQ(rep.pairs_checked, d.basis().size() * d.basis().size());
    }
}

TEST(Bimodule, TwistedActionsAreCompatible) {
    for (const auto& f : fixture_catalog()) {
        const auto a = fixture(f.id);
        for (gelem g = 0; g < a.group_order(); ++g) {
            const TwistedBimodule m(a, g);
            EXPECT_FALSE(m.compatibility_violation().has_value()) << f.id << " g=" << g;
            EXPECT_EQ(m.carrier(), a.domain(g));
            // (d . r) . s = d . (r s)
            for (elem d : m.carrier())
                for (elem r = 0; r < a.ring().order(); ++r)
                    for (elem t = 0; t < a.ring().order(); ++t)
                        ASSERT_EQ(m.right(m.right(d, r), t), m.right(d, a.ring().mul(r, t)));
        }
    }
}

TEST(Algebra, HomogeneousRejectsForeignCoefficients) {
    const auto a = fixture("E1");
    const auto s = skew_group_ring(a);
    EXPECT_THROW(s.homogeneous(1, 2), error);
    EXPECT_NO_THROW(s.homogeneous(1, 1));
    EXPECT_EQ(s.embed(3), s.unity());
}

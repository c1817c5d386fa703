#include "pgal/fixtures.hpp"
#include "pgal/partial_action.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace pgal;

namespace {

bool mentions(const Violation& v, const FiniteGroup& G, gelem g) {
    for (gelem x : {v.g, v.h, G.mul(v.g, v.h)})
        if (x == g || x == G.inv(g)) return true;
    return false;
}

}  // namespace

TEST(Restriction, ShiftOnF2CubeMatchesGlobalFormula) {
    // alpha_g(m) = sigma_g(m sigma_{g^-1}(e)) computed in the ambient ring
    for (const char* key : {"E1", "E2"}) {
        auto global = global_shift(std::string(key) == "E1" ? make_zmod(2) : make_f4(), 3);
        const FiniteRing& S = *global.ring;
        const elem e = drop_last_factor(S);
        const auto a = fixture(key);
        const auto& members = a.ring().tag().corner_members;
        const auto& G = a.group();
        for (gelem g = 0; g < 3; ++g) {
            const elem eg = S.mul(e, global.sigma[g][e]);
            EXPECT_EQ(members[a.one_g(g)], eg);
            for (elem r = 0; r < a.ring().order(); ++r) {
                const elem m = members[r];
                const elem want = global.sigma[g][S.mul(m, global.sigma[G.inv(g)][e])];
                EXPECT_EQ(members[a.apply(g, r)], want) << key << " g=" << g << " r=" << r;
            }
        }
    }
}

TEST(Restriction, E1Idempotents) {
    const auto a = fixture("E1");
    const auto& members = a.ring().tag().corner_members;
    const auto& S = *a.ring().tag().ambient;
    EXPECT_EQ(S.split(members[a.one_g(0)]), (std::vector<elem>{1, 1, 0}));
    EXPECT_EQ(S.split(members[a.one_g(1)]), (std::vector<elem>{0, 1, 0}));
    EXPECT_EQ(S.split(members[a.one_g(2)]), (std::vector<elem>{1, 0, 0}));
    const auto o = orbit_report(a);
    EXPECT_EQ(o.domain_sizes, (std::vector<std::size_t>{4, 2, 2}));
    EXPECT_EQ(o.below_count, (std::vector<std::size_t>{4, 2, 2}));
    EXPECT_EQ(orbit_report(fixture("E2")).domain_sizes, (std::vector<std::size_t>{16, 4, 4}));
}

TEST(Validation, FixturesAreValid) {
    for (const auto& f : fixture_catalog()) EXPECT_TRUE(validate(fixture(f.id).data()).ok()) << f.id;
}

TEST(Validation, EverySingleEntryMutationIsRejected) {
    for (const char* key : {"E1", "E2", "H4"}) {
        const auto a = fixture(key);
        const auto& R = a.ring();
        const auto& G = a.group();
        for (gelem g = 0; g < G.order(); ++g)
            for (std::size_t i = 0; i < a.data().alpha[g].size(); ++i)
                for (elem v = 0; v < R.order(); ++v) {
                    if (v == a.data().alpha[g][i]) continue;
                    auto d = a.data();
                    d.alpha[g][i] = v;
                    const auto rep = validate(d);
                    ASSERT_FALSE(rep.ok()) << key << " g=" << g << " i=" << i << " v=" << v;
                    EXPECT_TRUE(std::any_of(rep.violations.begin(), rep.violations.end(),
                                            [&](const Violation& x) { return mentions(x, G, g); }))
                        << key << " g=" << g;
                }
    }
}

TEST(Validation, HomomorphismCheckMatchesPairwiseOracle) {
    // shuffle the values of one table (still a bijection) and compare with an all-pairs scan
    std::mt19937 rng(17);
    const auto shift_f3 = global_shift(make_zmod(3), 3);
    std::vector<PartialAction> cases{fixture("E2"), fixture("H4"), fixture("E3"), restrict_global(shift_f3, 4)};
    std::size_t broken = 0;
    for (const auto& a : cases) {
        const auto& R = a.ring();
        for (int trial = 0; trial < 60; ++trial) {
            auto d = a.data();
            const gelem g = static_cast<gelem>(1 + rng() % (a.group_order() - 1));
            auto& t = d.alpha[g];
            if (trial % 3 == 0) std::shuffle(t.begin(), t.end(), rng);
            else std::swap(t[rng() % t.size()], t[rng() % t.size()]);
            const auto src = R.ideal(d.one[a.group().inv(g)]);
            bool hom = true;
            for (std::size_t i = 0; i < src.size(); ++i)
                for (std::size_t j = 0; j < src.size(); ++j) {
                    const auto at = [&](elem x) { return t[std::find(src.begin(), src.end(), x) - src.begin()]; };
                    hom = hom && at(R.add(src[i], src[j])) == R.add(t[i], t[j]) &&
                          at(R.mul(src[i], src[j])) == R.mul(t[i], t[j]);
                }
            const auto rep = validate(d);
            const bool flagged = std::any_of(rep.violations.begin(), rep.violations.end(), [](const Violation& v) {
                return v.axiom == axiom::additive || v.axiom == axiom::multiplicative;
            });
            EXPECT_EQ(flagged, !hom) << R.order() << " g=" << g;
            broken += !hom;
        }
    }
    EXPECT_GT(broken, 100u);
}

TEST(Validation, IdempotentMutationsAreRejected) {
    const auto a = fixture("E1");
    auto d = a.data();
    std::swap(d.one[1], d.one[2]);
    EXPECT_FALSE(validate(d).ok());

    d = a.data();
    d.one[0] = 1;  // 1_1 must be the unit
    d.alpha[0] = {0, 1};
    const auto rep = validate(d);
    ASSERT_FALSE(rep.ok());

    d = a.data();
    d.alpha.pop_back();
    EXPECT_EQ(validate(d).violations.front().axiom, std::string(axiom::shape));

    auto n1 = fixture("N1").data();
    n1.alpha[0] = {1, 0};
    EXPECT_THROW(PartialAction::make(n1), invalid_action);
}

TEST(Validation, InvalidActionCarriesReport) {
    auto d = fixture("H4").data();
    d.alpha[1][2] = 2;  // Frobenius no longer bijective
    try {
        PartialAction::make(d);
        FAIL() << "accepted a broken action";
    } catch (const invalid_action& e) {
        EXPECT_FALSE(e.report().ok());
        EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
    }
}

TEST(Global, NonHomomorphismIsRejected) {
    auto ring = make_product({make_zmod(2), make_zmod(2), make_zmod(2)});
    std::vector<std::size_t> perm{1, 2, 0};
    auto sigma = product_automorphism(*ring, perm, 0);
    // a 3-cycle cannot generate an action of C2
    EXPECT_THROW(global_from_generators(ring, make_cyclic(2), {sigma}), error);
    EXPECT_NO_THROW(global_from_generators(ring, make_cyclic(3), {sigma}));
    GlobalAction bad{ring, make_cyclic(2), {}};
    std::vector<elem> id(8);
    for (elem x = 0; x < 8; ++x) id[x] = x;
    bad.sigma = {id, sigma};
    EXPECT_FALSE(global_violations(bad).empty());
}

TEST(Global, RestrictionNeedsAnIdempotent) {
    auto g = global_shift(make_zmod(3), 2);
    EXPECT_THROW(restrict_global(g, 5), error);  // (1,2) is not idempotent
    EXPECT_NO_THROW(restrict_global(g, 3));      // (1,0)
}

TEST(Invariants, OrdersOfFixedRings) {
    EXPECT_EQ(invariant_subring(fixture("E0")).size(), 2u);
    EXPECT_EQ(invariant_subring(fixture("E1")).size(), 2u);
    EXPECT_EQ(invariant_subring(fixture("E2")).size(), 4u);
    EXPECT_EQ(invariant_subring(fixture("E3")).size(), 4u);
    EXPECT_EQ(invariant_subring(fixture("H4")).members, (std::vector<elem>{0, 1}));
    EXPECT_EQ(invariant_subring(fixture("N1")).size(), 2u);
}

TEST(Invariants, GlobalInvariantsByDirectScan) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t k = 2 + rng() % 3;
        auto g = global_shift(rng() % 2 ? make_zmod(2) : make_zmod(3), k);
        std::size_t fixed = 0;
        for (elem x = 0; x < g.ring->order(); ++x) {
            bool ok = true;
            for (const auto& s : g.sigma) ok = ok && s[x] == x;
            fixed += ok;
        }
        EXPECT_EQ(invariant_subring(PartialAction::make(as_partial(g))).size(), fixed);
    }
}

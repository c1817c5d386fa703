#include "pgal/fixtures.hpp"
#include "pgal/galois.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace pgal;

namespace {

// sum_i x_i alpha_g(y_i 1_{g^-1}), read straight from the alpha tables
elem coordinate_sum(const PartialAction& a, const GaloisCertificate& c, gelem g) {
    const auto& R = a.ring();
    const gelem gi = a.group().inv(g);
    const auto& src = a.domain(gi);
    elem s = R.zero();
    for (const auto& [x, y] : c.pairs) {
        const elem t = R.mul(y, a.one_g(gi));
        const auto pos = std::find(src.begin(), src.end(), t) - src.begin();
        s = R.add(s, R.mul(x, a.data().alpha[g][static_cast<std::size_t>(pos)]));
    }
    return s;
}

struct Scan {
    std::size_t domain = 0, kernel = 0, image = 0;
};

// walk every element sum_g a_g delta_g and tabulate x -> sum_g a_g alpha_g(x 1_{g^-1})
Scan scan_regular(const PartialAction& a) {
    const auto& R = a.ring();
    const std::size_t n = a.group_order();
    std::vector<std::size_t> idx(n, 0);
    std::set<std::vector<elem>> images;
    Scan s;
    for (;;) {
        std::vector<elem> table(R.order(), R.zero());
        for (elem x = 0; x < R.order(); ++x)
            for (gelem g = 0; g < n; ++g) table[x] = R.add(table[x], R.mul(a.domain(g)[idx[g]], a.apply(g, x)));
        ++s.domain;
        if (std::all_of(table.begin(), table.end(), [&](elem v) { return v == R.zero(); })) ++s.kernel;
        images.insert(std::move(table));
        std::size_t p = 0;
        while (p < n && ++idx[p] == a.domain(p).size()) idx[p++] = 0;
        if (p == n) break;
    }
    s.image = images.size();
    return s;
}

}  // namespace

TEST(Certificate, FoundAndVerifiedForGaloisFixtures) {
    const std::map<std::string, SearchRoute> route{{"E0", SearchRoute::orthogonal_idempotents},
                                                   {"E1", SearchRoute::orthogonal_idempotents},
                                                   {"E2", SearchRoute::orthogonal_idempotents},
                                                   {"E3", SearchRoute::orthogonal_idempotents},
                                                   {"H4", SearchRoute::linear_system}};
    for (const auto& [key, want] : route) {
        const auto a = fixture(key);
        const auto s = find_certificate(a);
        ASSERT_TRUE(s.found()) << key;
        EXPECT_EQ(s.route, want) << key;
        EXPECT_TRUE(verify_certificate(a, *s.certificate).ok);
        for (gelem g = 0; g < a.group_order(); ++g)
            EXPECT_EQ(coordinate_sum(a, *s.certificate, g), g == 0 ? a.ring().one() : a.ring().zero()) << key;
    }
}

TEST(Certificate, TrivialActionIsConclusivelyNotGalois) {
    // with alpha trivial the g = 1 and g != 1 sums coincide, so 1 = 0 would follow
    const auto a = fixture("N1");
    const auto s = find_certificate(a);
    EXPECT_FALSE(s.found());
    EXPECT_TRUE(s.conclusive);
    EXPECT_EQ(s.route, SearchRoute::linear_system);

    SearchOptions no_linear;
    no_linear.linear_limit = 0;
    const auto e = find_certificate(a, no_linear);
    EXPECT_FALSE(e.found());
    EXPECT_TRUE(e.conclusive);
    EXPECT_EQ(e.route, SearchRoute::exhaustive);
}

TEST(Certificate, ExhaustiveRouteAgreesWithLinearSystem) {
    SearchOptions no_linear;
    no_linear.linear_limit = 0;
    const auto a = fixture("H4");
    const auto s = find_certificate(a, no_linear);
    ASSERT_TRUE(s.found());
    EXPECT_EQ(s.route, SearchRoute::exhaustive);
    EXPECT_EQ(coordinate_sum(a, *s.certificate, 0), 1u);
    EXPECT_EQ(coordinate_sum(a, *s.certificate, 1), 0u);
}

TEST(Certificate, BrokenCertificateReportsTheFailingElement) {
    const auto a = fixture("E1");
    auto cert = *find_certificate(a).certificate;
    cert.pairs.pop_back();
    const auto c = verify_certificate(a, cert);
    EXPECT_FALSE(c.ok);
    EXPECT_EQ(c.computed_sum, coordinate_sum(a, cert, c.failing_g));
    cert.pairs.emplace_back(99, 0);
    EXPECT_THROW(verify_certificate(a, cert), error);
}

TEST(RegularRepresentation, KernelAndImageMatchScan) {
    for (const char* key : {"E0", "E1", "E2", "H4", "N1"}) {
        const auto a = fixture(key);
        const auto rr = regular_representation(a);
        const auto s = scan_regular(a);
        EXPECT_EQ(rr.domain_order, s.domain) << key;
        EXPECT_EQ(rr.kernel_order, s.kernel) << key;
        EXPECT_EQ(rr.image_order, s.image) << key;
        EXPECT_TRUE(rr.homomorphism) << key;
        EXPECT_TRUE(rr.lands_in_endomorphisms) << key;
    }
}

TEST(RegularRepresentation, MatrixAlgebraVerdicts) {
    // End over a field F_q of a k-dimensional space has order q^(k^2)
    const std::map<std::string, std::pair<std::uint64_t, std::string>> want{
        {"E0", {512, "M_3(F_2)"}},     {"E1", {16, "M_2(F_2)"}},       {"E2", {256, "M_2(F_4)"}},
        {"E3", {262144, "M_3(F_4)"}},  {"H4", {16, "M_2(F_2)"}}};
    for (const auto& [key, w] : want) {
        const auto rr = regular_representation(fixture(key));
        EXPECT_EQ(rr.endomorphism_order, w.first) << key;
        EXPECT_TRUE(rr.bijective) << key;
        EXPECT_EQ(rr.verdict, w.second) << key;
    }
    const auto n1 = regular_representation(fixture("N1"));
    EXPECT_EQ(n1.endomorphism_order, 2u);
    EXPECT_EQ(n1.kernel_order, 2u);
    EXPECT_FALSE(n1.bijective);
    EXPECT_EQ(n1.verdict, "not an isomorphism");
}

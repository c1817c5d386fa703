// Acceptance run: one line per criterion with its wall time against the limit.

#include "pgal/config.hpp"
#include "pgal/crossed.hpp"
#include "pgal/fixtures.hpp"
#include "pgal/galois.hpp"
#include "pgal/report.hpp"
#include "pgal/sequence.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

using namespace pgal;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

int criterion(int id, double limit, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.ok = false;
        out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (out.ok && secs >= limit) {
        out.ok = false;
        out.detail = "over the time limit";
    }
    std::printf("criterion %d: %s  %.2f s (limit %.0f s)  %s%s%s\n", id, out.ok ? "PASS" : "FAIL", secs, limit,
                title.c_str(), out.detail.empty() ? "" : "  -- ", out.detail.c_str());
    std::fflush(stdout);
    return out.ok ? 0 : 1;
}

// ---------------------------------------------------------------------------
// criterion 1

RingPtr field_of_order(std::uint32_t q) {
    switch (q) {
        case 4: return make_gf(2, {1, 1, 1});
        case 8: return make_gf(2, {1, 1, 0, 1});
        case 9: return make_gf(3, {1, 0, 1});
        default: return make_zmod(q);
    }
}

std::uint32_t degree_of(std::uint32_t q) { return q == 4 || q == 9 ? 2 : q == 8 ? 3 : 1; }

class RingCache {
public:
    const RingPtr& get(std::uint32_t q, std::size_t k) {
        auto& r = rings_[{q, k}];
        if (!r) {
            std::size_t order = 1;
            for (std::size_t i = 0; i < k; ++i) order *= q;
            r = make_product(std::vector<RingPtr>(k, field_of_order(q)), order);
        }
        return r;
    }

private:
    std::map<std::pair<std::uint32_t, std::size_t>, RingPtr> rings_;
};

struct RandomInstance {
    GlobalAction global;
    elem e;
    std::string label;
};

// sigma permutes the k factors of F_q^k and applies a Frobenius power; the group is
// C_m with m the order of sigma
RandomInstance random_instance(std::mt19937& rng, RingCache& cache) {
    static const std::uint32_t fields[] = {2, 3, 4, 5, 7, 8, 9};
    for (;;) {
        const std::uint32_t q = fields[rng() % 7];
        const std::size_t k = 1 + rng() % 4;
        std::vector<std::size_t> perm(k);
        for (std::size_t i = 0; i < k; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        const unsigned frob = rng() % degree_of(q);
        const auto& ring = cache.get(q, k);
        const auto sigma = product_automorphism(*ring, perm, frob);
        std::vector<elem> t = sigma;
        std::uint32_t m = 1;
        for (;; ++m) {
            bool identity = true;
            for (elem x = 0; x < t.size() && identity; ++x) identity = t[x] == x;
            if (identity) break;
            for (auto& v : t) v = sigma[v];
        }
        if (m == 1) continue;
        auto global = global_from_generators(ring, make_cyclic(m), {sigma});
        const auto es = idempotents(*ring);
        const elem e = es[1 + rng() % (es.size() - 1)];
        std::string p;
        for (auto i : perm) p += std::to_string(i);
        return {std::move(global), e,
                "F" + std::to_string(q) + "^" + std::to_string(k) + " perm " + p + " frob " + std::to_string(frob) +
                    " e " + std::to_string(e)};
    }
}

bool rejected_with_witness(const ActionData& d) {
    const auto rep = validate(d);
    return !rep.ok() && !rep.violations.front().axiom.empty();
}

void all_mutations(const PartialAction& a, const std::string& key, Outcome& out, std::size_t& count) {
    const auto& R = a.ring();
    for (gelem g = 0; g < a.group_order(); ++g) {
        for (std::size_t i = 0; i < a.data().alpha[g].size(); ++i)
            for (elem v = 0; v < R.order(); ++v) {
                if (v == a.data().alpha[g][i]) continue;
                auto d = a.data();
                d.alpha[g][i] = v;
                ++count;
                out.require(rejected_with_witness(d),
                            key + ": alpha_" + std::to_string(g) + "[" + std::to_string(i) + "] = " +
                                std::to_string(v) + " accepted");
            }
        for (elem v = 0; v < R.order(); ++v) {
            if (v == a.one_g(g)) continue;
            auto d = a.data();
            d.one[g] = v;
            ++count;
            out.require(rejected_with_witness(d), key + ": 1_" + std::to_string(g) + " = " + std::to_string(v) +
                                                      " accepted");
        }
    }
}

void axiom_suite(Outcome& out) {
    std::size_t mutations = 0;
    for (const char* key : {"E0", "E1", "E2"}) {
        const auto a = fixture(key);
        out.require(validate(a.data()).ok(), std::string(key) + " rejected");
        all_mutations(a, key, out, mutations);
    }
    std::mt19937 rng(20261016);
    RingCache cache;
    for (int trial = 0; trial < 200; ++trial) {
        const auto inst = random_instance(rng, cache);
        const auto a = restrict_global(inst.global, inst.e);
        out.require(validate(a.data()).ok(), inst.label + " rejected");
        for (int t = 0; t < 5; ++t) {
            auto d = a.data();
            const gelem g = static_cast<gelem>(rng() % a.group_order());
            const std::size_t i = rng() % d.alpha[g].size();
            elem v = d.alpha[g][i];
            if (a.ring().order() < 2) break;
            while (v == d.alpha[g][i]) v = static_cast<elem>(rng() % a.ring().order());
            d.alpha[g][i] = v;
            ++mutations;
            out.require(rejected_with_witness(d), inst.label + ": mutation accepted");
        }
    }
    if (out.ok) out.detail = std::to_string(mutations) + " mutations rejected";
}

// ---------------------------------------------------------------------------

Cochain random_cochain(const CochainContext& ctx, std::size_t n, std::mt19937& rng) {
    Cochain c = ctx.identity(n);
    for (std::size_t t = 0; t < c.values.size(); ++t) {
        const auto& u = ctx.units(ctx.corner_of(n, t)).elements;
        c.values[t] = u[rng() % u.size()];
    }
    return c;
}

void delta_squared(Outcome& out) {
    std::mt19937 rng(2);
    std::size_t exhaustive = 0;
    for (const char* key : {"E1", "E2"}) {
        const auto a = fixture(key);
        const CochainContext ctx(a);
        for (std::size_t n = 0; n <= 1; ++n) {
            const auto id = ctx.identity(n + 2);
            std::size_t seen = 0;
            detail::for_each_cochain(ctx, n, default_enumeration_budget, [&](const std::vector<elem>& vals) {
                ++seen;
                out.require(ctx.coboundary(ctx.coboundary(Cochain{n, vals})) == id,
                            std::string(key) + ": delta delta != 1 at n = " + std::to_string(n));
            });
            out.require(seen == ctx.cochain_count(n), std::string(key) + ": enumeration incomplete");
            exhaustive += seen;
        }
        if (key == std::string("E2")) out.require(ctx.cochain_count(1) == 81, "E2: |C^1| != 81");
        const auto id4 = ctx.identity(4);
        for (int t = 0; t < 10'000; ++t)
            out.require(ctx.coboundary(ctx.coboundary(random_cochain(ctx, 2, rng))) == id4,
                        std::string(key) + ": delta delta != 1 at n = 2");
    }
    if (out.ok) out.detail = std::to_string(exhaustive) + " exhaustive, 20000 sampled";
}

void engine_agreement(Outcome& out) {
    for (const char* key : {"E1", "E2", "E0", "E3"}) {
        const auto a = fixture(key);
        const CochainContext ctx(a);
        for (std::size_t n = 1; n <= 2; ++n) {
            const auto en = cohomology_enumerate(ctx, n);
            const auto st = cohomology_structure(ctx, n);
            out.require(en.z_order == st.z_order && en.b_order == st.b_order && en.h_order == st.h_order,
                        std::string(key) + ": engines disagree at n = " + std::to_string(n));
        }
    }
}

void sequence_consequences(Outcome& out) {
    for (const char* key : {"E0", "E1", "E2", "E3"}) {
        const auto rep = consequence_check(fixture(key));
        out.require(rep.consistent, std::string(key) + ": inconsistent");
        out.require(rep.entries.size() == 8, std::string(key) + ": wrong entry count");
        if (rep.entries.size() != 8) continue;
        out.require(rep.entries[0].order == "1", std::string(key) + ": H^1 != 1");
        out.require(rep.entries[3].order == "1", std::string(key) + ": H^2 != 1");
        out.require(rep.entries[5].order == "1", std::string(key) + ": |Z^1(PicS)| != 1");
    }
    const auto s = find_certificate(fixture("N1"));
    out.require(!s.found() && s.conclusive, "N1: not a conclusive NotFound");
}

void structural_isomorphisms(Outcome& out) {
    for (const char* key : {"E1", "E2"}) {
        const auto a = fixture(key);
        const auto theta = delta_theta(a);
        const auto skew = skew_group_ring(a);
        const auto rep = kappa_iso(theta, skew).verify();
        out.require(rep.ok(), std::string(key) + ": kappa " + rep.witness);
        out.require(rep.pairs_checked == theta.basis().size() * theta.basis().size(),
                    std::string(key) + ": kappa skipped basis pairs");
        const CochainContext ctx(a);
        for (const auto& f : enumerate_cocycles(ctx, 2)) {
            const auto assoc = crossed_product(a, f).check_associativity();
            out.require(assoc.ok && !assoc.sampled, std::string(key) + ": crossed product " + assoc.witness);
        }
    }
    const auto a = fixture("E2");
    const CochainContext ctx(a);
    const auto z = enumerate_cocycles(ctx, 2);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        const Cochain fp = z[rng() % z.size()];
        const Cochain eps = random_cochain(ctx, 1, rng);
        const Cochain f = ctx.multiply(fp, ctx.coboundary(eps));
        const auto src = crossed_product(a, f);
        const auto dst = crossed_product(a, fp);
        const auto rep = coiso_map(src, dst, eps).verify();
        out.require(rep.ok(), "E2: coiso " + rep.witness);
    }
}

void matrix_ring_verdict(Outcome& out) {
    const auto e1 = delta_theta_brauer_class(fixture("E1"));
    out.require(e1.verdict == "M_2(F_2)" && e1.algebra_order == 16 && e1.endomorphism_order == 16 && e1.rho_injective &&
                    e1.rho_bijective,
                "E1: " + e1.verdict);
    const auto e0 = delta_theta_brauer_class(fixture("E0"));
    out.require(e0.verdict == "M_3(F_2)" && e0.algebra_order == 512 && e0.endomorphism_order == 512 &&
                    e0.rho_injective && e0.rho_bijective,
                "E0: " + e0.verdict);
}

void hilbert_90(Outcome& out) {
    for (const char* key : {"E3", "H4"}) {
        const auto a = fixture(key);
        const auto h = cohomology_enumerate(CochainContext(a), 1);
        out.require(h.h_order == 1, std::string(key) + ": H^1 = " + std::to_string(h.h_order));
    }
}

void determinism(Outcome& out) {
    RunOptions opt;
    opt.command = "sequence";
    const auto x = run(fixture_instance("E2"), opt);
    const auto y = run(fixture_instance("E2"), opt);
    out.require(x.status == 0, "exit status " + std::to_string(x.status));
    out.require(x.text == y.text, "text reports differ");
    out.require(x.doc.dump(2) == y.doc.dump(2), "JSON reports differ");
}

}  // namespace

int main() {
    int failed = 0;
    failed += criterion(1, 10, "axiom suite and mutation rejection", axiom_suite);
    failed += criterion(2, 60, "delta after delta is trivial", delta_squared);
    failed += criterion(3, 120, "enumeration and structure engines agree", engine_agreement);
    failed += criterion(4, 120, "exact-sequence consequences", sequence_consequences);
    failed += criterion(5, 60, "kappa, coiso and crossed-product associativity", structural_isomorphisms);
    failed += criterion(6, 30, "matrix-ring verdicts", matrix_ring_verdict);
    failed += criterion(7, 60, "Hilbert 90", hilbert_90);
    failed += criterion(8, 60, "byte-identical sequence reports", determinism);
    std::printf("%d of 8 criteria passed\n", 8 - failed);
    return failed == 0 ? 0 : 1;
}

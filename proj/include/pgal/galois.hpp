#pragma once

// Partial Galois coordinates and the regular representation of R *_alpha G on R.

#include "pgal/additive.hpp"
#include "pgal/partial_action.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pgal {

struct GaloisCertificate {
    std::vector<std::pair<elem, elem>> pairs;  // (x_i, y_i)
};

struct CertificateCheck {
    bool ok = false;
    gelem failing_g = 0;
    elem computed_sum = 0;
};

/// sum_i x_i alpha_g(y_i 1_{g^-1}) == (g == 1 ? 1 : 0) for every g.
inline CertificateCheck verify_certificate(const PartialAction& a, const GaloisCertificate& cert) {
    const auto& R = a.ring();
    const auto& G = a.group();
    for (const auto& [x, y] : cert.pairs)
        if (x >= R.order() || y >= R.order()) throw error("certificate element out of range");
    for (gelem g = 0; g < G.order(); ++g) {
        elem sum = R.zero();
        for (const auto& [x, y] : cert.pairs) sum = R.add(sum, R.mul(x, a.apply(g, y)));
        const elem expect = g == G.identity() ? R.one() : R.zero();
        if (sum != expect) return {false, g, sum};
    }
    return {true, 0, 0};
}

enum class SearchRoute { orthogonal_idempotents, linear_system, exhaustive, none };

inline const char* to_string(SearchRoute r) {
    switch (r) {
        case SearchRoute::orthogonal_idempotents: return "orthogonal-idempotents";
        case SearchRoute::linear_system: return "linear-system";
        case SearchRoute::exhaustive: return "exhaustive";
        case SearchRoute::none: break;
    }
    return "none";
}

struct CertificateSearch {
    std::optional<GaloisCertificate> certificate;
    /// For a failed search: whether "not Galois" is proven.
    bool conclusive = false;
    SearchRoute route = SearchRoute::none;
    std::string note;

    bool found() const noexcept { return certificate.has_value(); }
};

struct SearchOptions {
    std::size_t max_m = 4;
    std::size_t budget = 10'000'000;
    /// Largest coordinate count for which the linear-system route is attempted.
    std::size_t linear_limit = 600;
};

namespace detail {

// Solve sum_i x_i alpha_g(a_i 1_{g^-1}) = delta_{1,g} for x in R^k, where a_i are the
// additive generators of R. The a_i span R over Z, hence over R^alpha, so a
// solution exists iff the extension is partial Galois.
inline std::optional<CertificateSearch> solve_linear(const PartialAction& a, const SearchOptions& opt) {
    const auto& R = a.ring();
    const auto& G = a.group();
    const auto add = additive_structure(a.ring_ptr());
    const auto& gens = add.generators();
    const auto& fac = add.factors();
    const std::size_t k = gens.size();
    const std::size_t n = G.order();
    if (k * k + n * k > opt.linear_limit) return std::nullopt;

    std::vector<std::int64_t> domain, codomain;
    for (std::size_t i = 0; i < k; ++i) domain.insert(domain.end(), fac.begin(), fac.end());
    for (std::size_t g = 0; g < n; ++g) codomain.insert(codomain.end(), fac.begin(), fac.end());
    std::vector<Coords> images;
    for (std::size_t i = 0; i < k; ++i)      // unknown x_i
        for (std::size_t j = 0; j < k; ++j) {  // x_i = gens[j]
            Coords img;
            for (gelem g = 0; g < n; ++g) append_coords(img, add.dlog(R.mul(gens[j], a.apply(g, gens[i]))));
            images.push_back(std::move(img));
        }
    Coords target;
    for (gelem g = 0; g < n; ++g) append_coords(target, add.dlog(g == G.identity() ? R.one() : R.zero()));
    CertificateSearch out;
    out.route = SearchRoute::linear_system;
    const auto sol = hom_preimage(domain, codomain, images, target);
    if (!sol) {
        out.conclusive = true;
        out.note = "no solution over the additive generators of R; R is not a partial Galois extension";
        return out;
    }
    GaloisCertificate cert;
    for (std::size_t i = 0; i < k; ++i) {
        Coords c(sol->begin() + static_cast<std::ptrdiff_t>(i * k), sol->begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
        const elem x = add.element(c);
        if (x != R.zero()) cert.pairs.emplace_back(x, gens[i]);
    }
    if (!verify_certificate(a, cert).ok) throw defect("linear-system certificate failed verification");
    out.certificate = std::move(cert);
    out.conclusive = true;
    return out;
}

}  // namespace detail

/// Searches for partial Galois coordinates.
///
/// Routes, in order: orthogonal primitive idempotents; the R-linear system with
/// y ranging over additive generators (complete either way); bounded exhaustive
/// search over pairs from a candidate set.
inline CertificateSearch find_certificate(const PartialAction& a, const SearchOptions& opt = {}) {
    const auto& R = a.ring();
    {
        GaloisCertificate cert;
        for (elem e : primitive_idempotents(R)) cert.pairs.emplace_back(e, e);
        if (verify_certificate(a, cert).ok) {
            CertificateSearch out;
            out.certificate = std::move(cert);
            out.route = SearchRoute::orthogonal_idempotents;
            out.conclusive = true;
            return out;
        }
    }
    if (auto lin = detail::solve_linear(a, opt)) return *lin;

    // exhaustive fallback
    std::vector<elem> cand;
    bool full = false;
    {
        std::uint64_t space = 1;
        const std::uint64_t pairs = std::uint64_t{R.order()} * R.order();
        bool fits = true;
        for (std::size_t m = 0; m < opt.max_m && fits; ++m) {
            space *= pairs;
            fits = space <= opt.budget;
        }
        if (fits) {
            full = true;
            for (elem x = 0; x < R.order(); ++x) cand.push_back(x);
        } else {
            const auto add = additive_structure(a.ring_ptr());
            cand = add.generators();
            for (elem e : idempotents(R)) cand.push_back(e);
            std::sort(cand.begin(), cand.end());
            cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        }
    }
    std::vector<std::pair<elem, elem>> pool;
    for (elem x : cand)
        for (elem y : cand) pool.emplace_back(x, y);
    CertificateSearch out;
    out.route = SearchRoute::exhaustive;
    std::size_t visited = 0;
    for (std::size_t m = 1; m <= opt.max_m; ++m) {
        std::vector<std::size_t> idx(m, 0);  // non-decreasing tuple over pool
        for (;;) {
            if (++visited > opt.budget) {
                out.note = "exhaustive search budget exhausted";
                return out;
            }
            GaloisCertificate cert;
            for (auto i : idx) cert.pairs.push_back(pool[i]);
            if (verify_certificate(a, cert).ok) {
                out.certificate = std::move(cert);
                out.conclusive = true;
                return out;
            }
            std::size_t p = m;
            while (p > 0 && idx[p - 1] + 1 == pool.size()) --p;
            if (p == 0) break;
            ++idx[p - 1];
            for (std::size_t q = p; q < m; ++q) idx[q] = idx[p - 1];
        }
    }
    out.conclusive = full;
    out.note = full ? "no certificate with m <= max_m over all of R"
                    : "no certificate among generator pairs; inconclusive";
    return out;
}

// ---------------------------------------------------------------------------

struct RegularRepresentation {
    bool homomorphism = false;           // rho(u) rho(v) == rho(uv) on generator pairs
    bool lands_in_endomorphisms = false; // every rho(u) is R^alpha-linear
    std::uint64_t domain_order = 0;      // |R *_alpha G|
    std::uint64_t kernel_order = 0;
    std::uint64_t image_order = 0;
    std::uint64_t endomorphism_order = 0;  // |End_{R^alpha}(R)|
    bool injective = false;
    bool bijective = false;
    std::size_t invariant_order = 0;
    bool invariants_field = false;
    std::optional<std::size_t> matrix_degree;  // k with |R| = |R^alpha|^k, when R^alpha is a field
    std::string verdict;
    /// For each additive generator u of R *_alpha G (component g, element d):
    /// the values rho(u)(a_j) on the additive generators a_j of R.
    std::vector<std::tuple<gelem, elem, std::vector<elem>>> generator_images;
};

/// rho : R *_alpha G -> End_{R^alpha}(R), r delta_g |-> (x |-> r alpha_g(x 1_{g^-1})).
inline RegularRepresentation regular_representation(const PartialAction& a) {
    const auto& R = a.ring();
    const auto& G = a.group();
    const auto ring = a.ring_ptr();
    RegularRepresentation out;
    const Subring inv = invariant_subring(a);
    out.invariant_order = inv.size();
    out.invariants_field = inv.is_field();

    const auto A = additive_structure(ring);
    const auto& agens = A.generators();
    const auto& afac = A.factors();
    const std::size_t k = agens.size();

    // generators of R *_alpha G: additive generators of each D_g
    std::vector<std::pair<gelem, elem>> ugens;
    std::vector<std::int64_t> dom_fac;
    out.domain_order = 1;
    for (gelem g = 0; g < G.order(); ++g) {
        const auto Dg = additive_structure(ring, a.domain(g));
        out.domain_order *= Dg.order();
        for (std::size_t t = 0; t < Dg.generators().size(); ++t) {
            ugens.emplace_back(g, Dg.generators()[t]);
            dom_fac.push_back(Dg.factors()[t]);
        }
    }
    auto rho = [&](gelem g, elem d, elem x) { return R.mul(d, a.apply(g, x)); };

    // kernel of rho, with Hom_Z(R, R) embedded in R^k by evaluation at generators
    std::vector<std::int64_t> ev_fac;
    for (std::size_t j = 0; j < k; ++j) ev_fac.insert(ev_fac.end(), afac.begin(), afac.end());
    std::vector<Coords> images;
    for (const auto& [g, d] : ugens) {
        Coords c;
        std::vector<elem> vals;
        for (elem aj : agens) {
            vals.push_back(rho(g, d, aj));
            append_coords(c, A.dlog(vals.back()));
        }
        out.generator_images.emplace_back(g, d, std::move(vals));
        images.push_back(std::move(c));
    }
    const auto kr = hom_kernel_image(dom_fac, ev_fac, images, 0);
    out.kernel_order = kr.kernel_order;
    out.image_order = kr.image_order;
    out.injective = kr.kernel_order == 1;

    // multiplicativity on generator pairs, evaluated on all of R
    out.homomorphism = true;
    for (const auto& [g, d] : ugens)
        for (const auto& [h, e] : ugens) {
            const elem prod = R.mul(d, a.apply(g, e));
            const gelem gh = G.mul(g, h);
            for (elem x = 0; x < R.order() && out.homomorphism; ++x)
                if (rho(g, d, rho(h, e, x)) != rho(gh, prod, x)) out.homomorphism = false;
        }
    out.lands_in_endomorphisms = true;
    for (const auto& [g, d] : ugens)
        for (elem c : inv.members)
            for (elem x = 0; x < R.order() && out.lands_in_endomorphisms; ++x)
                if (rho(g, d, R.mul(c, x)) != R.mul(c, rho(g, d, x))) out.lands_in_endomorphisms = false;

    // |End_{R^alpha}(R)|: kernel of Hom_Z(R,R) -> (+)_{c,i} R, phi |-> phi(c a_i) - c phi(a_i)
    const auto Inv = additive_structure(ring, inv.members);
    std::vector<AdditiveStructure> torsion;
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<elem> ker;
        for (elem r = 0; r < R.order(); ++r)
            if (R.times(static_cast<std::uint64_t>(afac[j]), r) == R.zero()) ker.push_back(r);
        torsion.push_back(additive_structure(ring, std::move(ker)));
    }
    std::vector<std::int64_t> hom_fac, con_fac;
    std::vector<Coords> con_images;
    const auto& cgens = Inv.generators();
    for (std::size_t c = 0; c < cgens.size(); ++c)
        for (std::size_t i = 0; i < k; ++i) con_fac.insert(con_fac.end(), afac.begin(), afac.end());
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t t = 0; t < torsion[j].generators().size(); ++t) {
            hom_fac.push_back(torsion[j].factors()[t]);
            const elem b = torsion[j].generators()[t];
            Coords img;
            for (elem c : cgens)
                for (std::size_t i = 0; i < k; ++i) {
                    const auto& ca = A.dlog(R.mul(c, agens[i]));
                    elem v = R.times(static_cast<std::uint64_t>(ca[j]), b);
                    if (i == j) v = R.sub(v, R.mul(c, b));
                    append_coords(img, A.dlog(v));
                }
            con_images.push_back(std::move(img));
        }
    out.endomorphism_order = hom_kernel_image(hom_fac, con_fac, con_images, 0).kernel_order;
    out.bijective = out.injective && out.homomorphism && out.lands_in_endomorphisms &&
                    out.image_order == out.endomorphism_order;

    if (out.invariants_field) {
        std::size_t deg = 0, acc = 1;
        while (acc < R.order()) {
            acc *= inv.size();
            ++deg;
        }
        if (acc == R.order()) out.matrix_degree = deg;
    }
    if (out.bijective && out.matrix_degree)
        out.verdict = "M_" + std::to_string(*out.matrix_degree) + "(F_" + std::to_string(out.invariant_order) + ")";
    else if (out.bijective)
        out.verdict = "End_{R^alpha}(R) of order " + std::to_string(out.endomorphism_order);
    else
        out.verdict = "not an isomorphism";
    return out;
}

}  // namespace pgal

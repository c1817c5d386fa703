#pragma once

// Partial group cohomology H^n(G, alpha, U(R)) for n <= 3.
//
// An n-cochain takes the tuple (g_1, ..., g_n) to a unit of the corner ring
// R 1_{g_1} 1_{g_1 g_2} ... 1_{g_1 ... g_n}. Two engines compute Z^n, B^n, H^n:
//   * enumerate: backtracking over cochain values for Z^n, and the image of the
//     whole of C^{n-1} for B^n;
//   * structure: delta^n as an integer matrix between invariant-factor
//     coordinates, with kernels, images and subquotients from normal forms.

#include "pgal/error.hpp"
#include "pgal/finring.hpp"
#include "pgal/groups.hpp"
#include "pgal/partial_action.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace pgal {

struct Cochain {
    std::size_t arity = 0;
    std::vector<elem> values;  // indexed by tuple index; a single value for arity 0

    friend bool operator==(const Cochain&, const Cochain&) = default;
    friend auto operator<=>(const Cochain& a, const Cochain& b) {
        if (auto c = a.arity <=> b.arity; c != 0) return c;
        return a.values <=> b.values;
    }
};

struct CochainHash {
    std::size_t operator()(const Cochain& c) const noexcept {
        std::size_t h = c.arity * 0x9e3779b97f4a7c15ULL;
        for (elem v : c.values) h = (h ^ v) * 0x100000001b3ULL;
        return h;
    }
};

}  // namespace pgal

template <>
struct std::hash<pgal::Cochain> : pgal::CochainHash {};

namespace pgal {

enum class Engine { automatic, enumerate, structure, both };

inline const char* to_string(Engine e) {
    switch (e) {
        case Engine::automatic: return "auto";
        case Engine::enumerate: return "enumerate";
        case Engine::structure: return "structure";
        case Engine::both: return "both";
    }
    return "?";
}

inline constexpr std::size_t default_enumeration_budget = 10'000'000;

struct CohomologyGroup {
    std::size_t n = 0;
    std::uint64_t z_order = 1;
    std::uint64_t b_order = 1;
    std::uint64_t h_order = 1;
    std::uint64_t c_order = 1;  // |C^n|, saturating at UINT64_MAX
    FinAbPresentation<Cochain> h_structure;
    std::vector<Cochain> representatives;  // one per class, ascending
    /// True when each representative is the lexicographically least member of its coset.
    bool representatives_minimal = true;
    bool representatives_complete = true;
    std::string engine;
};

/// Per-action cache of corners, corner unit groups and their presentations.
class CochainContext {
public:
    explicit CochainContext(const PartialAction& action) : a_(action) {
        const auto& R = a_.ring();
        std::vector<elem> corners{R.one()};
        for (gelem g = 0; g < a_.group_order(); ++g) corners.push_back(a_.one_g(g));
        for (std::size_t i = 0; i < corners.size(); ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                const elem p = R.mul(corners[i], corners[j]);
                if (std::find(corners.begin(), corners.end(), p) == corners.end()) corners.push_back(p);
            }
        std::sort(corners.begin(), corners.end());
        for (elem e : corners) {
            Corner c;
            c.units = corner_units(R, e);
            c.inverse.assign(R.order(), no_inverse);
            for (std::size_t i = 0; i < c.units.size(); ++i) c.inverse[c.units.elements[i]] = c.units.inverse[i];
            c.structure = std::make_shared<AbelianStructure<elem>>(
                c.units.elements, [ring = a_.ring_ptr()](const elem& x, const elem& y) { return ring->mul(x, y); },
                e);
            corners_.emplace(e, std::move(c));
        }
    }

    const PartialAction& action() const noexcept { return a_; }
    std::size_t group_order() const noexcept { return a_.group_order(); }

    std::size_t tuple_count(std::size_t n) const {
        std::size_t c = 1;
        for (std::size_t i = 0; i < n; ++i) c *= group_order();
        return c;
    }

    /// I(g_1..g_n) = 1_{g_1} 1_{g_1 g_2} ... ; for n = 0 the identity of R.
    elem corner_of(std::size_t n, std::size_t tuple) const {
        const auto& R = a_.ring();
        const auto& G = a_.group();
        const auto t = tuple_of(tuple, n, group_order());
        elem acc = R.one();
        gelem prefix = G.identity();
        for (gelem g : t) {
            prefix = G.mul(prefix, g);
            acc = R.mul(acc, a_.one_g(prefix));
        }
        return acc;
    }

    const CornerUnits& units(elem e) const { return corner(e).units; }
    const AbelianStructure<elem>& unit_structure(elem e) const { return *corner(e).structure; }

    /// Corner inverse of u in U(Re); throws if u is not a corner unit.
    elem inverse(elem e, elem u) const {
        const elem v = corner(e).inverse[u];
        if (v == no_inverse) throw error("no corner inverse for " + std::to_string(u) + " in R*" + std::to_string(e));
        return v;
    }
    bool is_unit(elem e, elem u) const { return corner(e).inverse[u] != no_inverse; }

    Cochain identity(std::size_t n) const {
        Cochain c{n, std::vector<elem>(tuple_count(n))};
        for (std::size_t t = 0; t < c.values.size(); ++t) c.values[t] = corner_of(n, t);
        return c;
    }

    /// Throws unless every value lies in its corner unit group.
    void check(const Cochain& f) const {
        if (f.values.size() != tuple_count(f.arity)) throw error("cochain has wrong number of values");
        for (std::size_t t = 0; t < f.values.size(); ++t) {
            const elem e = corner_of(f.arity, t);
            if (f.values[t] >= a_.ring().order() || !is_unit(e, f.values[t]))
                throw error("cochain value at tuple " + std::to_string(t) + " is not a unit of its corner");
        }
    }

    Cochain multiply(const Cochain& f, const Cochain& h) const {
        if (f.arity != h.arity) throw error("cochain arities differ");
        Cochain out{f.arity, f.values};
        for (std::size_t t = 0; t < out.values.size(); ++t) out.values[t] = a_.ring().mul(f.values[t], h.values[t]);
        return out;
    }

    Cochain invert(const Cochain& f) const {
        Cochain out{f.arity, f.values};
        for (std::size_t t = 0; t < out.values.size(); ++t) out.values[t] = inverse(corner_of(f.arity, t), f.values[t]);
        return out;
    }

    /// (delta^n f) at the (n+1)-tuple with index `s`, given f's values.
    elem coboundary_at(std::size_t n, const std::vector<elem>& f, std::size_t s) const {
        const auto& R = a_.ring();
        const auto& G = a_.group();
        const std::size_t m = group_order();
        const auto t = tuple_of(s, n + 1, m);
        const gelem g1 = t[0];
        if (n == 0) {
            const elem x = f[0];
            return R.mul(a_.apply(g1, x), inverse(R.one(), x));
        }
        auto value = [&](const std::vector<gelem>& tup, bool inv) {
            const std::size_t idx = index_of(tup, m);
            return inv ? inverse(corner_cache(n, idx), f[idx]) : f[idx];
        };
        std::vector<gelem> tail(t.begin() + 1, t.end());
        elem acc = a_.apply(g1, f[index_of(tail, m)]);
        std::vector<gelem> merged(n);
        for (std::size_t i = 1; i <= n; ++i) {
            // (g_1, ..., g_i g_{i+1}, ..., g_{n+1})
            for (std::size_t j = 0, k = 0; j <= n; ++j) {
                if (j == i) continue;
                merged[k++] = (j == i - 1) ? G.mul(t[i - 1], t[i]) : t[j];
            }
            acc = R.mul(acc, value(merged, i % 2 == 1));
        }
        std::vector<gelem> head(t.begin(), t.end() - 1);
        acc = R.mul(acc, value(head, (n + 1) % 2 == 1));
        return acc;
    }

    Cochain coboundary(const Cochain& f) const {
        if (f.arity > 3) throw error("coboundary supported for n <= 3");
        check(f);
        const std::size_t n = f.arity;
        Cochain out{n + 1, std::vector<elem>(tuple_count(n + 1))};
        for (std::size_t s = 0; s < out.values.size(); ++s) {
            out.values[s] = coboundary_at(n, f.values, s);
            const elem e = corner_cache(n + 1, s);
            if (a_.ring().mul(out.values[s], e) != out.values[s] || !is_unit(e, out.values[s]))
                throw defect("coboundary value outside the target corner unit group");
        }
        return out;
    }

    /// Total number of n-cochains, saturating.
    std::uint64_t cochain_count(std::size_t n) const {
        std::uint64_t c = 1;
        for (std::size_t t = 0; t < tuple_count(n); ++t) {
            const std::uint64_t u = units(corner_cache(n, t)).size();
            if (c > UINT64_MAX / u) return UINT64_MAX;
            c *= u;
        }
        return c;
    }

    elem corner_cache(std::size_t n, std::size_t tuple) const {
        auto& v = corner_table_[n];
        if (v.empty()) {
            v.resize(tuple_count(n));
            for (std::size_t t = 0; t < v.size(); ++t) v[t] = corner_of(n, t);
        }
        return v[tuple];
    }

private:
    static constexpr elem no_inverse = ~elem{0};

    struct Corner {
        CornerUnits units;
        std::vector<elem> inverse;
        std::shared_ptr<AbelianStructure<elem>> structure;
    };

    const Corner& corner(elem e) const {
        auto it = corners_.find(e);
        if (it == corners_.end()) throw defect("corner " + std::to_string(e) + " not precomputed");
        return it->second;
    }

    const PartialAction& a_;
    std::map<elem, Corner> corners_;
    mutable std::map<std::size_t, std::vector<elem>> corner_table_;
};

inline Cochain coboundary(const PartialAction& a, const Cochain& f) { return CochainContext(a).coboundary(f); }

// ---------------------------------------------------------------------------
// Enumeration engine

namespace detail {

/// Calls visit(values) for every element of C^n in lexicographic order.
template <class Visit>
void for_each_cochain(const CochainContext& ctx, std::size_t n, std::size_t budget, Visit&& visit) {
    const std::uint64_t total = ctx.cochain_count(n);
    if (total > budget) throw budget_exceeded("enumeration", total == UINT64_MAX ? SIZE_MAX : total, budget);
    const std::size_t T = ctx.tuple_count(n);
    std::vector<const std::vector<elem>*> dom(T);
    for (std::size_t t = 0; t < T; ++t) dom[t] = &ctx.units(ctx.corner_cache(n, t)).elements;
    std::vector<std::size_t> idx(T, 0);
    std::vector<elem> vals(T);
    for (std::size_t t = 0; t < T; ++t) vals[t] = (*dom[t])[0];
    for (;;) {
        visit(vals);
        std::size_t p = T;
        while (p > 0 && idx[p - 1] + 1 == dom[p - 1]->size()) --p;
        if (p == 0) return;
        ++idx[p - 1];
        vals[p - 1] = (*dom[p - 1])[idx[p - 1]];
        for (std::size_t q = p; q < T; ++q) {
            idx[q] = 0;
            vals[q] = (*dom[q])[0];
        }
    }
}

}  // namespace detail

/// Z^n by backtracking over tuple values in lexicographic order; each cocycle
/// constraint is checked as soon as all of its inputs are assigned. `budget`
/// bounds the number of search nodes.
inline std::vector<Cochain> enumerate_cocycles(const CochainContext& ctx, std::size_t n,
                                               std::size_t budget = default_enumeration_budget) {
    const std::size_t m = ctx.group_order();
    const std::size_t T = ctx.tuple_count(n);
    const std::size_t S = ctx.tuple_count(n + 1);
    const auto& G = ctx.action().group();
    // constraints bucketed by the largest tuple index they read
    std::vector<std::vector<std::size_t>> bucket(T);
    for (std::size_t s = 0; s < S; ++s) {
        const auto t = tuple_of(s, n + 1, m);
        std::size_t last = 0;
        if (n == 0) {
            last = 0;
        } else {
            std::vector<gelem> tail(t.begin() + 1, t.end());
            last = std::max(last, index_of(tail, m));
            std::vector<gelem> head(t.begin(), t.end() - 1);
            last = std::max(last, index_of(head, m));
            std::vector<gelem> merged(n);
            for (std::size_t i = 1; i <= n; ++i) {
                for (std::size_t j = 0, k = 0; j <= n; ++j) {
                    if (j == i) continue;
                    merged[k++] = (j == i - 1) ? G.mul(t[i - 1], t[i]) : t[j];
                }
                last = std::max(last, index_of(merged, m));
            }
        }
        bucket[last].push_back(s);
    }
    std::vector<const std::vector<elem>*> dom(T);
    for (std::size_t t = 0; t < T; ++t) dom[t] = &ctx.units(ctx.corner_cache(n, t)).elements;
    std::vector<elem> vals(T, 0);
    std::vector<Cochain> out;
    std::size_t nodes = 0;
    // iterative depth-first search
    std::vector<std::size_t> choice(T, 0);
    std::size_t depth = 0;
    bool descending = true;
    while (true) {
        if (descending) {
            if (depth == T) {
                out.push_back(Cochain{n, vals});
                descending = false;
                if (depth == 0) break;
                --depth;
                ++choice[depth];
                continue;
            }
            choice[depth] = 0;
        }
        bool placed = false;
        while (choice[depth] < dom[depth]->size()) {
            if (++nodes > budget) throw budget_exceeded("enumeration", nodes, budget);
            vals[depth] = (*dom[depth])[choice[depth]];
            bool ok = true;
            for (std::size_t s : bucket[depth])
                if (ctx.coboundary_at(n, vals, s) != ctx.corner_cache(n + 1, s)) {
                    ok = false;
                    break;
                }
            if (ok) {
                placed = true;
                break;
            }
            ++choice[depth];
        }
        if (placed) {
            ++depth;
            descending = true;
            continue;
        }
        if (depth == 0) break;
        --depth;
        ++choice[depth];
        descending = false;
    }
    return out;
}

/// B^n = delta^{n-1}(C^{n-1}) by enumerating C^{n-1}; ascending.
inline std::vector<Cochain> enumerate_coboundaries(const CochainContext& ctx, std::size_t n,
                                                   std::size_t budget = default_enumeration_budget) {
    if (n == 0) return {ctx.identity(0)};
    std::unordered_set<Cochain> seen;
    const std::size_t S = ctx.tuple_count(n);
    detail::for_each_cochain(ctx, n - 1, budget, [&](const std::vector<elem>& vals) {
        Cochain c{n, std::vector<elem>(S)};
        for (std::size_t s = 0; s < S; ++s) c.values[s] = ctx.coboundary_at(n - 1, vals, s);
        seen.insert(std::move(c));
    });
    std::vector<Cochain> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

// Lexicographically least representative of each coset of B in Z, and the
// structure of Z / B with those representatives as elements.
inline void fill_quotient(const CochainContext& ctx, const std::vector<Cochain>& z, const std::vector<Cochain>& b,
                          CohomologyGroup& out) {
    std::unordered_map<Cochain, std::size_t> rep_of;
    for (const auto& c : z) {
        if (rep_of.count(c)) continue;
        const std::size_t r = out.representatives.size();
        out.representatives.push_back(c);
        for (const auto& x : b) rep_of.emplace(ctx.multiply(c, x), r);
    }
    if (rep_of.size() != z.size()) throw defect("cosets of B^n do not partition Z^n");
    auto reps = out.representatives;
    const auto& rs = out.representatives;
    AbelianStructure<Cochain> q(
        reps, [&ctx, &rep_of, &rs](const Cochain& x, const Cochain& y) { return rs.at(rep_of.at(ctx.multiply(x, y))); },
        rs.front());
    out.h_structure = q.presentation();
}

}  // namespace detail

inline CohomologyGroup cohomology_enumerate(const CochainContext& ctx, std::size_t n,
                                            std::size_t budget = default_enumeration_budget) {
    if (n > 3) throw error("cohomology supported for n <= 3");
    CohomologyGroup out;
    out.n = n;
    out.engine = "enumerate";
    out.c_order = ctx.cochain_count(n);
    const auto z = enumerate_cocycles(ctx, n, budget);
    const auto b = enumerate_coboundaries(ctx, n, budget);
    for (const auto& x : b)
        if (!std::binary_search(z.begin(), z.end(), x)) throw defect("coboundary that is not a cocycle");
    out.z_order = z.size();
    out.b_order = b.size();
    if (out.z_order % out.b_order != 0) throw defect("|B^n| does not divide |Z^n|");
    out.h_order = out.z_order / out.b_order;
    detail::fill_quotient(ctx, z, b, out);
    return out;
}

// ---------------------------------------------------------------------------
// Structure engine

/// C^n as the direct sum of its corner unit groups, in invariant-factor coordinates.
class CochainPresentation {
public:
    CochainPresentation(const CochainContext& ctx, std::size_t n) : ctx_(ctx), n_(n) {
        const std::size_t T = ctx.tuple_count(n);
        for (std::size_t t = 0; t < T; ++t) {
            const elem e = ctx.corner_cache(n, t);
            const auto& st = ctx.unit_structure(e);
            offset_.push_back(factors_.size());
            for (std::size_t j = 0; j < st.factors().size(); ++j) {
                factors_.push_back(st.factors()[j]);
                gens_.emplace_back(t, st.generators()[j]);
            }
        }
        offset_.push_back(factors_.size());
    }

    const std::vector<std::int64_t>& factors() const noexcept { return factors_; }
    std::size_t rank() const noexcept { return factors_.size(); }

    Coords coords(const Cochain& f) const {
        Coords c;
        c.reserve(factors_.size());
        for (std::size_t t = 0; t + 1 < offset_.size(); ++t) {
            const auto& d = ctx_.unit_structure(ctx_.corner_cache(n_, t)).dlog(f.values[t]);
            c.insert(c.end(), d.begin(), d.end());
        }
        return c;
    }

    Cochain cochain(const Coords& c) const {
        Cochain f = ctx_.identity(n_);
        for (std::size_t t = 0; t + 1 < offset_.size(); ++t) {
            const auto& st = ctx_.unit_structure(ctx_.corner_cache(n_, t));
            Coords part(c.begin() + static_cast<std::ptrdiff_t>(offset_[t]),
                        c.begin() + static_cast<std::ptrdiff_t>(offset_[t + 1]));
            f.values[t] = st.element(part);
        }
        return f;
    }

    /// The cochain equal to I except for generator j's value at its tuple.
    Cochain generator(std::size_t j) const {
        Cochain f = ctx_.identity(n_);
        f.values[gens_[j].first] = gens_[j].second;
        return f;
    }

private:
    const CochainContext& ctx_;
    std::size_t n_;
    std::vector<std::int64_t> factors_;
    std::vector<std::pair<std::size_t, elem>> gens_;
    std::vector<std::size_t> offset_;
};

/// Images of the generators of C^n under delta^n, in C^{n+1} coordinates.
inline std::vector<Coords> coboundary_matrix(const CochainContext& ctx, const CochainPresentation& src,
                                             const CochainPresentation& dst) {
    std::vector<Coords> images;
    for (std::size_t j = 0; j < src.rank(); ++j) images.push_back(dst.coords(ctx.coboundary(src.generator(j))));
    return images;
}

namespace detail {

// every element of the subgroup generated by `gens`, by closure
inline std::vector<Cochain> span(const CochainContext& ctx, std::size_t n, const std::vector<Cochain>& gens,
                                 std::size_t budget) {
    std::unordered_set<Cochain> seen{ctx.identity(n)};
    std::vector<Cochain> order{ctx.identity(n)};
    for (std::size_t i = 0; i < order.size(); ++i)
        for (const auto& g : gens) {
            Cochain y = ctx.multiply(order[i], g);
            if (seen.insert(y).second) {
                if (order.size() >= budget) throw budget_exceeded("coset enumeration", order.size() + 1, budget);
                order.push_back(std::move(y));
            }
        }
    return order;
}

}  // namespace detail

inline CohomologyGroup cohomology_structure(const CochainContext& ctx, std::size_t n,
                                            std::size_t budget = default_enumeration_budget,
                                            std::size_t max_reps = 4096) {
    if (n > 3) throw error("cohomology supported for n <= 3");
    CohomologyGroup out;
    out.n = n;
    out.engine = "structure";
    out.c_order = ctx.cochain_count(n);
    const CochainPresentation cn(ctx, n), cn1(ctx, n + 1);
    const auto images = coboundary_matrix(ctx, cn, cn1);
    const auto hz = hom_kernel_image(cn.factors(), cn1.factors(), images, 0);
    out.z_order = hz.kernel_order;
    std::vector<Coords> bgens;
    if (n == 0) {
        out.b_order = 1;
    } else {
        const CochainPresentation cprev(ctx, n - 1);
        const auto prev_images = coboundary_matrix(ctx, cprev, cn);
        out.b_order = hom_kernel_image(cprev.factors(), cn.factors(), prev_images, 0).image_order;
        bgens = prev_images;
    }
    if (out.z_order % out.b_order != 0) throw defect("|B^n| does not divide |Z^n|");
    out.h_order = out.z_order / out.b_order;
    const auto sq = subquotient(cn.factors(), hz.kernel_generators, bgens);
    if (sq.order != out.h_order) throw defect("subquotient order disagrees with |Z^n|/|B^n|");
    for (std::size_t j = 0; j < sq.generators.size(); ++j) {
        out.h_structure.generators.push_back(cn.cochain(sq.generators[j]));
        out.h_structure.invariant_factors.push_back(sq.invariant_factors[j]);
    }

    // representatives: every combination of H generators, minimised over B^n when B^n is small
    if (out.h_order > max_reps) {
        out.representatives_complete = false;
        out.representatives_minimal = false;
        return out;
    }
    std::vector<Cochain> reps;
    const std::size_t h = sq.generators.size();
    Coords digit(h, 0);
    for (std::uint64_t code = 0; code < out.h_order; ++code) {
        std::uint64_t c = code;
        Coords x(cn.rank(), 0);
        for (std::size_t j = h; j-- > 0;) {
            digit[j] = static_cast<std::int64_t>(c % static_cast<std::uint64_t>(sq.invariant_factors[j]));
            c /= static_cast<std::uint64_t>(sq.invariant_factors[j]);
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += digit[j] * sq.generators[j][i];
        }
        for (std::size_t i = 0; i < x.size(); ++i) x[i] %= cn.factors()[i];
        reps.push_back(cn.cochain(x));
    }
    if (out.b_order <= budget) {
        std::vector<Cochain> bcochains;
        for (const auto& g : bgens) bcochains.push_back(cn.cochain(g));
        const auto bset = detail::span(ctx, n, bcochains, budget);
        for (auto& r : reps) {
            Cochain best = r;
            for (const auto& x : bset) best = std::min(best, ctx.multiply(r, x));
            r = std::move(best);
        }
    } else {
        out.representatives_minimal = false;
    }
    std::sort(reps.begin(), reps.end());
    out.representatives = std::move(reps);
    return out;
}

struct CohomologyOptions {
    Engine engine = Engine::automatic;
    std::size_t budget = default_enumeration_budget;
};

/// Engine disagreement; carries both results.
class engine_mismatch : public defect {
public:
    engine_mismatch(CohomologyGroup e, CohomologyGroup s)
        : defect("enumeration and structure engines disagree on H^" + std::to_string(e.n)),
          enumerated(std::move(e)), structured(std::move(s)) {}
    CohomologyGroup enumerated, structured;
};

inline CohomologyGroup cohomology_group(const CochainContext& ctx, std::size_t n, const CohomologyOptions& opt = {}) {
    Engine e = opt.engine;
    if (e == Engine::automatic) e = n >= 2 ? Engine::structure : Engine::enumerate;
    switch (e) {
        case Engine::enumerate: return cohomology_enumerate(ctx, n, opt.budget);
        case Engine::structure: return cohomology_structure(ctx, n, opt.budget);
        default: break;
    }
    auto en = cohomology_enumerate(ctx, n, opt.budget);
    auto st = cohomology_structure(ctx, n, opt.budget);
    const bool same = en.z_order == st.z_order && en.b_order == st.b_order && en.h_order == st.h_order &&
                      en.h_structure.invariant_factors == st.h_structure.invariant_factors &&
                      (!st.representatives_minimal || en.representatives == st.representatives);
    if (!same) throw engine_mismatch(std::move(en), std::move(st));
    en.engine = "both";
    return en;
}

inline CohomologyGroup cohomology_group(const PartialAction& a, std::size_t n, const CohomologyOptions& opt = {}) {
    return cohomology_group(CochainContext(a), n, opt);
}

// ---------------------------------------------------------------------------

/// Some eps in C^{n-1} with f = f' * delta^{n-1}(eps), searched exhaustively in
/// lexicographic order (the identity cochain is tried first); nullopt is conclusive.
inline std::optional<Cochain> cohomologous(const CochainContext& ctx, const Cochain& f, const Cochain& fp,
                                           std::size_t budget = default_enumeration_budget) {
    if (f.arity != fp.arity || f.arity < 1 || f.arity > 2) throw error("cohomologous: arity must be 1 or 2 for both");
    ctx.check(f);
    ctx.check(fp);
    const std::size_t n = f.arity;
    const Cochain id = ctx.identity(n - 1);
    if (ctx.multiply(fp, ctx.coboundary(id)) == f) return id;
    std::optional<Cochain> found;
    const std::size_t S = ctx.tuple_count(n);
    struct stop {};
    try {
        detail::for_each_cochain(ctx, n - 1, budget, [&](const std::vector<elem>& vals) {
            for (std::size_t s = 0; s < S; ++s)
                if (ctx.action().ring().mul(fp.values[s], ctx.coboundary_at(n - 1, vals, s)) != f.values[s]) return;
            found = Cochain{n - 1, vals};
            throw stop{};
        });
    } catch (const stop&) {
    }
    return found;
}


/// First (n+1)-tuple index where delta^n f differs from the identity cochain.
inline std::optional<std::size_t> cocycle_violation(const CochainContext& ctx, const Cochain& f) {
    ctx.check(f);
    for (std::size_t s = 0; s < ctx.tuple_count(f.arity + 1); ++s)
        if (ctx.coboundary_at(f.arity, f.values, s) != ctx.corner_cache(f.arity + 1, s)) return s;
    return std::nullopt;
}

inline bool is_cocycle(const CochainContext& ctx, const Cochain& f) { return !cocycle_violation(ctx, f); }

/// f(1, g) = f(g, 1) = 1_g for every g.
inline bool is_normalized(const CochainContext& ctx, const Cochain& f) {
    const auto& G = ctx.action().group();
    const std::size_t m = ctx.group_order();
    for (gelem g = 0; g < m; ++g) {
        const elem og = ctx.action().one_g(g);
        if (f.values[index_of(std::vector<gelem>{G.identity(), g}, m)] != og) return false;
        if (f.values[index_of(std::vector<gelem>{g, G.identity()}, m)] != og) return false;
    }
    return true;
}

struct Normalization {
    Cochain normalized;
    Cochain witness;  // f = normalized * delta^1(witness)
    bool closed_form = true;
};

/// Normalized 2-cocycle cohomologous to f. The candidate eps(g) = f(g, 1) is
/// tried first; an exhaustive search over C^1 is the fallback.
inline Normalization normalize_2cocycle(const CochainContext& ctx, const Cochain& f,
                                        std::size_t budget = default_enumeration_budget) {
    if (f.arity != 2) throw error("normalize_2cocycle needs a 2-cochain");
    if (auto v = cocycle_violation(ctx, f)) throw error("not a 2-cocycle (violated at tuple " + std::to_string(*v) + ")");
    if (is_normalized(ctx, f)) return {f, ctx.identity(1), true};
    const std::size_t m = ctx.group_order();
    const gelem one = ctx.action().group().identity();
    Cochain eps = ctx.identity(1);
    for (gelem g = 0; g < m; ++g)
        eps.values[g] = ctx.action().ring().mul(f.values[index_of(std::vector<gelem>{g, one}, m)], eps.values[g]);
    auto attempt = [&](const Cochain& e) -> std::optional<Normalization> {
        Cochain ft = ctx.multiply(f, ctx.invert(ctx.coboundary(e)));
        if (is_normalized(ctx, ft) && ctx.multiply(ft, ctx.coboundary(e)) == f) return Normalization{ft, e, true};
        return std::nullopt;
    };
    if (auto r = attempt(eps)) return *r;
    std::optional<Normalization> found;
    struct stop {};
    try {
        detail::for_each_cochain(ctx, 1, budget, [&](const std::vector<elem>& vals) {
            if (auto r = attempt(Cochain{1, vals})) {
                found = r;
                throw stop{};
            }
        });
    } catch (const stop&) {
    }
    if (!found) throw defect("no normalizing witness for a 2-cocycle");
    found->closed_form = false;
    return *found;
}

/// Every 1-cocycle satisfies f(1) = 1; returned unchanged after the check.
inline Cochain normalize_1cocycle(const CochainContext& ctx, const Cochain& f) {
    if (f.arity != 1) throw error("normalize_1cocycle needs a 1-cochain");
    if (auto v = cocycle_violation(ctx, f)) throw error("not a 1-cocycle (violated at tuple " + std::to_string(*v) + ")");
    if (f.values[ctx.action().group().identity()] != ctx.action().ring().one()) throw defect("1-cocycle with f(1) != 1");
    return f;
}

}  // namespace pgal

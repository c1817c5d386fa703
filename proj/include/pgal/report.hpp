#pragma once

// Command reports: one human-readable text block and one JSON document per run,
// both built from the same data and ordered deterministically.

#include "pgal/cohomology.hpp"
#include "pgal/config.hpp"
#include "pgal/crossed.hpp"
#include "pgal/error.hpp"
#include "pgal/galois.hpp"
#include "pgal/partial_action.hpp"
#include "pgal/picsemi.hpp"
#include "pgal/sequence.hpp"

#include <json.hpp>

#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace pgal {

using Json = nlohmann::ordered_json;

inline constexpr const char* report_version = "1";

inline std::string element_label(const FiniteRing& R, elem x) {
    const auto& t = R.tag();
    if (t.kind == RingKind::corner) return element_label(*t.ambient, t.corner_members[x]);
    if (t.kind == RingKind::product) {
        const auto parts = R.split(x);
        std::string s = "(";
        for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + element_label(*t.components[i], parts[i]);
        return s + ")";
    }
    return std::to_string(x);
}

struct RunOptions {
    std::string command;
    std::size_t n = 1;
    std::string twist = "identity";
    Engine engine = Engine::automatic;
    std::size_t budget = default_enumeration_budget;
};

struct RunResult {
    int status = 0;  // 0 clean, 1 defect or violation, 3 budget exceeded
    std::string text;
    Json doc;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"validate", "invariants", "galois", "cohomology", "crossed",
                                            "delta-theta", "pics", "sequence", "census"};
    return c;
}

namespace detail {

class Text {
public:
    void head(const std::string& s) { os_ << "== " << s << " ==\n"; }
    void kv(const std::string& k, const std::string& v) { os_ << k << ": " << v << '\n'; }
    void line(const std::string& s) { os_ << s << '\n'; }
    void table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
        std::vector<std::size_t> w(header.size());
        for (std::size_t i = 0; i < header.size(); ++i) w[i] = header[i].size();
        for (const auto& r : rows)
            for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
        auto emit = [&](const std::vector<std::string>& r) {
            std::string s;
            for (std::size_t i = 0; i < r.size(); ++i) {
                s += r[i];
                if (i + 1 < r.size()) s += std::string(w[i] - r[i].size() + 2, ' ');
            }
            os_ << s << '\n';
        };
        emit(header);
        std::vector<std::string> rule;
        for (auto x : w) rule.push_back(std::string(x, '-'));
        emit(rule);
        for (const auto& r : rows) emit(r);
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
};

inline std::string yes(bool b) { return b ? "yes" : "no"; }

inline std::string tuple_label(const FiniteGroup& G, std::size_t t, std::size_t n) {
    if (n == 0) return "()";
    std::string s = "(";
    const auto tup = tuple_of(t, n, G.order());
    for (std::size_t i = 0; i < n; ++i) s += (i ? "," : "") + G.label(tup[i]);
    return s + ")";
}

inline Json cochain_json(const PartialAction& a, const Cochain& f) {
    Json j = Json::object();
    for (std::size_t t = 0; t < f.values.size(); ++t)
        j[tuple_label(a.group(), t, f.arity)] = element_label(a.ring(), f.values[t]);
    return j;
}

inline std::string cochain_text(const PartialAction& a, const Cochain& f) {
    std::string s;
    for (std::size_t t = 0; t < f.values.size(); ++t)
        s += (t ? "  " : "") + tuple_label(a.group(), t, f.arity) + "->" + element_label(a.ring(), f.values[t]);
    return s;
}

inline Json instance_json(const Instance& inst) {
    Json j;
    j["name"] = inst.name;
    j["ring"] = {{"description", inst.data.ring->describe()}, {"order", inst.data.ring->order()}};
    j["group"] = {{"name", inst.data.group->name()}, {"order", inst.data.group->order()}};
    if (inst.global && inst.restriction)
        j["restriction"] = element_label(*inst.global->ring, *inst.restriction);
    return j;
}

inline void run_validate(const Instance& inst, const RunOptions&, RunResult& out, Text& t) {
    const auto rep = validate(inst.data);
    Json v = Json::array();
    for (const auto& x : rep.violations)
        v.push_back({{"axiom", x.axiom}, {"g", x.g}, {"h", x.h}, {"s", x.s}, {"detail", x.detail}});
    out.doc["valid"] = rep.ok();
    out.doc["violations"] = v;
    t.kv("valid", yes(rep.ok()));
    for (const auto& x : rep.violations) t.line("violation: " + x.axiom + " [g=" + std::to_string(x.g) +
                                                ", h=" + std::to_string(x.h) + ", s=" + std::to_string(x.s) +
                                                "] " + x.detail);
    if (!rep.ok()) {
        out.status = 1;
        return;
    }
    const auto a = inst.action();
    const auto o = orbit_report(a);
    Json d = Json::array();
    std::vector<std::vector<std::string>> rows;
    for (gelem g = 0; g < a.group_order(); ++g) {
        Json dyn = Json::array();
        std::string ds;
        for (auto [e, f] : o.dynamics[g]) {
            dyn.push_back({element_label(a.ring(), e), element_label(a.ring(), f)});
            ds += (ds.empty() ? "" : " ") + element_label(a.ring(), e) + "->" + element_label(a.ring(), f);
        }
        d.push_back({{"g", a.group().label(g)},
                     {"one_g", element_label(a.ring(), a.one_g(g))},
                     {"domain_size", o.domain_sizes[g]},
                     {"idempotents_below", o.below_count[g]},
                     {"idempotent_dynamics", dyn}});
        rows.push_back({a.group().label(g), element_label(a.ring(), a.one_g(g)), std::to_string(o.domain_sizes[g]),
                        std::to_string(o.below_count[g]), ds});
    }
    out.doc["domains"] = d;
    t.table({"g", "1_g", "|D_g|", "#E below", "alpha_g on idempotents"}, rows);
}

inline void run_invariants(const Instance& inst, const RunOptions&, RunResult& out, Text& t) {
    const auto a = inst.action();
    const auto inv = invariant_subring(a);
    Json m = Json::array();
    std::string ms;
    for (elem x : inv.members) {
        m.push_back(element_label(a.ring(), x));
        ms += (ms.empty() ? "" : " ") + element_label(a.ring(), x);
    }
    out.doc["order"] = inv.size();
    out.doc["is_field"] = inv.is_field();
    out.doc["members"] = m;
    t.kv("|R^alpha|", std::to_string(inv.size()));
    t.kv("field", yes(inv.is_field()));
    t.kv("members", ms);
}

inline void run_galois(const Instance& inst, const RunOptions& opt, RunResult& out, Text& t) {
    const auto a = inst.action();
    SearchOptions so;
    so.budget = opt.budget;
    const auto s = find_certificate(a, so);
    const std::string verdict = s.found() ? "Galois" : (s.conclusive ? "not Galois" : "unknown");
    out.doc["verdict"] = verdict;
    out.doc["result"] = s.found() ? "Found" : (s.conclusive ? "NotFound-conclusive" : "NotFound-inconclusive");
    out.doc["route"] = to_string(s.route);
    t.kv("verdict", verdict);
    t.kv("result", out.doc["result"].get<std::string>());
    t.kv("route", to_string(s.route));
    if (!s.note.empty()) {
        out.doc["note"] = s.note;
        t.kv("note", s.note);
    }
    if (s.found()) {
        Json pairs = Json::array();
        for (auto [x, y] : s.certificate->pairs) {
            pairs.push_back({element_label(a.ring(), x), element_label(a.ring(), y)});
            t.line("  x = " + element_label(a.ring(), x) + ", y = " + element_label(a.ring(), y));
        }
        out.doc["certificate"] = pairs;
        const auto chk = verify_certificate(a, *s.certificate);
        out.doc["certificate_verified"] = chk.ok;
        t.kv("certificate verified", yes(chk.ok));
        if (!chk.ok) out.status = 1;
        const auto rr = regular_representation(a);
        out.doc["regular_representation"] = {{"injective", rr.injective},
                                             {"bijective", rr.bijective},
                                             {"skew_group_ring_order", rr.domain_order},
                                             {"endomorphism_order", rr.endomorphism_order},
                                             {"verdict", rr.verdict}};
        t.kv("regular representation", rr.verdict + " (injective " + yes(rr.injective) + ", bijective " +
                                           yes(rr.bijective) + ")");
        if (!rr.bijective) out.status = 1;
    }
}

inline void run_cohomology(const Instance& inst, const RunOptions& opt, RunResult& out, Text& t) {
    const auto a = inst.action();
    const CochainContext ctx(a);
    const auto h = cohomology_group(ctx, opt.n, {opt.engine, opt.budget});
    out.doc["n"] = h.n;
    out.doc["engine"] = h.engine;
    out.doc["cochain_order"] = h.c_order;
    out.doc["z_order"] = h.z_order;
    out.doc["b_order"] = h.b_order;
    out.doc["h_order"] = h.h_order;
    out.doc["invariant_factors"] = h.h_structure.invariant_factors;
    out.doc["representatives_minimal"] = h.representatives_minimal;
    out.doc["representatives_complete"] = h.representatives_complete;
    Json reps = Json::array();
    for (const auto& r : h.representatives) reps.push_back(cochain_json(a, r));
    out.doc["representatives"] = reps;
    t.kv("n", std::to_string(h.n));
    t.kv("engine", h.engine);
    t.kv("|C^n|", h.c_order == UINT64_MAX ? ">= 2^64" : std::to_string(h.c_order));
    t.kv("|Z^n|", std::to_string(h.z_order));
    t.kv("|B^n|", std::to_string(h.b_order));
    t.kv("|H^n|", std::to_string(h.h_order));
    std::string f;
    for (auto d : h.h_structure.invariant_factors) f += (f.empty() ? "Z/" : " x Z/") + std::to_string(d);
    t.kv("H^n structure", f.empty() ? "trivial" : f);
    for (std::size_t i = 0; i < h.representatives.size() && i < 16; ++i)
        t.line("  rep " + std::to_string(i) + ": " + cochain_text(a, h.representatives[i]));
    if (h.representatives.size() > 16) t.line("  ... " + std::to_string(h.representatives.size() - 16) + " more");
}

// identity | coboundary:SEED | values:v0,v1,... (one value per pair (g,h), lexicographic)
inline Cochain parse_twist(const CochainContext& ctx, const std::string& spec, std::optional<Cochain>& eps0) {
    if (spec == "identity") return ctx.identity(2);
    if (spec.rfind("coboundary:", 0) == 0) {
        std::mt19937_64 rng(std::stoull(spec.substr(11)));
        Cochain e = ctx.identity(1);
        for (std::size_t g = 0; g < e.values.size(); ++g) {
            const auto& u = ctx.units(ctx.corner_cache(1, g)).elements;
            e.values[g] = u[rng() % u.size()];
        }
        eps0 = e;
        return ctx.coboundary(e);
    }
    if (spec.rfind("values:", 0) == 0) {
        Cochain f{2, {}};
        std::stringstream ss(spec.substr(7));
        std::string tok;
        while (std::getline(ss, tok, ',')) f.values.push_back(static_cast<elem>(std::stoul(tok)));
        ctx.check(f);
        return f;
    }
    throw error("twist must be identity, coboundary:SEED or values:v0,v1,...");
}

inline void run_crossed(const Instance& inst, const RunOptions& opt, RunResult& out, Text& t) {
    const auto a = inst.action();
    const CochainContext ctx(a);
    std::optional<Cochain> eps0;
    const Cochain f = parse_twist(ctx, opt.twist, eps0);
    out.doc["twist"] = cochain_json(a, f);
    t.kv("twist", cochain_text(a, f));
    if (auto v = cocycle_violation(ctx, f)) {
        const auto tr = tuple_of(*v, 3, a.group_order());
        out.doc["cocycle_violation"] = {tr[0], tr[1], tr[2]};
        t.kv("2-cocycle", "no, fails at (g,h,l) = " + tuple_label(a.group(), *v, 3));
        out.status = 1;
        return;
    }
    const auto alg = crossed_product(a, f);
    const auto assoc = alg.check_associativity();
    const auto norm = normalize_2cocycle(ctx, f, opt.budget);
    out.doc["order"] = alg.order();
    out.doc["basis_size"] = alg.basis().size();
    out.doc["associative"] = assoc.ok;
    out.doc["associativity_triples"] = assoc.triples;
    out.doc["associativity_sampled"] = assoc.sampled;
    out.doc["unity"] = element_label(a.ring(), alg.unity()[a.group().identity()]);
    out.doc["normalized"] = cochain_json(a, norm.normalized);
    out.doc["normalizing_witness"] = cochain_json(a, norm.witness);
    t.kv("order", std::to_string(alg.order()));
    t.kv("basis size", std::to_string(alg.basis().size()));
    t.kv("associative", yes(assoc.ok) + " (" + std::to_string(assoc.triples) + " basis triples" +
                            (assoc.sampled ? ", sampled)" : ")"));
    t.kv("unity", element_label(a.ring(), alg.unity()[a.group().identity()]) + " delta_1");
    t.kv("normalized twist", cochain_text(a, norm.normalized));
    if (auto w = cohomologous(ctx, f, ctx.identity(2), opt.budget)) {
        const auto id = crossed_product(a, ctx.identity(2));
        const auto rep = coiso_map(alg, id, *w).verify();
        out.doc["isomorphic_to_skew_group_ring"] = rep.ok();
        out.doc["coiso_witness"] = cochain_json(a, *w);
        t.kv("isomorphic to skew group ring", yes(rep.ok()) + " via eps = " + cochain_text(a, *w));
        if (!rep.ok()) out.status = 1;
    } else {
        out.doc["isomorphic_to_skew_group_ring"] = nullptr;
        t.kv("isomorphic to skew group ring", "twist not cohomologous to identity");
    }
    if (!assoc.ok) out.status = 1;
    std::istringstream sc(alg.structure_constants());
    Json lines = Json::array();
    for (std::string l; std::getline(sc, l);) lines.push_back(l);
    out.doc["structure_constants"] = lines;
}

inline void run_delta_theta(const Instance& inst, const RunOptions&, RunResult& out, Text& t) {
    const auto a = inst.action();
    const auto ft = theta_factor_set(a);
    const auto fv = ft.violations();
    const auto theta = delta_theta(a);
    const auto skew = skew_group_ring(a);
    const auto kr = kappa_iso(theta, skew).verify();
    const auto pr = partial_representation_violations(skew);
    out.doc["factor_set_violations"] = fv;
    out.doc["order"] = theta.order();
    out.doc["kappa"] = {{"bijective", kr.bijective}, {"multiplicative", kr.multiplicative},
                        {"pairs_checked", kr.pairs_checked}};
    out.doc["partial_representation_violations"] = pr;
    t.kv("f^Theta factor set", fv.empty() ? "ok" : fv.front());
    t.kv("|Delta(Theta)|", std::to_string(theta.order()));
    t.kv("kappa: Delta(Theta) -> R *_alpha G", kr.ok() ? "isomorphism (" + std::to_string(kr.pairs_checked) +
                                                              " basis pairs)"
                                                        : "FAILED at " + kr.witness);
    t.kv("partial representation laws", pr.empty() ? "ok" : pr.front());
    if (!fv.empty() || !kr.ok() || !pr.empty()) out.status = 1;
    if (find_certificate(a).found()) {
        const auto br = delta_theta_brauer_class(a);
        out.doc["matrix_ring"] = br.matrix_ring;
        out.doc["verdict"] = br.verdict;
        out.doc["endomorphism_order"] = br.endomorphism_order;
        t.kv("Delta(Theta) ~ End_{R^alpha}(R)", br.verdict);
        if (!br.matrix_ring) out.status = 1;
    } else {
        out.doc["verdict"] = nullptr;
        t.kv("Delta(Theta) ~ End_{R^alpha}(R)", "not checked (no Galois certificate)");
    }
}

inline void run_pics(const Instance& inst, const RunOptions&, RunResult& out, Text& t) {
    const auto a = inst.action();
    const auto s = star_action(a);
    const auto& R = a.ring();
    Json classes = Json::array();
    std::string cs;
    for (elem e : s.monoid().classes) {
        classes.push_back(element_label(R, e));
        cs += (cs.empty() ? "" : " ") + element_label(R, e);
    }
    out.doc["classes"] = classes;
    t.kv("PicS_R(R) = E(R)", cs);
    Json star = Json::array();
    for (gelem g = 0; g < a.group_order(); ++g) {
        Json m = Json::object();
        std::string ms;
        for (auto [e, f] : s.table(g)) {
            m[element_label(R, e)] = element_label(R, f);
            ms += (ms.empty() ? "" : " ") + element_label(R, e) + "->" + element_label(R, f);
        }
        star.push_back({{"g", a.group().label(g)}, {"map", m}});
        t.kv("alpha*_" + a.group().label(g), ms);
    }
    out.doc["star"] = star;
    const auto v = s.violations();
    const auto am = s.annihilator_mismatches();
    const auto z = z1_pics(s);
    out.doc["axiom_violations"] = v;
    out.doc["annihilator_mismatches"] = am;
    out.doc["z1_order"] = z.cocycles.size();
    out.doc["z1_only_identity"] = z.only_identity;
    t.kv("partial action axioms", v.empty() ? "ok" : v.front());
    t.kv("annihilator cross-check", am.empty() ? "ok" : am.front());
    t.kv("|Z^1(G,alpha*,PicS_R(R))|", std::to_string(z.cocycles.size()) + (z.only_identity ? " (g -> 1_g)" : ""));
    t.line("note: PicS_R(R) is realised as E(R); every rank <= 1 projective over a finite ring is Re");
    if (!v.empty() || !am.empty() || !z.only_identity) out.status = 1;
}

inline void run_sequence(const Instance& inst, const RunOptions& opt, RunResult& out, Text& t) {
    const auto a = inst.action();
    const auto rep = consequence_check(a, {opt.engine, opt.budget});
    Json terms = Json::array();
    std::vector<std::vector<std::string>> rows;
    for (const auto& e : rep.entries) {
        terms.push_back({{"term", e.name}, {"order", e.order}, {"method", e.method}, {"prediction", e.prediction},
                         {"verdict", e.verdict}});
        rows.push_back({e.name, e.order, e.prediction, e.verdict, e.method});
    }
    out.doc["terms"] = terms;
    out.doc["checks"] = rep.checks;
    out.doc["notes"] = rep.notes;
    out.doc["consistent"] = rep.consistent;
    t.table({"term", "order", "predicted", "verdict", "method"}, rows);
    for (const auto& c : rep.checks) t.line("check " + c);
    for (const auto& n : rep.notes) t.line("note: " + n);
    t.kv("consistent", yes(rep.consistent));
    if (!rep.consistent) out.status = 1;
}

inline void run_census(const Instance& inst, const RunOptions& opt, RunResult& out, Text& t) {
    if (!inst.global) throw error("census needs a global action (type = global)");
    const auto& S = *inst.global->ring;
    Json rows = Json::array();
    std::vector<std::vector<std::string>> trows;
    for (elem e : idempotents(S)) {
        if (e == S.zero()) continue;
        const auto a = restrict_global(*inst.global, e);
        const auto s = find_certificate(a);
        const std::string galois = s.found() ? "yes" : (s.conclusive ? "no" : "unknown");
        const CochainContext ctx(a);
        std::string h[2];
        for (std::size_t n = 1; n <= 2; ++n) {
            try {
                h[n - 1] = std::to_string(cohomology_group(ctx, n, {opt.engine, opt.budget}).h_order);
            } catch (const budget_exceeded&) {
                h[n - 1] = "budget";
            }
        }
        const auto inv = invariant_subring(a);
        rows.push_back({{"e", element_label(S, e)}, {"ring_order", a.ring().order()}, {"invariants_order", inv.size()},
                        {"galois", galois}, {"h1", h[0]}, {"h2", h[1]}});
        trows.push_back({element_label(S, e), std::to_string(a.ring().order()), std::to_string(inv.size()), galois,
                         h[0], h[1]});
    }
    out.doc["restrictions"] = rows;
    t.table({"e", "|R|", "|R^alpha|", "Galois", "|H^1|", "|H^2|"}, trows);
}

}  // namespace detail

/// Runs one command; never throws for library errors, which become statuses.
inline RunResult run(const Instance& inst, const RunOptions& opt) {
    RunResult out;
    detail::Text t;
    out.doc["version"] = report_version;
    out.doc["command"] = opt.command;
    out.doc["instance"] = detail::instance_json(inst);
    t.head(opt.command + ": " + inst.name);
    t.kv("ring", inst.data.ring->describe() + " (order " + std::to_string(inst.data.ring->order()) + ")");
    t.kv("group", inst.data.group->name());
    RunResult part;
    try {
        if (opt.command == "validate") detail::run_validate(inst, opt, part, t);
        else if (opt.command == "invariants") detail::run_invariants(inst, opt, part, t);
        else if (opt.command == "galois") detail::run_galois(inst, opt, part, t);
        else if (opt.command == "cohomology") detail::run_cohomology(inst, opt, part, t);
        else if (opt.command == "crossed") detail::run_crossed(inst, opt, part, t);
        else if (opt.command == "delta-theta") detail::run_delta_theta(inst, opt, part, t);
        else if (opt.command == "pics") detail::run_pics(inst, opt, part, t);
        else if (opt.command == "sequence") detail::run_sequence(inst, opt, part, t);
        else if (opt.command == "census") detail::run_census(inst, opt, part, t);
        else throw error("unknown command '" + opt.command + "'");
        out.status = part.status;
    } catch (const budget_exceeded& e) {
        part.doc["error"] = {{"kind", "budget"}, {"budget", e.budget_name()}, {"message", e.what()}};
        t.kv("error", e.what());
        out.status = 3;
    } catch (const invalid_action& e) {
        Json v = Json::array();
        for (const auto& x : e.report().violations) v.push_back({{"axiom", x.axiom}, {"detail", x.detail}});
        part.doc["error"] = {{"kind", "invalid action"}, {"violations", v}};
        t.kv("error", std::string("invalid action: ") + e.what());
        out.status = 1;
    } catch (const defect& e) {
        part.doc["error"] = {{"kind", "defect"}, {"message", e.what()}};
        t.kv("DEFECT", e.what());
        out.status = 1;
    } catch (const error& e) {
        part.doc["error"] = {{"kind", "error"}, {"message", e.what()}};
        t.kv("error", e.what());
        out.status = 1;
    }
    out.doc["result"] = part.doc;
    out.doc["status"] = out.status;
    t.kv("status", std::to_string(out.status));
    out.text = t.str();
    return out;
}

}  // namespace pgal

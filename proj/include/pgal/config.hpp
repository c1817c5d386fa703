#pragma once

// Instance files. Grammar (one `key = value` per line, `#` starts a comment):
//
//   [ring]
//   ring = F4^3                  # Z(n), F<q> for q in {2,3,4,5,7,8,9}, GF(p,[c0,...,ck]) (monic, low degree first),
//                                # products joined by " x ", and `^k` for k equal factors
//   [group]
//   group = C(3)                 # C(n) x C(m) x ...
//   [action]
//   type = global                # or: explicit
//   generator = perm(1,2,0)      # one line per cyclic factor; perm(p_0,...), frob(k), or both
//   restrict = (1,1,0)           # optional; component tuple or element index
//
//   type = explicit takes
//   one = 1 2 2                  # 1_g per group element, as element indices
//   alpha.<g> = 0 1 ...          # alpha_g on the ascending elements of D_{g^-1}

#include "pgal/error.hpp"
#include "pgal/finring.hpp"
#include "pgal/fixtures.hpp"
#include "pgal/groups.hpp"
#include "pgal/partial_action.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pgal {

class parse_error : public error {
public:
    parse_error(std::size_t line, std::size_t column, const std::string& msg)
        : error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_, column_;
};

/// A loaded instance: the action data (validated lazily so `validate` can report
/// violations) and, when known, the global action it was restricted from.
struct Instance {
    std::string name;
    ActionData data;
    std::optional<GlobalAction> global;
    std::optional<elem> restriction;  // ambient index of e when restricted

    PartialAction action() const { return PartialAction::make(data); }
};

inline Instance fixture_instance(const std::string& key) {
    const auto& info = fixture_info(key);
    Instance inst{info.id + " " + info.name, fixture(key).data(), std::nullopt, std::nullopt};
    if (info.id == "E0" || info.id == "E1") inst.global = global_shift(make_zmod(2), 3);
    if (info.id == "E2" || info.id == "E3") inst.global = global_shift(make_f4(), 3);
    if (inst.global && (info.id == "E1" || info.id == "E2")) inst.restriction = drop_last_factor(*inst.global->ring);
    return inst;
}

namespace detail {

struct Cursor {
    const std::string& s;
    std::size_t line;
    std::size_t base;  // column of s[0], 1-based
    std::size_t i = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(line, base + i, msg); }
    void skip() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eat(char c) {
        skip();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool eat_word(const std::string& w) {
        skip();
        if (s.compare(i, w.size(), w) == 0) {
            i += w.size();
            return true;
        }
        return false;
    }
    std::uint64_t number() {
        skip();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) fail("expected a number");
        std::uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + static_cast<std::uint64_t>(s[i++] - '0');
            if (v > 1'000'000'000) fail("number too large");
        }
        return v;
    }
    bool done() {
        skip();
        return i >= s.size();
    }
    std::vector<std::uint64_t> list(char open, char close) {
        expect(open);
        std::vector<std::uint64_t> out;
        if (eat(close)) return out;
        do out.push_back(number());
        while (eat(','));
        expect(close);
        return out;
    }
};

inline RingPtr parse_field_shortcut(Cursor& c) {
    const std::size_t at = c.i;
    const auto q = c.number();
    static const std::map<std::uint64_t, std::pair<std::uint32_t, std::vector<std::uint32_t>>> table{
        {2, {2, {}}}, {3, {3, {}}}, {5, {5, {}}}, {7, {7, {}}},
        {4, {2, {1, 1, 1}}}, {8, {2, {1, 1, 0, 1}}}, {9, {3, {1, 0, 1}}},
    };
    auto it = table.find(q);
    if (it == table.end()) {
        c.i = at;
        c.fail("no built-in field of order " + std::to_string(q));
    }
    if (it->second.second.empty()) return make_zmod(it->second.first);
    return make_gf(it->second.first, it->second.second);
}

inline RingPtr parse_factor(Cursor& c) {
    c.skip();
    const std::size_t at = c.i;
    try {
        if (c.eat_word("Z(")) {
            const auto n = c.number();
            c.expect(')');
            if (n < 2) c.fail("Z(n) needs n >= 2");
            return make_zmod(static_cast<std::uint32_t>(n));
        }
        if (c.eat_word("GF(")) {
            const auto p = c.number();
            c.expect(',');
            const auto co = c.list('[', ']');
            c.expect(')');
            std::vector<std::uint32_t> m(co.begin(), co.end());
            return make_gf(static_cast<std::uint32_t>(p), m);
        }
        if (c.eat_word("F")) return parse_field_shortcut(c);
    } catch (const parse_error&) {
        throw;
    } catch (const error& e) {
        c.i = at;
        c.fail(e.what());
    }
    c.fail("expected Z(n), F<q> or GF(p,[...])");
}

inline RingPtr parse_ring(const std::string& text, std::size_t line, std::size_t base) {
    Cursor c{text, line, base};
    std::vector<RingPtr> parts;
    do {
        RingPtr f = parse_factor(c);
        std::size_t k = 1;
        if (c.eat('^')) {
            k = c.number();
            if (k == 0 || k > 12) c.fail("exponent out of range");
        }
        for (std::size_t j = 0; j < k; ++j) parts.push_back(f);
    } while (c.eat('x'));
    if (!c.done()) c.fail("unexpected text after ring");
    if (parts.size() == 1) return parts.front();
    try {
        return make_product(parts);
    } catch (const error& e) {
        c.i = 0;
        c.fail(e.what());
    }
}

inline GroupPtr parse_group(const std::string& text, std::size_t line, std::size_t base) {
    Cursor c{text, line, base};
    std::vector<std::uint32_t> factors;
    do {
        if (!c.eat_word("C(")) c.fail("expected C(n)");
        const auto n = c.number();
        if (n < 1 || n > 64) c.fail("cyclic order out of range");
        c.expect(')');
        if (n > 1) factors.push_back(static_cast<std::uint32_t>(n));
    } while (c.eat('x'));
    if (!c.done()) c.fail("unexpected text after group");
    return make_cyclic_product(factors);
}

inline std::vector<elem> parse_generator(const RingPtr& ring, const std::string& text, std::size_t line,
                                         std::size_t base) {
    Cursor c{text, line, base};
    std::vector<std::size_t> perm;
    const std::size_t k = ring->tag().kind == RingKind::product ? ring->tag().components.size() : 1;
    for (std::size_t i = 0; i < k; ++i) perm.push_back(i);
    unsigned frob = 0;
    bool any = false;
    while (!c.done()) {
        const std::size_t at = c.i;
        auto fail_at = [&](const std::string& msg) {
            c.i = at;
            c.fail(msg);
        };
        if (c.eat_word("perm")) {
            const auto p = c.list('(', ')');
            if (p.size() != k) fail_at("perm needs one entry per ring factor");
            std::vector<char> seen(k, 0);
            for (std::size_t i = 0; i < k; ++i) {
                if (p[i] >= k || seen[p[i]]++) fail_at("perm is not a permutation");
                perm[i] = p[i];
            }
        } else if (c.eat_word("frob")) {
            const auto v = c.list('(', ')');
            if (v.size() != 1) fail_at("frob takes one exponent");
            frob = static_cast<unsigned>(v[0]);
        } else {
            c.fail("expected perm(...) or frob(k)");
        }
        any = true;
    }
    if (!any) c.fail("empty generator");
    if (k == 1) {
        if (ring->tag().kind != RingKind::galois_field && ring->tag().kind != RingKind::modular)
            c.fail("generators need a field or a product of equal rings");
        std::vector<elem> t(ring->order());
        for (elem x = 0; x < t.size(); ++x) t[x] = x;
        if (ring->tag().kind == RingKind::galois_field) {
            const auto f = frobenius(*ring);
            for (unsigned j = 0; j < frob; ++j)
                for (auto& v : t) v = f[v];
        }
        return t;
    }
    try {
        return product_automorphism(*ring, perm, frob);
    } catch (const error& e) {
        c.i = 0;
        c.fail(e.what());
    }
}

inline elem parse_element(const RingPtr& ring, const std::string& text, std::size_t line, std::size_t base) {
    Cursor c{text, line, base};
    c.skip();
    if (c.i < text.size() && text[c.i] == '(') {
        const auto t = c.list('(', ')');
        const auto& comps = ring->tag().components;
        if (ring->tag().kind != RingKind::product || t.size() != comps.size())
            c.fail("tuple needs one entry per ring factor");
        std::vector<elem> parts;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] >= comps[i]->order()) c.fail("tuple entry out of range");
            parts.push_back(static_cast<elem>(t[i]));
        }
        if (!c.done()) c.fail("unexpected text after element");
        return ring->join(parts);
    }
    const auto v = c.number();
    if (v >= ring->order()) c.fail("element index out of range");
    if (!c.done()) c.fail("unexpected text after element");
    return static_cast<elem>(v);
}

inline std::vector<elem> parse_indices(const RingPtr& ring, const std::string& text, std::size_t line,
                                       std::size_t base) {
    Cursor c{text, line, base};
    std::vector<elem> out;
    while (!c.done()) {
        const auto v = c.number();
        if (v >= ring->order()) c.fail("element index out of range");
        out.push_back(static_cast<elem>(v));
        c.eat(',');
    }
    return out;
}

}  // namespace detail

inline Instance parse_config(const std::string& text, const std::string& name = "config") {
    struct Entry {
        std::string value;
        std::size_t line, column;
        std::size_t key_column = 1;
    };
    std::map<std::string, std::map<std::string, Entry>> sections;
    std::vector<std::pair<std::string, Entry>> generators;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw.substr(0, raw.find('#'));
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(0, last + 1);
        if (line[first] == '[') {
            if (line.back() != ']') throw parse_error(lineno, last + 1, "expected ']'");
            section = line.substr(first + 1, line.size() - first - 2);
            if (section != "ring" && section != "group" && section != "action")
                throw parse_error(lineno, first + 2, "unknown section '" + section + "'");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw parse_error(lineno, first + 1, "expected key = value");
        if (section.empty()) throw parse_error(lineno, first + 1, "entry outside a section");
        std::string key = line.substr(first, eq - first);
        key = key.substr(0, key.find_last_not_of(" \t") + 1);
        const auto vstart = line.find_first_not_of(" \t", eq + 1);
        Entry e{vstart == std::string::npos ? "" : line.substr(vstart), lineno,
                (vstart == std::string::npos ? line.size() : vstart) + 1, first + 1};
        if (e.value.empty()) throw parse_error(lineno, eq + 2, "missing value");
        if (section == "action" && key == "generator") {
            generators.emplace_back(key, e);
            continue;
        }
        if (sections[section].count(key)) throw parse_error(lineno, first + 1, "duplicate key '" + key + "'");
        sections[section].emplace(key, e);
    }
    auto need = [&](const std::string& sec, const std::string& key) -> const Entry& {
        auto it = sections[sec].find(key);
        if (it == sections[sec].end()) throw parse_error(lineno + 1, 1, "missing " + key + " in [" + sec + "]");
        return it->second;
    };
    for (const auto& sec : {"ring", "group"})
        for (const auto& [key, e] : sections[sec])
            if (key != sec) throw parse_error(e.line, e.key_column, "unknown key '" + key + "' in [" + sec + "]");
    const auto& re = need("ring", "ring");
    const RingPtr ring = detail::parse_ring(re.value, re.line, re.column);
    const auto& ge = need("group", "group");
    const GroupPtr group = detail::parse_group(ge.value, ge.line, ge.column);
    const auto& te = need("action", "type");
    if (te.value != "global" && te.value != "explicit")
        throw parse_error(te.line, te.column, "type must be global or explicit");
    const bool global = te.value == "global";
    for (const auto& [key, e] : sections["action"]) {
        const bool ok = key == "type" || (global ? key == "restrict" : key == "one" || key.rfind("alpha.", 0) == 0);
        if (!ok) throw parse_error(e.line, e.key_column, "unknown key '" + key + "' in [action]");
    }
    if (!global && !generators.empty())
        throw parse_error(generators.front().second.line, generators.front().second.key_column,
                          "generator lines need type = global");
    Instance inst{name, {}, std::nullopt, std::nullopt};
    if (global) {
        std::vector<std::vector<elem>> gens;
        for (const auto& [k, e] : generators) gens.push_back(detail::parse_generator(ring, e.value, e.line, e.column));
        if (gens.size() != group->cyclic_factors().size())
            throw parse_error(te.line, te.column,
                              "need " + std::to_string(group->cyclic_factors().size()) + " generator line(s)");
        try {
            inst.global = global_from_generators(ring, group, gens);
        } catch (const error& e) {
            throw parse_error(generators.front().second.line, generators.front().second.column, e.what());
        }
        if (auto it = sections["action"].find("restrict"); it != sections["action"].end()) {
            const elem e = detail::parse_element(ring, it->second.value, it->second.line, it->second.column);
            if (!ring->is_idempotent(e)) throw parse_error(it->second.line, it->second.column, "restriction is not idempotent");
            inst.restriction = e;
            inst.data = restrict_global(*inst.global, e).data();
        } else {
            inst.data = as_partial(*inst.global);
        }
    } else {
        const auto& oe = need("action", "one");
        inst.data.ring = ring;
        inst.data.group = group;
        inst.data.one = detail::parse_indices(ring, oe.value, oe.line, oe.column);
        inst.data.alpha.resize(group->order());
        for (const auto& [key, e] : sections["action"])
            if (key.rfind("alpha.", 0) == 0) {
                const auto g = key.substr(6);
                if (g.empty() || g.find_first_not_of("0123456789") != std::string::npos || g.size() > 4 ||
                    std::stoul(g) >= group->order())
                    throw parse_error(e.line, e.key_column, "'" + key + "' does not name a group element");
            }
        for (gelem g = 0; g < group->order(); ++g) {
            const auto& ae = need("action", "alpha." + std::to_string(g));
            inst.data.alpha[g] = detail::parse_indices(ring, ae.value, ae.line, ae.column);
        }
    }
    return inst;
}

inline Instance load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw error("cannot read config '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_config(ss.str(), path);
}

}  // namespace pgal

#include "cdgacyc/algebra_file.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "cdgacyc/error.hpp"

namespace cdgacyc {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

struct Ctx {
    std::string source;
    [[noreturn]] void err(const std::string& path, const std::string& msg) const {
        fail(ErrorKind::Parse, source + ": at " + (path.empty() ? "/" : path) + ": " + msg);
    }
};

void only_keys(const Ctx& c, const json& j, const std::string& path, std::initializer_list<const char*> keys) {
    if (!j.is_object()) c.err(path, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (auto* k : keys) ok |= it.key() == k;
        if (!ok) c.err(path, "unknown field '" + it.key() + "'");
    }
}

const json& need(const Ctx& c, const json& j, const std::string& path, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) c.err(path, std::string("missing field '") + key + "'");
    return *it;
}

int as_int(const Ctx& c, const json& j, const std::string& path) {
    if (!j.is_number_integer()) c.err(path, "expected an integer");
    return j.get<int>();
}

std::string as_string(const Ctx& c, const json& j, const std::string& path) {
    if (!j.is_string()) c.err(path, "expected a string");
    return j.get<std::string>();
}

Rational coeff(const Ctx& c, const json& j, const std::string& path) {
    if (!j.is_string()) c.err(path, "coefficients are exact rational strings such as \"3\" or \"-1/2\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
        c.err(path, e.what());
    }
}

// list of (coefficient, [(name, exponent)])
using RawTerm = std::pair<Rational, std::vector<std::pair<std::string, int>>>;

std::vector<RawTerm> terms(const Ctx& c, const json& j, const std::string& path) {
    if (!j.is_array()) c.err(path, "expected a list of terms");
    std::vector<RawTerm> out;
    for (size_t i = 0; i < j.size(); ++i) {
        std::string p = path + "/" + std::to_string(i);
        only_keys(c, j[i], p, {"coeff", "monomial"});
        RawTerm t;
        t.first = coeff(c, need(c, j[i], p, "coeff"), p + "/coeff");
        auto& m = need(c, j[i], p, "monomial");
        if (!m.is_array()) c.err(p + "/monomial", "expected a list of [name, exponent] pairs");
        for (size_t k = 0; k < m.size(); ++k) {
            std::string q = p + "/monomial/" + std::to_string(k);
            if (!m[k].is_array() || m[k].size() != 2) c.err(q, "expected [name, exponent]");
            int e = as_int(c, m[k][1], q + "/1");
            if (e < 1) c.err(q + "/1", "exponents must be positive");
            t.second.push_back({as_string(c, m[k][0], q + "/0"), e});
        }
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<std::pair<std::string, int>> named_degrees(const Ctx& c, const json& j, const std::string& path) {
    if (!j.is_array()) c.err(path, "expected a list");
    std::vector<std::pair<std::string, int>> out;
    for (size_t i = 0; i < j.size(); ++i) {
        std::string p = path + "/" + std::to_string(i);
        only_keys(c, j[i], p, {"name", "degree"});
        std::string n = as_string(c, need(c, j[i], p, "name"), p + "/name");
        if (n.empty()) c.err(p + "/name", "empty name");
        out.push_back({n, as_int(c, need(c, j[i], p, "degree"), p + "/degree")});
    }
    return out;
}

template <class F>
auto rethrow_domain(const Ctx& c, const std::string& path, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Domain) c.err(path, e.what());
        throw;
    }
}

FreeCDGA parse_free(const Ctx& c, const json& j, const std::string& name) {
    only_keys(c, j, "", {"name", "generators", "differential"});
    auto gens = named_degrees(c, need(c, j, "", "generators"), "/generators");
    std::vector<Generator> g;
    for (auto& [n, d] : gens) g.push_back({int(g.size()), n, d, 0});
    auto alg = rethrow_domain(c, "/generators", [&] { return std::make_shared<FreeAlgebra>(g); });
    std::vector<Polynomial> dv(alg->size());
    if (j.contains("differential")) {
        auto& d = j["differential"];
        if (!d.is_object()) c.err("/differential", "expected an object keyed by generator name");
        for (auto it = d.begin(); it != d.end(); ++it) {
            std::string p = "/differential/" + it.key();
            int id = alg->find(it.key());
            if (id < 0) c.err(p, "unknown generator '" + it.key() + "'");
            for (auto& [co, mono] : terms(c, it.value(), p)) {
                Monomial m;
                std::map<int, int> ex;
                for (auto& [gn, e] : mono) {
                    int gi = alg->find(gn);
                    if (gi < 0) c.err(p, "unknown generator '" + gn + "' in a monomial");
                    ex[gi] += e;
                }
                for (auto& [gi, e] : ex) m.f.push_back({gi, e});
                rethrow_domain(c, p, [&] {
                    alg->validate(m);
                    return 0;
                });
                dv[id].add(m, co);
            }
        }
    }
    auto a = rethrow_domain(c, "/differential", [&] { return make_free_cdga(name, gens, dv); });
    auto rep = check_differential(a.d, 0);
    if (!rep.ok) fail(ErrorKind::Precondition, c.source + ": d∘d != 0: " + rep.message);
    return a;
}

FiniteCDGA parse_finite(const Ctx& c, const json& j, const std::string& name) {
    only_keys(c, j, "", {"name", "basis", "products", "differential"});
    auto basis = named_degrees(c, need(c, j, "", "basis"), "/basis");
    std::vector<FiniteElement> els;
    std::map<std::string, int> id;
    for (auto& [n, d] : basis) {
        if (id.count(n)) c.err("/basis", "duplicate basis element '" + n + "'");
        id[n] = int(els.size());
        els.push_back({n, d});
    }
    auto unit_id = [&]() {
        for (size_t i = 0; i < els.size(); ++i)
            if (els[i].degree == 0) return int(i);
        return -1;
    };
    auto conv = [&](const std::vector<RawTerm>& ts, const std::string& p) {
        std::vector<Term> out;
        for (auto& [co, mono] : ts) {
            if (mono.empty()) {
                int u = unit_id();
                if (u < 0) c.err(p, "empty monomial but no unit in degree 0");
                out.push_back({co, u});
                continue;
            }
            if (mono.size() != 1 || mono[0].second != 1)
                c.err(p, "finite-form terms name a single basis element with exponent 1");
            auto it = id.find(mono[0].first);
            if (it == id.end()) c.err(p, "unknown basis element '" + mono[0].first + "'");
            out.push_back({co, it->second});
        }
        return out;
    };
    std::vector<std::tuple<int, int, std::vector<Term>>> prods;
    if (j.contains("products")) {
        auto& pj = j["products"];
        if (!pj.is_array()) c.err("/products", "expected a list of [left, right, terms]");
        for (size_t i = 0; i < pj.size(); ++i) {
            std::string p = "/products/" + std::to_string(i);
            if (!pj[i].is_array() || pj[i].size() != 3) c.err(p, "expected [left, right, terms]");
            std::string l = as_string(c, pj[i][0], p + "/0"), r = as_string(c, pj[i][1], p + "/1");
            if (!id.count(l)) c.err(p + "/0", "unknown basis element '" + l + "'");
            if (!id.count(r)) c.err(p + "/1", "unknown basis element '" + r + "'");
            prods.push_back({id[l], id[r], conv(terms(c, pj[i][2], p + "/2"), p + "/2")});
        }
    }
    std::vector<std::pair<int, std::vector<Term>>> diff;
    if (j.contains("differential")) {
        auto& d = j["differential"];
        if (!d.is_object()) c.err("/differential", "expected an object keyed by basis element");
        for (auto it = d.begin(); it != d.end(); ++it) {
            std::string p = "/differential/" + it.key();
            if (!id.count(it.key())) c.err(p, "unknown basis element '" + it.key() + "'");
            diff.push_back({id[it.key()], conv(terms(c, it.value(), p), p)});
        }
    }
    return rethrow_domain(c, "", [&] { return FiniteCDGA::make(name, els, prods, diff); });
}

std::string position(std::string_view text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

}  // namespace

AlgebraFile parse_algebra(std::string_view text, const std::string& source) {
    Ctx c{source};
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        std::string msg = e.what();
        auto k = msg.find("syntax error");
        fail(ErrorKind::Parse, source + ":" + position(text, e.byte) + ": " + (k == std::string::npos ? msg : msg.substr(k)));
    }
    if (!j.is_object()) c.err("", "expected a JSON object");
    AlgebraFile f;
    f.name = std::filesystem::path(source).stem().string();
    if (j.contains("name")) f.name = as_string(c, j["name"], "/name");
    bool fr = j.contains("generators"), fi = j.contains("basis");
    if (fr == fi) c.err("", "exactly one of 'generators' (free form) or 'basis' (finite form) is required");
    if (fr)
        f.free = parse_free(c, j, f.name);
    else
        f.finite = parse_finite(c, j, f.name);
    return f;
}

AlgebraFile load_algebra(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_algebra(ss.str(), path);
}

namespace {
ojson term_json(const Rational& c, ojson mono) {
    ojson t;
    t["coeff"] = to_string(c);
    t["monomial"] = std::move(mono);
    return t;
}
}  // namespace

std::string emit_free(const FreeCDGA& a) {
    ojson j;
    j["name"] = a.name;
    j["generators"] = ojson::array();
    for (auto& g : a.alg->generators()) j["generators"].push_back({{"name", g.name}, {"degree", g.degree}});
    ojson d = ojson::object();
    for (auto& g : a.alg->generators()) {
        auto& v = a.d.value(g.id);
        if (v.is_zero()) continue;
        ojson ts = ojson::array();
        for (auto& [m, c] : v.terms) {
            ojson mono = ojson::array();
            for (auto& [id, e] : m.f) mono.push_back({a.alg->gen(id).name, e});
            ts.push_back(term_json(c, std::move(mono)));
        }
        d[g.name] = std::move(ts);
    }
    j["differential"] = std::move(d);
    return j.dump(2) + "\n";
}

std::string emit_finite(const FiniteCDGA& a) {
    ojson j;
    j["name"] = a.name();
    j["basis"] = ojson::array();
    auto& els = a.elements();
    for (auto& e : els) j["basis"].push_back({{"name", e.name}, {"degree", e.degree}});
    auto ts = [&](const std::map<int, Rational>& m) {
        ojson out = ojson::array();
        for (auto& [e, c] : m) out.push_back(term_json(c, ojson::array({ojson::array({els[e].name, 1})})));
        return out;
    };
    ojson prods = ojson::array();
    for (int i = 0; i < int(els.size()); ++i)
        for (int k = i; k < int(els.size()); ++k) {
            if (i == a.unit_index() || k == a.unit_index()) continue;
            auto& p = a.product(i, k);
            if (!p.empty()) prods.push_back({els[i].name, els[k].name, ts(p)});
        }
    j["products"] = std::move(prods);
    ojson d = ojson::object();
    for (int i = 0; i < int(els.size()); ++i)
        if (!a.diff(i).empty()) d[els[i].name] = ts(a.diff(i));
    j["differential"] = std::move(d);
    return j.dump(2) + "\n";
}

}  // namespace cdgacyc

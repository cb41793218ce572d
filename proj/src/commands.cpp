#include "cdgacyc/commands.hpp"

#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "cdgacyc/error.hpp"
#include "cdgacyc/functors.hpp"
#include "cdgacyc/minimal_model.hpp"

namespace cdgacyc {

using ojson = nlohmann::ordered_json;

namespace {

const char* kCommands[] = {"cohomology", "hh", "ch", "ph", "sh", "euler", "check", "minimal-model", "verify-minimal"};

struct Session {
    std::optional<MinimalModel> model;
    std::unique_ptr<Functors> f;
};

Session open(const AlgebraFile& file, const CommandOptions& o) {
    FunctorOptions fo;
    fo.cutoff = o.cutoff;
    fo.weight_max = o.weight_max.value_or(o.cutoff);
    fo.corrupt_bar_sign = o.corrupt_bar_sign;
    Session s;
    if (file.is_free()) {
        if (!file.free->one_connected() && !o.weight_max)
            fail(ErrorKind::Usage, "'" + file.name +
                                       "' has degree-1 generators; the loop construction then needs --weight-max");
        s.f = std::make_unique<Functors>(*file.free, fo);
    } else {
        auto m = functor_on_cdga(*file.finite, fo, o.seed);
        s.model = std::move(m.model);
        s.f = std::move(m.functors);
    }
    return s;
}

ojson table_json(const CohomologyTable& t, int N) {
    ojson d = ojson::array();
    for (int n = 0; n <= N; ++n) {
        auto it = t.entries.find(n);
        CohomologyEntry e = it == t.entries.end() ? CohomologyEntry{} : it->second;
        ojson w = ojson::object();
        for (auto& [q, k] : e.weights) w[std::to_string(q)] = k;
        d.push_back({{"n", n}, {"total", e.total}, {"weights", w}, {"certified", e.certified}});
    }
    return d;
}

std::string table_text(const CohomologyTable& t, int N, bool per_weight, const std::string& wname = "weight") {
    std::ostringstream os;
    os << t.name << "\n";
    os << std::setw(4) << "n" << std::setw(7) << "dim" << "  status";
    if (per_weight) os << "  by " << wname;
    os << "\n";
    for (int n = 0; n <= N; ++n) {
        auto it = t.entries.find(n);
        CohomologyEntry e = it == t.entries.end() ? CohomologyEntry{} : it->second;
        std::string status = e.certified || e.status != "exact" ? e.status : "uncertified";
        std::ostringstream line;
        line << std::setw(4) << n << std::setw(7) << e.total << "  " << std::left << std::setw(16) << status;
        if (per_weight)
            for (auto& [q, k] : e.weights) line << " " << q << ":" << k;
        std::string l = line.str();
        l.erase(l.find_last_not_of(' ') + 1);
        os << l << "\n";
    }
    return os.str();
}

ojson header(const AlgebraFile& f, const std::string& what, const CommandOptions& o, const Session* s) {
    ojson j;
    j["algebra"] = f.name;
    j["functor"] = what;
    j["cutoff"] = o.cutoff;
    if (s && s->f) j["weight_max"] = s->f->options().weight_max;
    if (s && s->model) j["model"] = ojson::parse(emit_free(s->model->model));
    return j;
}

std::string model_note(const Session& s) {
    if (!s.model) return "";
    std::ostringstream os;
    os << "computed on the minimal model " << s.model->model.name << " with generators";
    for (auto& g : s.model->model.alg->generators()) os << " " << g.name << "(" << g.degree << ")";
    if (!s.model->model.num_generators()) os << " none";
    os << "\n";
    return os.str();
}

std::string check_line(const CheckResult& c) {
    std::ostringstream os;
    os << std::left << std::setw(8) << c.status << c.name << "  [" << c.checked << " checks]";
    if (!c.detail.empty() && c.status != "PASS") os << "\n        " << c.detail;
    return os.str();
}

CommandResult audit_result(const AlgebraFile& f, const CommandOptions& o, const Session* s, const AuditReport& r,
                           const std::string& what) {
    CommandResult out;
    ojson j = header(f, what, o, s);
    j["checks"] = ojson::array();
    std::ostringstream os;
    os << what << " of " << f.name << ", cutoff " << o.cutoff << "\n";
    if (s) os << model_note(*s);
    int fails = 0;
    for (auto c : r.checks) {
        if (c.status == "PASS" && c.checked == 0) {
            c.status = "SKIPPED";
            if (c.detail.empty()) c.detail = "nothing inside the certified window";
        }
        j["checks"].push_back({{"name", c.name}, {"status", c.status}, {"checked", c.checked}, {"detail", c.detail}});
        os << check_line(c) << "\n";
        fails += c.failed();
    }
    out.passed = fails == 0;
    j["passed"] = out.passed;
    os << (out.passed ? "all checks passed" : std::to_string(fails) + " check(s) failed") << "\n";
    out.text = os.str();
    out.json = j.dump(2) + "\n";
    return out;
}

CommandResult cohomology(const AlgebraFile& f, const CommandOptions& o) {
    CohomologyTable t;
    t.name = "H(" + f.name + ")";
    if (f.is_free()) {
        FreeView v(*f.free, o.cutoff + 1);
        for (int n = 0; n <= o.cutoff; ++n) t.entries[n].total = v.cohomology(n).dim();
    } else {
        for (int n = 0; n <= o.cutoff; ++n) t.entries[n].total = f.finite->cohomology(n).dim();
    }
    CommandResult r;
    ojson j = header(f, "H", o, nullptr);
    j["degrees"] = table_json(t, o.cutoff);
    r.json = j.dump(2) + "\n";
    r.text = table_text(t, o.cutoff, false);
    return r;
}

CommandResult functor_table(const std::string& which, const AlgebraFile& f, const CommandOptions& o) {
    Session s = open(f, o);
    CohomologyTable t;
    std::string extra;
    ojson more;
    if (which == "hh") {
        t = s.f->hh();
    } else if (which == "ch") {
        t = s.f->ch();
    } else if (which == "sh") {
        if (!s.f->algebra().one_connected() && !o.weight_max)
            fail(ErrorKind::Usage, "sh on a non-1-connected algebra needs --weight-max");
        t = s.f->sh();
    } else {
        auto p = s.f->ph();
        t = p.colimit;
        std::ostringstream os;
        os << "tail: " << p.tail_note << "\n";
        more = ojson::array();
        for (auto& [key, e] : p.entries) {
            if (!e.dim) continue;
            os << "  PH^" << key.first << "(" << key.second << ") = " << e.dim << ", stable from k = " << e.stable_from
               << "\n";
            more.push_back({{"n", key.first}, {"label", key.second}, {"dim", e.dim}, {"stable_from", e.stable_from}});
        }
        for (auto& [n, e] : t.entries) {
            if (e.total != p.periodic.dim(n)) os << "  warning: the periodic complex gives " << p.periodic.dim(n)
                                                 << " in degree " << n << "\n";
        }
        extra = os.str();
    }
    std::string up = which;
    for (auto& ch : up) ch = char(std::toupper(ch));
    CommandResult r;
    ojson j = header(f, up, o, &s);
    j["degrees"] = table_json(t, o.cutoff);
    if (!more.is_null()) j["stabilization"] = more;
    r.json = j.dump(2) + "\n";
    r.text = model_note(s) + table_text(t, o.cutoff, o.per_weight, which == "hh" ? "weight" : "label") + extra;
    return r;
}

CommandResult euler(const AlgebraFile& f, const CommandOptions& o) {
    Session s = open(f, o);
    auto e = s.f->euler_series();
    auto hh = s.f->hh();
    CommandResult r;
    ojson j = header(f, "euler", o, &s);
    std::ostringstream os;
    os << model_note(s) << "Euler series of " << f.name << ", cutoff " << o.cutoff << "\n";
    os << std::setw(4) << "r" << std::setw(10) << "chi^H(r)" << "  certified\n";
    j["chi_h"] = ojson::array();
    bool agree = true;
    for (auto& [w, x] : e.chi_h) {
        Rational y = 0;
        for (int n = 0; n <= o.cutoff; ++n) y += (n % 2 ? -1 : 1) * hh.dim(n, w);
        if (e.h_certified[w] && x != y) agree = false;
        os << std::setw(4) << w << std::setw(10) << to_string(x) << "  " << (e.h_certified[w] ? "yes" : "no") << "\n";
        j["chi_h"].push_back({{"r", w}, {"value", to_string(x)}, {"certified", e.h_certified[w]}});
    }
    os << std::setw(4) << "q" << std::setw(10) << "chi^C(q)" << "  certified\n";
    j["chi_c"] = ojson::array();
    for (auto& [q, x] : e.chi_c) {
        if (!e.c_certified[q] && x == 0) continue;
        os << std::setw(4) << q << std::setw(10) << to_string(x) << "  " << (e.c_certified[q] ? "yes" : "no") << "\n";
        j["chi_c"].push_back({{"label", q}, {"value", to_string(x)}, {"certified", e.c_certified[q]}});
    }
    os << "cross-check against the per-weight HH table: " << (agree ? "PASS" : "FAIL") << "\n";
    j["cross_check"] = agree ? "PASS" : "FAIL";
    r.passed = agree;
    r.text = os.str();
    r.json = j.dump(2) + "\n";
    return r;
}

// An audit whose complexes cannot even be assembled (say d∘d != 0 after a
// corrupted sign) is recorded as a failure rather than aborting the run.
template <class F>
void section(AuditReport& r, const std::string& name, F&& f) {
    try {
        r.merge(f());
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Precondition) throw;
        auto& c = r.add(name);
        c.status = "FAIL";
        c.detail = std::string("could not be assembled: ") + e.what();
    }
}

CommandResult check(const AlgebraFile& f, const CommandOptions& o) {
    Session s = open(f, o);
    AuditReport r = s.f->axioms({-1, 2, 3, 6});
    section(r, "long exact rows", [&] { return s.f->gysin_audit(); });
    section(r, "comparison diagram", [&] { return s.f->comparison_audit(); });
    section(r, "reduced SH sequence", [&] { return s.f->sh_sequence_audit(); });
    if (!s.f->weight_truncated()) section(r, "eigenstructure", [&] { return s.f->eigen_audit(); });
    section(r, "cross pipelines", [&] { return s.f->cross_pipelines(); });
    if (s.model) {
        r.merge(verify_minimal(s.model->model, s.model->cutoff));
        auto q = is_quasi_iso(*s.model->theta, s.model->cutoff);
        auto& c = r.add("model map is a quasi-isomorphism through degree " + std::to_string(q.window));
        c.checked = int(q.rows.size());
        if (!q.ok) {
            c.status = "FAIL";
            c.detail = q.witness;
        }
    }
    return audit_result(f, o, &s, r, "check");
}

CommandResult minimal_model(const AlgebraFile& f, const CommandOptions& o) {
    if (f.is_free()) fail(ErrorKind::Usage, "minimal-model takes a finite-form file; free files are models already");
    auto m = build_minimal_model(*f.finite, o.cutoff, o.seed);
    m.model.name = f.name + "-model";
    CommandResult r;
    r.emitted = emit_free(m.model);
    // round trip through the parser before handing the file out
    auto back = parse_algebra(r.emitted, "<emitted model>");
    auto vm = verify_minimal(*back.free, o.cutoff);
    auto q = is_quasi_iso(*m.theta, o.cutoff);
    std::ostringstream os;
    os << "minimal model of " << f.name << " through degree " << o.cutoff << "\n";
    for (auto& [d, c] : m.model.generator_counts()) os << "  degree " << d << ": " << c << " generator(s)\n";
    for (auto& c : vm.checks) os << check_line(c) << "\n";
    os << std::left << std::setw(8) << (q.ok ? "PASS" : "FAIL") << "quasi-isomorphism through degree " << q.window
       << (q.ok ? "" : ": " + q.witness) << "\n";
    r.passed = vm.ok() && q.ok && emit_free(*back.free) == r.emitted;
    r.text = os.str();
    r.json = r.emitted;
    return r;
}

CommandResult verify_min(const AlgebraFile& f, const CommandOptions& o) {
    if (f.is_free()) return audit_result(f, o, nullptr, verify_minimal(*f.free, o.cutoff), "verify-minimal");
    auto m = build_minimal_model(*f.finite, o.cutoff, o.seed);
    Session s;
    s.model = m;
    return audit_result(f, o, &s, verify_minimal(m.model, o.cutoff), "verify-minimal");
}

}  // namespace

bool known_command(const std::string& c) {
    for (auto* k : kCommands)
        if (c == k) return true;
    return false;
}

CommandResult run_command(const std::string& c, const AlgebraFile& f, const CommandOptions& o) {
    if (o.cutoff < 2 || o.cutoff > 40) fail(ErrorKind::Usage, "--cutoff must lie in [2, 40]");
    if (o.weight_max && (*o.weight_max < 0 || *o.weight_max > 60)) fail(ErrorKind::Usage, "--weight-max must lie in [0, 60]");
    if (c == "cohomology") return cohomology(f, o);
    if (c == "hh" || c == "ch" || c == "ph" || c == "sh") return functor_table(c, f, o);
    if (c == "euler") return euler(f, o);
    if (c == "check") return check(f, o);
    if (c == "minimal-model") return minimal_model(f, o);
    if (c == "verify-minimal") return verify_min(f, o);
    fail(ErrorKind::Usage, "unknown command '" + c + "'");
}

}  // namespace cdgacyc

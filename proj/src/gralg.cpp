#include "cdgacyc/gralg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "cdgacyc/error.hpp"

namespace cdgacyc {

int Monomial::length() const {
    int n = 0;
    for (auto& [g, e] : f) n += e;
    return n;
}

Polynomial Polynomial::constant(const Rational& c) { return of(Monomial{}, c); }

Polynomial Polynomial::of(const Monomial& m, const Rational& c) {
    Polynomial p;
    p.add(m, c);
    return p;
}

void Polynomial::add(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second == 0) terms.erase(it);
    }
}

void Polynomial::add(const Polynomial& p, const Rational& s) {
    for (auto& [m, c] : p.terms) add(m, s * c);
}

Polynomial Polynomial::scaled(const Rational& s) const {
    Polynomial p;
    p.add(*this, s);
    return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial p = *this;
    p.add(o);
    return p;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial p = *this;
    p.add(o, -1);
    return p;
}

// ---------------------------------------------------------------------------

FreeAlgebra::FreeAlgebra(std::vector<Generator> gens) : gens_(std::move(gens)) {
    std::set<std::string> names;
    for (size_t i = 0; i < gens_.size(); ++i) {
        gens_[i].id = int(i);
        if (gens_[i].degree < 0) fail(ErrorKind::Domain, "generator '" + gens_[i].name + "' has negative degree");
        if (gens_[i].name.empty()) fail(ErrorKind::Domain, "generator without a name");
        if (!names.insert(gens_[i].name).second)
            fail(ErrorKind::Domain, "duplicate generator name '" + gens_[i].name + "'");
    }
}

int FreeAlgebra::find(std::string_view name) const {
    for (auto& g : gens_)
        if (g.name == name) return g.id;
    return -1;
}

bool FreeAlgebra::has_degree_zero() const {
    return std::any_of(gens_.begin(), gens_.end(), [](const Generator& g) { return g.degree == 0; });
}

int FreeAlgebra::max_degree() const {
    int m = 0;
    for (auto& g : gens_) m = std::max(m, g.degree);
    return m;
}

void FreeAlgebra::validate(const Monomial& m) const {
    int last = -1;
    for (auto& [g, e] : m.f) {
        if (g < 0 || g >= size()) fail(ErrorKind::Domain, "monomial refers to a generator outside this algebra");
        if (g <= last || e < 1) fail(ErrorKind::Domain, "monomial is not in canonical form");
        if (gens_[g].degree % 2 && e > 1) fail(ErrorKind::Domain, "odd generator '" + gens_[g].name + "' squared");
        last = g;
    }
}

int FreeAlgebra::degree(const Monomial& m) const {
    int d = 0;
    for (auto& [g, e] : m.f) d += e * gens_.at(g).degree;
    return d;
}

int FreeAlgebra::weight(const Monomial& m) const {
    int w = 0;
    for (auto& [g, e] : m.f) w += e * gens_.at(g).weight;
    return w;
}

int FreeAlgebra::degree(const Polynomial& p) const {
    int d = -1;
    for (auto& [m, c] : p.terms) {
        int dm = degree(m);
        if (d >= 0 && dm != d) fail(ErrorKind::Domain, "inhomogeneous polynomial " + format(p));
        d = dm;
    }
    return d;
}

Monomial FreeAlgebra::generator_monomial(int id, int exp) const {
    if (id < 0 || id >= size()) fail(ErrorKind::Domain, "generator id out of range");
    Monomial m;
    if (exp > 0) m.f.push_back({id, exp});
    validate(m);
    return m;
}

SignedMonomial FreeAlgebra::multiply(const Monomial& a, const Monomial& b) const {
    SignedMonomial out;
    auto& r = out.m.f;
    r.reserve(a.f.size() + b.f.size());
    size_t i = 0, j = 0;
    int odd_b_passed = 0;  // odd factors of b already placed before the current factor of a
    long swaps = 0;
    while (i < a.f.size() || j < b.f.size()) {
        if (j == b.f.size() || (i < a.f.size() && a.f[i].first < b.f[j].first)) {
            auto [g, e] = a.f[i++];
            if (g >= size()) fail(ErrorKind::Domain, "monomial refers to a generator outside this algebra");
            if (gens_[g].degree % 2) swaps += odd_b_passed;
            r.push_back({g, e});
        } else if (i == a.f.size() || b.f[j].first < a.f[i].first) {
            auto [g, e] = b.f[j++];
            if (g >= size()) fail(ErrorKind::Domain, "monomial refers to a generator outside this algebra");
            if (gens_[g].degree % 2) ++odd_b_passed;
            r.push_back({g, e});
        } else {
            int g = a.f[i].first;
            if (g >= size()) fail(ErrorKind::Domain, "monomial refers to a generator outside this algebra");
            if (gens_[g].degree % 2) return {0, {}};
            r.push_back({g, a.f[i].second + b.f[j].second});
            ++i;
            ++j;
        }
    }
    out.sign = swaps % 2 ? -1 : 1;
    return out;
}

Polynomial FreeAlgebra::mul(const Polynomial& a, const Polynomial& b) const {
    Polynomial p;
    for (auto& [ma, ca] : a.terms)
        for (auto& [mb, cb] : b.terms) {
            auto s = multiply(ma, mb);
            if (s.sign) p.add(s.m, s.sign * ca * cb);
        }
    return p;
}

Polynomial FreeAlgebra::power(const Polynomial& a, int e) const {
    Polynomial r = Polynomial::constant(1);
    for (int i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

std::vector<Monomial> FreeAlgebra::basis(int n, int weight) const {
    std::vector<Monomial> out;
    if (n < 0) return out;
    if (weight < 0 && has_degree_zero())
        fail(ErrorKind::Unsupported, "degree slices are infinite with degree-0 generators; a weight bound is required");
    for (auto& g : gens_)
        if (g.degree == 0 && g.weight == 0)
            fail(ErrorKind::Unsupported, "degree-0 generator of weight 0 makes degree slices infinite");
    Monomial cur;
    auto rec = [&](auto&& self, int g, int rd, int rw) -> void {
        if (g == size()) {
            if (rd == 0 && (weight < 0 || rw == 0)) out.push_back(cur);
            return;
        }
        const Generator& G = gens_[g];
        int maxe;
        if (G.degree % 2)
            maxe = 1;
        else if (G.degree > 0)
            maxe = rd / G.degree;
        else
            maxe = rw / G.weight;
        if (weight >= 0 && G.weight > 0) maxe = std::min(maxe, rw / G.weight);
        for (int e = 0; e <= maxe; ++e) {
            if (e * G.degree > rd) break;
            if (e) cur.f.push_back({g, e});
            self(self, g + 1, rd - e * G.degree, weight >= 0 ? rw - e * G.weight : rw);
            if (e) cur.f.pop_back();
        }
    };
    rec(rec, 0, n, weight);
    std::sort(out.begin(), out.end());
    return out;
}

std::string FreeAlgebra::format(const Monomial& m) const {
    if (m.f.empty()) return "1";
    std::string s;
    for (auto& [g, e] : m.f) {
        if (!s.empty()) s += "*";
        s += gens_.at(g).name;
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string FreeAlgebra::format(const Polynomial& p) const {
    if (p.is_zero()) return "0";
    std::string s;
    for (auto& [m, c] : p.terms) {
        Rational a = abs(c);
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        if (m.is_unit())
            s += a.get_str();
        else {
            if (a != 1) s += a.get_str() + "*";
            s += format(m);
        }
    }
    return s;
}

bool FreeAlgebra::same_generators(const FreeAlgebra& o) const {
    if (size() != o.size()) return false;
    for (int i = 0; i < size(); ++i)
        if (gens_[i].name != o.gens_[i].name || gens_[i].degree != o.gens_[i].degree ||
            gens_[i].weight != o.gens_[i].weight)
            return false;
    return true;
}

// ---------------------------------------------------------------------------

Derivation::Derivation(AlgebraPtr a, int shift, std::vector<Polynomial> values)
    : alg_(std::move(a)), shift_(shift), values_(std::move(values)) {
    if (!alg_) fail(ErrorKind::InvalidArgument, "derivation without algebra");
    if (int(values_.size()) != alg_->size())
        fail(ErrorKind::Domain, "derivation needs exactly one value per generator");
    for (int g = 0; g < alg_->size(); ++g) {
        for (auto& [m, c] : values_[g].terms) {
            alg_->validate(m);
            if (alg_->degree(m) != alg_->gen(g).degree + shift_)
                fail(ErrorKind::Domain, "value on '" + alg_->gen(g).name + "' has degree " +
                                            std::to_string(alg_->degree(m)) + ", expected " +
                                            std::to_string(alg_->gen(g).degree + shift_));
        }
    }
}

Polynomial Derivation::apply(const Monomial& m) const {
    Polynomial out;
    int prefix_deg = 0;
    for (size_t i = 0; i < m.f.size(); ++i) {
        auto [g, e] = m.f[i];
        const Polynomial& dg = values_.at(g);
        if (!dg.is_zero()) {
            Monomial pre, post;
            pre.f.assign(m.f.begin(), m.f.begin() + long(i));
            post.f.assign(m.f.begin() + long(i) + 1, m.f.end());
            Polynomial mid = dg;
            if (e > 1) mid = alg_->mul(Polynomial::of(alg_->generator_monomial(g, e - 1), e), dg);
            int sign = (std::abs(shift_) % 2 && prefix_deg % 2) ? -1 : 1;
            Polynomial t = alg_->mul(alg_->mul(Polynomial::of(pre), mid), Polynomial::of(post));
            out.add(t, sign);
        }
        prefix_deg += e * alg_->gen(g).degree;
    }
    return out;
}

Polynomial Derivation::apply(const Polynomial& p) const {
    Polynomial out;
    for (auto& [m, c] : p.terms) out.add(apply(m), c);
    return out;
}

Derivation extend_derivation(AlgebraPtr a, int shift, std::vector<Polynomial> values) {
    return Derivation(std::move(a), shift, std::move(values));
}

DifferentialReport check_differential(const Derivation& d, int cutoff) {
    DifferentialReport r;
    const FreeAlgebra& A = d.algebra();
    for (int g = 0; g < A.size(); ++g) {
        Polynomial dd = d.apply(d.value(g));
        if (!dd.is_zero()) {
            r.ok = false;
            r.witness = A.gen(g).name;
            r.degree = A.gen(g).degree;
            r.message = "D(D(" + A.gen(g).name + ")) = " + A.format(dd);
            return r;
        }
    }
    if (A.has_degree_zero()) {
        r.message = "monomial audit skipped (degree-0 generators)";
        return r;
    }
    for (int n = 0; n <= cutoff; ++n)
        for (auto& m : A.basis(n)) {
            Polynomial dd = d.apply(d.apply(m));
            if (!dd.is_zero()) {
                r.ok = false;
                r.witness = A.format(m);
                r.degree = n;
                r.message = "D(D(" + r.witness + ")) = " + A.format(dd);
                return r;
            }
        }
    return r;
}

// ---------------------------------------------------------------------------

bool FreeCDGA::one_connected() const {
    for (auto& g : alg->generators())
        if (g.degree < 2) return false;
    return true;
}

std::map<int, int> FreeCDGA::generator_counts() const {
    std::map<int, int> c;
    for (auto& g : alg->generators()) ++c[g.degree];
    return c;
}

FreeCDGA make_free_cdga(const std::string& name, const std::vector<std::pair<std::string, int>>& gens,
                        const std::vector<Polynomial>& dvalues) {
    std::vector<Generator> g;
    for (auto& [n, deg] : gens) {
        if (deg < 1)
            fail(ErrorKind::Domain, "generator '" + n + "' has degree " + std::to_string(deg) +
                                        "; a connected free CDGA needs degree >= 1");
        g.push_back({int(g.size()), n, deg, 0});
    }
    auto alg = std::make_shared<FreeAlgebra>(std::move(g));
    std::vector<Polynomial> vals = dvalues;
    vals.resize(alg->size());
    FreeCDGA a{name, alg, Derivation(alg, 1, vals)};
    return a;
}

FreeCDGA tensor(const FreeCDGA& a, const FreeCDGA& b, const std::string& name) {
    std::vector<std::pair<std::string, int>> gens;
    for (auto& g : a.alg->generators()) gens.push_back({g.name, g.degree});
    for (auto& g : b.alg->generators()) gens.push_back({g.name, g.degree});
    std::vector<Polynomial> vals;
    auto shift = [](const Polynomial& p, int off) {
        Polynomial q;
        for (auto& [m, c] : p.terms) {
            Monomial n = m;
            for (auto& fe : n.f) fe.first += off;
            q.add(n, c);
        }
        return q;
    };
    for (int g = 0; g < a.alg->size(); ++g) vals.push_back(a.d.value(g));
    for (int g = 0; g < b.alg->size(); ++g) vals.push_back(shift(b.d.value(g), a.alg->size()));
    return make_free_cdga(name.empty() ? a.name + "x" + b.name : name, gens, vals);
}

// ---------------------------------------------------------------------------

AlgebraMap::AlgebraMap(AlgebraPtr src, AlgebraPtr tgt, std::vector<Polynomial> values)
    : src_(std::move(src)), tgt_(std::move(tgt)), values_(std::move(values)) {
    if (int(values_.size()) != src_->size()) fail(ErrorKind::Domain, "algebra map needs one value per generator");
    for (int g = 0; g < src_->size(); ++g) {
        int d = tgt_->degree(values_[g]);
        if (d >= 0 && d != src_->gen(g).degree)
            fail(ErrorKind::Domain, "algebra map does not preserve the degree of '" + src_->gen(g).name + "'");
    }
}

Polynomial AlgebraMap::apply(const Monomial& m) const {
    Polynomial r = Polynomial::constant(1);
    for (auto& [g, e] : m.f) r = tgt_->mul(r, tgt_->power(values_.at(g), e));
    return r;
}

Polynomial AlgebraMap::apply(const Polynomial& p) const {
    Polynomial out;
    for (auto& [m, c] : p.terms) out.add(apply(m), c);
    return out;
}

std::map<Monomial, int> index_of(const std::vector<Monomial>& basis) {
    std::map<Monomial, int> idx;
    for (size_t i = 0; i < basis.size(); ++i) idx.emplace(basis[i], int(i));
    return idx;
}

Vector coefficients(const Polynomial& p, const std::map<Monomial, int>& index, int n) {
    Vector v(n);
    for (auto& [m, c] : p.terms) {
        auto it = index.find(m);
        if (it == index.end()) fail(ErrorKind::Internal, "monomial outside basis");
        v[it->second] = c;
    }
    return v;
}

Polynomial from_coefficients(const Vector& v, const std::vector<Monomial>& basis) {
    Polynomial p;
    for (size_t i = 0; i < v.size(); ++i) p.add(basis[i], v[i]);
    return p;
}

}  // namespace cdgacyc

#include "cdgacyc/free_loop.hpp"

#include <algorithm>

#include "cdgacyc/error.hpp"

namespace cdgacyc {

LoopAlgebra::LoopAlgebra(FreeCDGA base, LoopOptions opts) : base_(std::move(base)), opts_(opts) {
    const FreeAlgebra& A = *base_.alg;
    g_ = A.size();
    std::vector<Generator> gens;
    bool zero_bar = false;
    for (auto& g : A.generators()) {
        if (g.degree < 1) fail(ErrorKind::Domain, "base generator '" + g.name + "' has degree < 1");
        gens.push_back({0, g.name, g.degree, 0});
    }
    for (auto& g : A.generators()) {
        gens.push_back({0, g.name + "~", g.degree - 1, 1});
        if (g.degree == 1) zero_bar = true;
    }
    if (zero_bar && opts_.weight_limit == INT_MAX)
        fail(ErrorKind::Unsupported,
             "degree-1 generators give degree-0 barred generators; an explicit weight cutoff is required");
    alg_ = std::make_shared<FreeAlgebra>(gens);
    std::vector<Polynomial> iv(2 * g_), dv(2 * g_);
    for (int g = 0; g < g_; ++g) iv[g] = alg_->generator(bar(g));
    iota_ = Derivation(alg_, -1, iv);
    for (int g = 0; g < g_; ++g) {
        dv[g] = embed(base_.d.value(g));
        Polynomial id = iota_.apply(dv[g]);
        dv[bar(g)] = opts_.corrupt_bar_sign ? id : id.scaled(-1);
    }
    delta_ = Derivation(alg_, 1, dv);
}

int LoopAlgebra::max_weight(int n) const {
    for (int g = 0; g < g_; ++g)
        if (base_.alg->gen(g).degree == 1) return INT_MAX;
    return std::max(n, 0);
}

Polynomial LoopAlgebra::embed(const Polynomial& p) const { return p; }

AlgebraMap LoopAlgebra::power_map(int k) const {
    if (k == 0) fail(ErrorKind::InvalidArgument, "Psi_0 is not defined");
    std::vector<Polynomial> v(2 * g_);
    for (int g = 0; g < g_; ++g) {
        v[g] = alg_->generator(g);
        v[bar(g)] = alg_->generator(bar(g)).scaled(k);
    }
    return AlgebraMap(alg_, alg_, v);
}

std::vector<Monomial> LoopAlgebra::basis(int n, int p) const {
    if (n < 0 || p < 0) return {};
    return alg_->basis(n, p);
}

LoopPtr free_loop(const FreeCDGA& a, LoopOptions opts) { return std::make_shared<LoopAlgebra>(a, opts); }

SliceReport weight_slices(const LoopAlgebra& l, int cutoff, int weight_max) {
    SliceReport r;
    r.exact = true;
    for (int n = 0; n <= cutoff; ++n)
        if (l.max_weight(n) > weight_max) r.exact = false;
    for (int p = 0; p <= weight_max; ++p) {
        WeightSlice s;
        s.weight = p;
        for (int n = 0; n <= cutoff + 1; ++n) s.basis[n] = l.basis(n, p);
        for (int n = 0; n <= cutoff; ++n)
            s.delta[n] = operator_matrix(s.basis[n], s.basis[n + 1],
                                         [&](const Monomial& m) { return l.delta().apply(m); });
        r.slices.push_back(std::move(s));
    }
    return r;
}

// ---------------------------------------------------------------------------

LoopMixedComplex::LoopMixedComplex(LoopPtr l, int top) : loop_(std::move(l)), top_(top) {}

int LoopMixedComplex::max_weight(int n) const { return loop_->max_weight(n); }

const std::vector<Monomial>& LoopMixedComplex::basis(int n, int p) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = basis_.find({n, p});
        if (it != basis_.end()) return it->second;
    }
    auto b = loop_->basis(n, p);
    std::lock_guard<std::mutex> lk(mu_);
    return basis_.emplace(std::make_pair(n, p), std::move(b)).first->second;
}

int LoopMixedComplex::dim(int n, int p) const {
    if (n < 0 || p < 0 || p > loop_->weight_limit()) return 0;
    return int(basis(n, p).size());
}

SparseMatrix LoopMixedComplex::delta(int n, int p) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = delta_.find({n, p});
        if (it != delta_.end()) return it->second;
    }
    SparseMatrix m = operator_matrix(basis(n, p), basis(n + 1, p),
                                     [&](const Monomial& x) { return loop_->delta().apply(x); });
    std::lock_guard<std::mutex> lk(mu_);
    return delta_.emplace(std::make_pair(n, p), std::move(m)).first->second;
}

SparseMatrix LoopMixedComplex::beta(int n, int p) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = beta_.find({n, p});
        if (it != beta_.end()) return it->second;
    }
    SparseMatrix m = operator_matrix(basis(n, p), basis(n - 1, p + 1),
                                     [&](const Monomial& x) { return loop_->iota().apply(x); });
    std::lock_guard<std::mutex> lk(mu_);
    return beta_.emplace(std::make_pair(n, p), std::move(m)).first->second;
}

SparseMatrix LoopMixedComplex::psi(int k, int n, int p) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = psi_.find({k, n, p});
        if (it != psi_.end()) return it->second;
    }
    AlgebraMap f = loop_->power_map(k);
    const auto& b = basis(n, p);
    SparseMatrix m = operator_matrix(b, b, [&](const Monomial& x) { return f.apply(x); });
    std::lock_guard<std::mutex> lk(mu_);
    return psi_.emplace(std::make_tuple(k, n, p), std::move(m)).first->second;
}

// ---------------------------------------------------------------------------

BaseMixedComplex::BaseMixedComplex(FreeCDGA a, int top) : a_(std::move(a)), top_(top) {}

const std::vector<Monomial>& BaseMixedComplex::basis(int n) const {
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = basis_.find(n);
        if (it != basis_.end()) return it->second;
    }
    std::vector<Monomial> b = n < 0 ? std::vector<Monomial>{} : a_.alg->basis(n);
    std::lock_guard<std::mutex> lk(mu_);
    return basis_.emplace(n, std::move(b)).first->second;
}

int BaseMixedComplex::dim(int n, int p) const { return p == 0 && n >= 0 ? int(basis(n).size()) : 0; }

SparseMatrix BaseMixedComplex::delta(int n, int p) const {
    if (p != 0) return SparseMatrix(dim(n + 1, p), dim(n, p));
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = delta_.find(n);
        if (it != delta_.end()) return it->second;
    }
    SparseMatrix m = operator_matrix(basis(n), basis(n + 1), [&](const Monomial& x) { return a_.d.apply(x); });
    std::lock_guard<std::mutex> lk(mu_);
    return delta_.emplace(n, std::move(m)).first->second;
}

SparseMatrix BaseMixedComplex::beta(int n, int p) const { return SparseMatrix(dim(n - 1, p + 1), dim(n, p)); }

SparseMatrix weight0_projection(const LoopMixedComplex& l, const BaseMixedComplex& b, int m) {
    const auto& src = l.basis(m, 0);
    return operator_matrix(src, b.basis(m), [](const Monomial& x) { return Polynomial::of(x); });
}

// ---------------------------------------------------------------------------

LoopAxiomReport verify_loop(const LoopAlgebra& l, int cutoff, const std::vector<int>& ks) {
    LoopAxiomReport r;
    const FreeAlgebra& A = l.algebra();
    const Derivation& d = l.delta();
    const Derivation& i = l.iota();
    std::vector<std::pair<int, AlgebraMap>> psis;
    for (int k : ks) psis.emplace_back(k, l.power_map(k));
    auto check = [&](bool ok, const std::string& what, const Monomial& m, int n) {
        ++r.checks;
        if (!ok && r.ok) {
            r.ok = false;
            r.witness = what + " on " + A.format(m) + " (degree " + std::to_string(n) + ")";
        }
    };
    for (int n = 0; n <= cutoff && r.ok; ++n) {
        int wmax = std::min(l.max_weight(n), l.weight_limit());
        for (int p = 0; p <= wmax; ++p)
            for (auto& m : l.basis(n, p)) {
                Polynomial dm = d.apply(m), im = i.apply(m);
                check(d.apply(dm).is_zero(), "delta^2 = 0", m, n);
                check(i.apply(im).is_zero(), "i^2 = 0", m, n);
                check((d.apply(im) + i.apply(dm)).is_zero(), "delta i + i delta = 0", m, n);
                for (auto& [t, c] : dm.terms) check(A.weight(t) == p, "delta preserves weight", m, n);
                for (auto& [t, c] : im.terms) check(A.weight(t) == p + 1, "i raises weight by one", m, n);
                for (auto& [k, f] : psis) {
                    std::string ks_ = std::to_string(k);
                    Polynomial fm = f.apply(m);
                    check(fm == Polynomial::of(m, rpow(k, p)), "Psi_" + ks_ + " = k^r on weight r", m, n);
                    check(f.apply(dm) == d.apply(fm), "Psi_" + ks_ + " delta = delta Psi_" + ks_, m, n);
                    check(f.apply(im) == i.apply(fm).scaled(k), "Psi_" + ks_ + " i = k i Psi_" + ks_, m, n);
                }
            }
    }
    return r;
}

// ---------------------------------------------------------------------------

UModel::UModel(LoopPtr l) : loop_(std::move(l)) {
    const FreeAlgebra& L = loop_->algebra();
    std::vector<Generator> gens = L.generators();
    gens.push_back({0, "u", 2, 0});
    alg_ = std::make_shared<FreeAlgebra>(gens);
    u_ = L.size();
    Polynomial u = alg_->generator(u_);
    std::vector<Polynomial> v(alg_->size());
    for (int g = 0; g < L.size(); ++g) {
        // loop polynomials are valid in the larger algebra: ids agree
        v[g] = loop_->delta().value(g) + alg_->mul(u, loop_->iota().value(g));
    }
    d_ = Derivation(alg_, 1, v);
}

std::vector<Monomial> UModel::basis(int n, int q) const {
    std::vector<Monomial> out;
    for (int r = 0; 2 * r <= n; ++r) {
        int p = q + r;
        if (p < 0) continue;
        for (auto m : loop_->basis(n - 2 * r, p)) {
            if (r) m.f.push_back({u_, r});
            out.push_back(std::move(m));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Complex UModel::complex(int q, int hi) const {
    Complex c = Complex::make("u-model(" + loop_->base().name + ")[q=" + std::to_string(q) + "]", 1, -1, hi);
    std::vector<std::vector<Monomial>> b(hi + 3);
    for (int n = -1; n <= hi + 1; ++n) b[n + 1] = n < 0 ? std::vector<Monomial>{} : basis(n, q);
    for (int n = -1; n <= hi; ++n) c.dims[n + 1] = int(b[n + 1].size());
    for (int n = -1; n < hi; ++n)
        c.set_diff(n, operator_matrix(b[n + 1], b[n + 2], [&](const Monomial& m) { return d_.apply(m); }));
    c.top_exact = false;
    return c;
}

AlgebraMap UModel::power_map(int k) const {
    if (k == 0) fail(ErrorKind::InvalidArgument, "Psi_0 is not defined");
    std::vector<Polynomial> v(alg_->size());
    int g = loop_->num_base();
    for (int j = 0; j < g; ++j) {
        v[j] = alg_->generator(j);
        v[j + g] = alg_->generator(j + g).scaled(k);
    }
    v[u_] = alg_->generator(u_).scaled(Rational(1) / k);
    return AlgebraMap(alg_, alg_, v);
}

SparseMatrix UModel::psi(int k, int n, int q) const {
    AlgebraMap f = power_map(k);
    auto b = basis(n, q);
    return operator_matrix(b, b, [&](const Monomial& m) { return f.apply(m); });
}

}  // namespace cdgacyc

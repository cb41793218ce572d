#include "cdgacyc/minimal_model.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "cdgacyc/error.hpp"

namespace cdgacyc {

SubquotientBasis CdgaView::cohomology(int n) const {
    SparseMatrix in = n >= 1 ? d(n - 1) : SparseMatrix(dim(n), 0);
    return cohomology_at(in, d(n), name() + " degree " + std::to_string(n));
}

// ---------------------------------------------------------------------------

FreeView::FreeView(FreeCDGA a, int cutoff) : a_(std::move(a)), cutoff_(cutoff) {
    if (a_.alg->has_degree_zero()) fail(ErrorKind::Domain, "free view needs generators of positive degree");
}

const std::vector<Monomial>& FreeView::basis(int n) const {
    auto it = basis_.find(n);
    if (it != basis_.end()) return it->second;
    std::vector<Monomial> b;
    if (n >= 0 && n <= cutoff_ + 1) b = a_.alg->basis(n);
    index_[n] = index_of(b);
    return basis_.emplace(n, std::move(b)).first->second;
}

int FreeView::dim(int n) const { return int(basis(n).size()); }

SparseMatrix FreeView::d(int n) const {
    return operator_matrix(basis(n), basis(n + 1), [&](const Monomial& m) { return a_.d.apply(m); });
}

Vector FreeView::coords(const Polynomial& p) const {
    int n = a_.alg->degree(p);
    if (n < 0) return {};
    basis(n);
    return coefficients(p, index_.at(n), dim(n));
}

Polynomial FreeView::poly(int n, const Vector& v) const { return from_coefficients(v, basis(n)); }

Vector FreeView::mul(int a, const Vector& x, int b, const Vector& y) const {
    Polynomial p = a_.alg->mul(poly(a, x), poly(b, y));
    basis(a + b);
    return coefficients(p, index_.at(a + b), dim(a + b));
}

Vector FreeView::unit() const { return {Rational(1)}; }

// ---------------------------------------------------------------------------

namespace {
std::map<int, Rational> to_map(const std::vector<Term>& t) {
    std::map<int, Rational> m;
    for (auto& x : t) {
        if (x.coeff == 0) continue;
        m[x.elt] += x.coeff;
        if (m[x.elt] == 0) m.erase(x.elt);
    }
    return m;
}
const std::map<int, Rational> kEmpty;
}  // namespace

int FiniteCDGA::find(const std::string& name) const {
    for (size_t i = 0; i < basis_.size(); ++i)
        if (basis_[i].name == name) return int(i);
    return -1;
}

const std::vector<int>& FiniteCDGA::in_degree(int n) const {
    static const std::vector<int> none;
    auto it = by_degree_.find(n);
    return it == by_degree_.end() ? none : it->second;
}

int FiniteCDGA::dim(int n) const { return int(in_degree(n).size()); }

const std::map<int, Rational>& FiniteCDGA::product(int i, int j) const {
    auto it = mul_.find({i, j});
    return it == mul_.end() ? kEmpty : it->second;
}

SparseMatrix FiniteCDGA::d(int n) const {
    SparseMatrix m(dim(n + 1), dim(n));
    auto& src = in_degree(n);
    for (size_t c = 0; c < src.size(); ++c)
        for (auto& [e, v] : d_[src[c]]) m.set(local_[e], int(c), v);
    return m;
}

Vector FiniteCDGA::mul(int a, const Vector& x, int b, const Vector& y) const {
    Vector out = zero_vector(dim(a + b));
    auto &ea = in_degree(a), &eb = in_degree(b);
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < y.size(); ++j) {
            if (y[j] == 0) continue;
            for (auto& [e, v] : product(ea[i], eb[j])) out[local_[e]] += x[i] * y[j] * v;
        }
    }
    return out;
}

Vector FiniteCDGA::unit() const { return {Rational(1)}; }

FiniteCDGA FiniteCDGA::make(std::string name, std::vector<FiniteElement> basis,
                            const std::vector<std::tuple<int, int, std::vector<Term>>>& products,
                            const std::vector<std::pair<int, std::vector<Term>>>& differential) {
    FiniteCDGA a;
    a.name_ = std::move(name);
    a.basis_ = std::move(basis);
    int n = int(a.basis_.size());
    std::set<std::string> names;
    for (int i = 0; i < n; ++i) {
        auto& e = a.basis_[i];
        if (e.name.empty()) fail(ErrorKind::Domain, "basis element without a name");
        if (!names.insert(e.name).second) fail(ErrorKind::Domain, "duplicate basis element '" + e.name + "'");
        if (e.degree < 0) fail(ErrorKind::Domain, "basis element '" + e.name + "' has negative degree");
        a.local_.push_back(int(a.by_degree_[e.degree].size()));
        a.by_degree_[e.degree].push_back(i);
        a.top_ = std::max(a.top_, e.degree);
    }
    if (a.dim(0) != 1) fail(ErrorKind::Domain, "degree 0 must be spanned by the unit (found " + std::to_string(a.dim(0)) + " elements)");
    a.unit_ = a.in_degree(0)[0];
    auto deg = [&](int i) { return a.basis_[i].degree; };
    auto nm = [&](int i) { return "'" + a.basis_[i].name + "'"; };
    auto check_terms = [&](const std::vector<Term>& t, int want, const std::string& where) {
        for (auto& x : t) {
            if (x.elt < 0 || x.elt >= n) fail(ErrorKind::Domain, where + ": unknown basis element");
            if (deg(x.elt) != want)
                fail(ErrorKind::Domain, where + ": term " + nm(x.elt) + " has degree " + std::to_string(deg(x.elt)) +
                                            ", expected " + std::to_string(want));
        }
    };
    // products
    for (int i = 0; i < n; ++i) {
        a.mul_[{a.unit_, i}] = {{i, Rational(1)}};
        a.mul_[{i, a.unit_}] = {{i, Rational(1)}};
    }
    std::set<std::pair<int, int>> given;
    for (auto& [i, j, t] : products) {
        if (i < 0 || j < 0 || i >= n || j >= n) fail(ErrorKind::Domain, "product of unknown basis elements");
        std::string where = "product " + nm(i) + "*" + nm(j);
        check_terms(t, deg(i) + deg(j), where);
        auto m = to_map(t);
        int sgn = (deg(i) * deg(j)) % 2 ? -1 : 1;
        std::map<int, Rational> mirror;
        for (auto& [e, v] : m) mirror[e] = v * sgn;
        for (auto [key, val] : {std::make_pair(std::make_pair(i, j), m), std::make_pair(std::make_pair(j, i), mirror)}) {
            if (given.count(key) || key.first == a.unit_ || key.second == a.unit_) {
                if (a.product(key.first, key.second) != val)
                    fail(ErrorKind::Domain, where + " conflicts with graded commutativity or the unit");
            }
            given.insert(key);
            if (val.empty())
                a.mul_.erase(key);
            else
                a.mul_[key] = val;
        }
    }
    // differential
    a.d_.assign(n, {});
    for (auto& [i, t] : differential) {
        if (i < 0 || i >= n) fail(ErrorKind::Domain, "differential of an unknown basis element");
        check_terms(t, deg(i) + 1, "differential of " + nm(i));
        a.d_[i] = to_map(t);
    }
    if (!a.d_[a.unit_].empty()) fail(ErrorKind::Domain, "the unit must be a cocycle");
    auto prod = [&](const std::map<int, Rational>& x, const std::map<int, Rational>& y) {
        std::map<int, Rational> out;
        for (auto& [p, u] : x)
            for (auto& [q, v] : y)
                for (auto& [e, w] : a.product(p, q)) out[e] += u * v * w;
        std::erase_if(out, [](auto& kv) { return kv.second == 0; });
        return out;
    };
    auto dmap = [&](const std::map<int, Rational>& x) {
        std::map<int, Rational> out;
        for (auto& [p, u] : x)
            for (auto& [e, w] : a.d_[p]) out[e] += u * w;
        std::erase_if(out, [](auto& kv) { return kv.second == 0; });
        return out;
    };
    auto add = [](std::map<int, Rational> x, const std::map<int, Rational>& y, int s) {
        for (auto& [e, v] : y) x[e] += s * v;
        std::erase_if(x, [](auto& kv) { return kv.second == 0; });
        return x;
    };
    for (int i = 0; i < n; ++i) {
        if (!dmap(a.d_[i]).empty()) fail(ErrorKind::Precondition, "d∘d != 0 on " + nm(i));
        for (int j = 0; j < n; ++j) {
            std::map<int, Rational> ei{{i, 1}}, ej{{j, 1}};
            auto lhs = dmap(prod(ei, ej));
            auto rhs = add(prod(a.d_[i], ej), prod(ei, a.d_[j]), deg(i) % 2 ? -1 : 1);
            if (lhs != rhs) fail(ErrorKind::Precondition, "Leibniz rule fails on " + nm(i) + "*" + nm(j));
            for (int k = 0; k < n; ++k) {
                if (deg(i) + deg(j) + deg(k) > a.top_) continue;
                std::map<int, Rational> ek{{k, 1}};
                if (prod(prod(ei, ej), ek) != prod(ei, prod(ej, ek)))
                    fail(ErrorKind::Precondition, "associativity fails on " + nm(i) + "*" + nm(j) + "*" + nm(k));
            }
        }
    }
    return a;
}

FiniteCDGA truncate(const FreeCDGA& a, int top) {
    FreeView v(a, top);
    std::vector<FiniteElement> basis;
    std::map<Monomial, int> id;
    for (int n = 0; n <= top; ++n)
        for (auto& m : v.basis(n)) {
            id[m] = int(basis.size());
            basis.push_back({m.is_unit() ? "1" : a.alg->format(m), n});
        }
    std::vector<std::tuple<int, int, std::vector<Term>>> prods;
    std::vector<std::pair<int, std::vector<Term>>> diff;
    auto terms = [&](const Polynomial& p) {
        std::vector<Term> t;
        for (auto& [m, c] : p.terms)
            if (id.count(m)) t.push_back({c, id.at(m)});
        return t;
    };
    for (auto& [m, i] : id) {
        if (a.alg->degree(m) < top) diff.push_back({i, terms(a.d.apply(m))});
        for (auto& [m2, j] : id) {
            if (i > j || m.is_unit() || m2.is_unit()) continue;
            if (a.alg->degree(m) + a.alg->degree(m2) > top) continue;
            auto t = terms(a.alg->mul(Polynomial::of(m), Polynomial::of(m2)));
            if (!t.empty()) prods.push_back({i, j, t});
        }
    }
    return FiniteCDGA::make(a.name + "<=" + std::to_string(top), basis, prods, diff);
}

// ---------------------------------------------------------------------------

CDGAMorphism::CDGAMorphism(FreeCDGA src, std::shared_ptr<const CdgaView> tgt, std::vector<Vector> values)
    : src_(std::move(src)), tgt_(std::move(tgt)), values_(std::move(values)) {
    if (int(values_.size()) != src_.num_generators())
        fail(ErrorKind::Domain, "morphism needs one value per generator");
    for (int g = 0; g < src_.num_generators(); ++g) {
        auto& gen = src_.alg->gen(g);
        if (int(values_[g].size()) != tgt_->dim(gen.degree))
            fail(ErrorKind::Domain, "value on '" + gen.name + "' is not a degree " + std::to_string(gen.degree) +
                                        " element of " + tgt_->name());
    }
}

Vector CDGAMorphism::apply(const Monomial& m) const {
    Vector acc = tgt_->unit();
    int deg = 0;
    for (auto& [g, e] : m.f) {
        int dg = src_.alg->gen(g).degree;
        for (int r = 0; r < e; ++r) {
            if (deg + dg > tgt_->top()) return zero_vector(tgt_->dim(src_.alg->degree(m)));
            acc = tgt_->mul(deg, acc, dg, values_[g]);
            deg += dg;
        }
    }
    return acc;
}

SparseMatrix CDGAMorphism::matrix(int n) const {
    auto b = src_.alg->basis(n);
    std::vector<Vector> cols;
    int rows = tgt_->dim(n);
    for (auto& m : b) cols.push_back(n > tgt_->top() ? zero_vector(rows) : apply(m));
    return SparseMatrix::from_columns(rows, cols);
}

void CDGAMorphism::verify(int cutoff) const {
    for (int g = 0; g < src_.num_generators(); ++g) {
        auto& gen = src_.alg->gen(g);
        if (gen.degree > cutoff || gen.degree + 1 > tgt_->top()) continue;
        // theta(dv) against d(theta v)
        Vector lhs = zero_vector(tgt_->dim(gen.degree + 1));
        for (auto& [m, c] : src_.d.value(g).terms) {
            Vector im = apply(m);
            for (size_t i = 0; i < lhs.size(); ++i) lhs[i] += c * im[i];
        }
        Vector rhs = tgt_->d(gen.degree) * values_[g];
        if (lhs != rhs)
            fail(ErrorKind::Precondition, "morphism does not commute with d on generator '" + gen.name + "'");
    }
}

// ---------------------------------------------------------------------------

AuditReport verify_minimal(const FreeCDGA& a, int cutoff) {
    AuditReport r;
    auto& dec = r.add("d(V) lies in the square of the augmentation ideal");
    bool v1 = false;
    for (auto& g : a.alg->generators()) {
        if (g.degree > cutoff) continue;
        if (g.degree == 1) v1 = true;
        ++dec.checked;
        for (auto& [m, c] : a.d.value(g.id).terms)
            if (m.length() < 2) {
                dec.status = "FAIL";
                dec.detail = "d(" + g.name + ") has the linear term " + a.alg->format(Polynomial::of(m, c));
                break;
            }
        if (dec.failed()) break;
    }
    auto& two = r.add("d vanishes on degree-2 generators");
    for (auto& g : a.alg->generators()) {
        if (g.degree != 2) continue;
        ++two.checked;
        if (!a.d.value(g.id).is_zero()) {
            two.status = "FAIL";
            two.detail = "d(" + g.name + ") = " + a.alg->format(a.d.value(g.id));
            break;
        }
    }
    auto& wo = r.add("degree-1 generators admit a well-ordered filtration");
    if (v1) {
        wo.status = "SKIPPED";
        wo.detail = "degree-1 generators present; the well-ordering condition is not checked";
    } else {
        wo.detail = "vacuous: no degree-1 generators";
    }
    return r;
}

QuasiIsoReport is_quasi_iso(const CDGAMorphism& f, int cutoff) {
    QuasiIsoReport r;
    r.window = std::min(cutoff - 1, f.target().top());
    FreeView src(f.source(), cutoff + 1);
    for (int n = 0; n <= r.window; ++n) {
        auto hs = src.cohomology(n);
        auto ht = f.target().cohomology(n);
        SparseMatrix m = induced_map(f.matrix(n), hs, ht, "H^" + std::to_string(n) + "(f)");
        int rk = rank(m);
        r.rows.push_back({n, hs.dim(), ht.dim(), rk});
        if (r.ok && (rk != hs.dim() || rk != ht.dim())) {
            r.ok = false;
            r.witness = "H^" + std::to_string(n) + "(f) has rank " + std::to_string(rk) + " between dimensions " +
                        std::to_string(hs.dim()) + " and " + std::to_string(ht.dim());
        }
    }
    // beyond the target's top degree the source must be acyclic too
    for (int n = r.window + 1; n <= cutoff - 1; ++n) {
        int d = src.cohomology(n).dim();
        r.rows.push_back({n, d, 0, 0});
        if (r.ok && d) {
            r.ok = false;
            r.witness = "H^" + std::to_string(n) + " of the source is nonzero above the target's top degree";
        }
    }
    r.window = cutoff - 1;
    return r;
}

// ---------------------------------------------------------------------------

namespace {

struct Builder {
    const FiniteCDGA& b;
    std::shared_ptr<const FiniteCDGA> bp;
    std::vector<std::pair<std::string, int>> gens;
    std::vector<Polynomial> dvals;
    std::vector<Vector> theta;
    std::mt19937 rng;
    bool randomize;

    Rational pick() { return Rational(int(rng() % 7) - 3); }
    Rational pick_nonzero() {
        int v = int(rng() % 6) + 1;
        return Rational(rng() % 2 ? v : -v);
    }

    FreeCDGA current() const { return make_free_cdga("model", gens, dvals); }

    std::string fresh_name(int deg) {
        int count = 0;
        for (auto& [n, d] : gens)
            if (d == deg) ++count;
        return "x" + std::to_string(deg) + (count ? "_" + std::to_string(count) : "");
    }

    void add_generator(int deg, const Polynomial& d, const Vector& value) {
        gens.push_back({fresh_name(deg), deg});
        dvals.push_back(d);
        theta.push_back(value);
    }

    CDGAMorphism morphism(const FreeCDGA& m) const { return CDGAMorphism(m, bp, theta); }

    // complement of the image of H^n(theta) in H^n(B): cocycles of degree n
    void make_surjective(int n) {
        if (n > b.top()) return;
        FreeCDGA m = current();
        FreeView v(m, n + 1);
        auto hm = v.cohomology(n);
        auto hb = b.cohomology(n);
        if (!hb.dim()) return;
        SparseMatrix f = induced_map(morphism(m).matrix(n), hm, hb, "H^" + std::to_string(n) + "(theta)");
        std::vector<Vector> cols;
        for (int c = 0; c < f.cols(); ++c) cols.push_back(f.column(c));
        int r = rank(SparseMatrix::from_columns(hb.dim(), cols));
        SparseMatrix dB = n >= 1 ? b.d(n - 1) : SparseMatrix(b.dim(n), 0);
        for (int i = 0; i < hb.dim(); ++i) {
            auto trial = cols;
            trial.push_back(unit_vector(hb.dim(), i));
            int r2 = rank(SparseMatrix::from_columns(hb.dim(), trial));
            if (r2 == r) continue;
            cols = std::move(trial);
            r = r2;
            Vector rep = hb.reps[i];
            if (randomize) {
                Rational s = pick_nonzero();
                for (auto& x : rep) x *= s;
                for (int c = 0; c < dB.cols(); ++c) {
                    Vector bd = dB.column(c);
                    Rational t = pick();
                    for (size_t k = 0; k < rep.size(); ++k) rep[k] += t * bd[k];
                }
            }
            add_generator(n, Polynomial(), rep);
        }
    }

    // kill the kernel of H^{n+1}(theta) with generators of degree n
    void make_injective(int n) {
        FreeCDGA m = current();
        FreeView v(m, n + 2);
        auto hm = v.cohomology(n + 1);
        if (!hm.dim()) return;
        SparseMatrix f;
        if (n + 1 <= b.top()) {
            auto hb = b.cohomology(n + 1);
            f = induced_map(morphism(m).matrix(n + 1), hm, hb, "H^" + std::to_string(n + 1) + "(theta)");
        } else {
            f = SparseMatrix(0, hm.dim());
        }
        auto ker = kernel_basis(f);
        SparseMatrix th = morphism(m).matrix(n + 1);
        SparseMatrix dB = b.d(n);
        auto cyc = kernel_basis(dB);
        for (auto& c : ker) {
            if (randomize) {
                Rational s = pick_nonzero();
                for (auto& x : c) x *= s;
            }
            Vector z = zero_vector(v.dim(n + 1));
            for (size_t i = 0; i < c.size(); ++i)
                for (size_t k = 0; k < z.size(); ++k) z[k] += c[i] * hm.reps[i][k];
            Vector tz = th * z;
            Vector prim = zero_vector(b.dim(n));
            if (!is_zero(tz)) {
                auto s = solve(dB, tz);
                if (!s) fail(ErrorKind::Internal, "model builder: theta(z) is not exact");
                prim = *s;
            }
            if (randomize)
                for (auto& y : cyc) {
                    Rational t = pick();
                    for (size_t k = 0; k < prim.size(); ++k) prim[k] += t * y[k];
                }
            add_generator(n, v.poly(n + 1, z), prim);
        }
    }
};

}  // namespace

MinimalModel build_minimal_model(const FiniteCDGA& b, int cutoff, unsigned seed) {
    if (b.cohomology(1).dim() != 0)
        fail(ErrorKind::Unsupported, "minimal model construction requires homological 1-connectedness (H^1 != 0)");
    auto bp = std::make_shared<const FiniteCDGA>(b);
    Builder bl{*bp, bp, {}, {}, {}, std::mt19937(seed), seed != 0};
    for (int n = 2; n <= cutoff; ++n) {
        bl.make_surjective(n);
        bl.make_injective(n);
    }
    MinimalModel mm;
    mm.model = make_free_cdga("model(" + b.name() + ")", bl.gens, bl.dvals);
    mm.theta = std::make_shared<CDGAMorphism>(mm.model, bp, bl.theta);
    mm.cutoff = cutoff;
    mm.theta->verify(cutoff);
    return mm;
}

int model_degree_for(const FunctorOptions& o) { return 3 * o.cutoff + 2; }

ModelledFunctors functor_on_cdga(const FiniteCDGA& b, FunctorOptions o, unsigned seed) {
    ModelledFunctors r;
    r.model = build_minimal_model(b, model_degree_for(o), seed);
    r.functors = std::make_unique<Functors>(r.model.model, o);
    return r;
}

}  // namespace cdgacyc

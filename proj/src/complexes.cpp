#include "cdgacyc/complexes.hpp"

#include <algorithm>
#include <sstream>

#include "cdgacyc/error.hpp"

namespace cdgacyc {

namespace {
const std::vector<Slot> kNoSlots;

std::string deg_str(const std::string& name, int n) { return name + " degree " + std::to_string(n); }
}  // namespace

Complex Complex::make(const std::string& name, int dir, int lo, int hi) {
    Complex c;
    c.name = name;
    c.dir = dir;
    c.lo = lo;
    c.hi = hi;
    int len = std::max(0, hi - lo + 1);
    c.dims.assign(len, 0);
    c.slots.assign(len, {});
    c.complete.assign(len, 1);
    c.d.assign(len, SparseMatrix());
    return c;
}

bool Complex::is_complete(int n) const {
    if (n < lo) return bottom_exact;
    if (n > hi) return top_exact;
    return complete[n - lo];
}

const std::vector<Slot>& Complex::slots_at(int n) const { return in_range(n) ? slots[n - lo] : kNoSlots; }

SparseMatrix Complex::diff(int n) const {
    if (in_range(n) && in_range(n + dir)) return d[n - lo];
    return SparseMatrix(dim(n + dir), dim(n));
}

void Complex::set_diff(int n, SparseMatrix m) {
    if (!in_range(n) || !in_range(n + dir)) fail(ErrorKind::Internal, "differential outside window");
    if (m.rows() != dim(n + dir) || m.cols() != dim(n)) fail(ErrorKind::Internal, "differential has wrong shape");
    d[n - lo] = std::move(m);
}

bool Complex::certified(int n) const { return is_complete(n - 1) && is_complete(n) && is_complete(n + 1); }

SubquotientBasis Complex::cohomology(int n) const {
    return cohomology_at(diff(n - dir), diff(n), deg_str(name, n));
}

const SparseMatrix& ChainMap::at(int n) const {
    auto it = f.find(n);
    if (it == f.end()) fail(ErrorKind::Internal, "chain map undefined in degree " + std::to_string(n));
    return it->second;
}

Complex reindex(const Complex& c, int shift, const std::string& name) {
    Complex r = c;
    r.lo -= shift;
    r.hi -= shift;
    if (!name.empty()) r.name = name;
    return r;
}

void check_chain_map(const ChainMap& f, const Complex& src, const Complex& tgt) {
    int dir = src.dir;
    for (auto& [n, m] : f.f) {
        if (!f.has(n + dir)) continue;
        if (!src.is_complete(n) || !src.is_complete(n + dir) || !tgt.is_complete(n) || !tgt.is_complete(n + dir))
            continue;
        SparseMatrix lhs = f.at(n + dir) * src.diff(n);
        SparseMatrix rhs = tgt.diff(n) * m;
        if (!(lhs == rhs)) {
            SparseMatrix diff = lhs - rhs;
            int col = -1;
            for (int i = 0; i < diff.rows() && col < 0; ++i)
                if (!diff.row(i).empty()) col = diff.row(i).begin()->first;
            fail(ErrorKind::Precondition, "not a chain map at degree " + std::to_string(n) + " (" + src.name +
                                              " -> " + tgt.name + "), witness basis vector " + std::to_string(col));
        }
    }
}

Complex mapping_cone(const ChainMap& f, const Complex& A, const Complex& B, bool check) {
    if (A.dir != B.dir) fail(ErrorKind::InvalidArgument, "cone of complexes with different directions");
    if (check) check_chain_map(f, A, B);
    int dir = B.dir;
    bool exact_low = A.bottom_exact && B.bottom_exact;
    int lo = exact_low ? std::min(B.lo, A.lo - dir) : std::max(B.lo, A.lo - dir);
    int hi = std::min(B.hi, A.hi - dir);
    Complex c = Complex::make("Cone(" + A.name + " -> " + B.name + ")", dir, lo, hi);
    c.bottom_exact = exact_low;
    c.top_exact = A.top_exact && B.top_exact;
    for (int n = lo; n <= hi; ++n) {
        int k = n - lo;
        c.dims[k] = B.dim(n) + A.dim(n + dir);
        for (auto s : B.slots_at(n)) {
            s.part = 0;
            c.slots[k].push_back(s);
        }
        for (auto s : A.slots_at(n + dir)) {
            s.part = 1;
            s.offset += B.dim(n);
            c.slots[k].push_back(s);
        }
        c.complete[k] = B.is_complete(n) && A.is_complete(n + dir);
    }
    for (int n = lo; n <= hi; ++n) {
        if (!c.in_range(n + dir)) continue;
        SparseMatrix m(c.dim(n + dir), c.dim(n));
        m.place(B.diff(n), 0, 0);
        if (f.has(n + dir) && A.dim(n + dir) > 0) m.place(f.at(n + dir), 0, B.dim(n));
        m.place(A.diff(n + dir), B.dim(n + dir), B.dim(n), -1);
        c.set_diff(n, std::move(m));
    }
    return c;
}

// ---------------------------------------------------------------------------

SparseMatrix MixedComplex::psi(int k, int n, int p) const {
    return SparseMatrix::identity(dim(n, p)).scaled(weighted() ? rpow(k, p) : Rational(1));
}

int TableMixedComplex::max_weight(int n) const {
    int w = 0;
    for (auto& [key, d] : dims_)
        if (key.first == n && d > 0) w = std::max(w, key.second);
    return w;
}

int TableMixedComplex::dim(int n, int p) const {
    auto it = dims_.find({n, p});
    return it == dims_.end() ? 0 : it->second;
}

SparseMatrix TableMixedComplex::delta(int n, int p) const {
    auto it = delta_.find({n, p});
    if (it != delta_.end()) return it->second;
    return SparseMatrix(dim(n + 1, p), dim(n, p));
}

SparseMatrix TableMixedComplex::beta(int n, int p) const {
    auto it = beta_.find({n, p});
    if (it != beta_.end()) return it->second;
    return SparseMatrix(dim(n - 1, beta_weight(p)), dim(n, p));
}

SparseMatrix TableMixedComplex::psi(int k, int n, int p) const {
    auto it = psi_.find({k, n, p});
    if (it != psi_.end()) return it->second;
    return MixedComplex::psi(k, n, p);
}

std::shared_ptr<TableMixedComplex> one_point_complex(bool weighted) {
    auto m = std::make_shared<TableMixedComplex>(weighted, 1 << 20);
    m->set_dim(0, 0, 1);
    m->set_label("one-point");
    return m;
}

AxiomReport check_mixed_axioms(const MixedComplex& M, int max_degree, const std::vector<int>& ks) {
    AxiomReport r;
    auto bad = [&](int n, int p, const std::string& what) {
        if (r.ok) {
            r.ok = false;
            r.witness = what + " fails on block (" + std::to_string(n) + "," + std::to_string(p) + ")";
        }
    };
    int top = std::min(max_degree, M.top());
    for (int n = 0; n <= top && r.ok; ++n) {
        int wmax = std::min(M.max_weight(n), M.weight_limit());
        for (int p = 0; p <= wmax && r.ok; ++p) {
            if (M.dim(n, p) == 0) continue;
            int bw = M.beta_weight(p);
            if (n + 2 <= M.top()) {
                ++r.checks;
                if (!(M.delta(n + 1, p) * M.delta(n, p)).is_zero()) bad(n, p, "delta^2 = 0");
            }
            if (n >= 2 && M.known(n - 2, M.beta_weight(bw))) {
                ++r.checks;
                if (!(M.beta(n - 1, bw) * M.beta(n, p)).is_zero()) bad(n, p, "beta^2 = 0");
            }
            if (n + 1 <= M.top() && n >= 1 && M.known(n - 1, bw)) {
                ++r.checks;
                SparseMatrix s = M.beta(n + 1, p) * M.delta(n, p) + M.delta(n - 1, bw) * M.beta(n, p);
                if (!s.is_zero()) bad(n, p, "beta*delta + delta*beta = 0");
            }
            for (int k : ks) {
                if (n + 1 <= M.top()) {
                    ++r.checks;
                    if (!(M.psi(k, n + 1, p) * M.delta(n, p) == M.delta(n, p) * M.psi(k, n, p)))
                        bad(n, p, "Psi_" + std::to_string(k) + " delta = delta Psi_" + std::to_string(k));
                }
                if (n >= 1 && M.known(n - 1, bw)) {
                    ++r.checks;
                    if (!(M.psi(k, n - 1, bw) * M.beta(n, p) == (M.beta(n, p) * M.psi(k, n, p)).scaled(k)))
                        bad(n, p, "Psi_" + std::to_string(k) + " beta = k beta Psi_" + std::to_string(k));
                }
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

SubMixedComplex::SubMixedComplex(MixedPtr parent, BasisFn basis, std::string label)
    : parent_(std::move(parent)), fn_(std::move(basis)), label_(std::move(label)) {}

const SparseMatrix& SubMixedComplex::basis_of(int n, int p) const {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find({n, p});
    if (it != cache_.end()) return it->second;
    return cache_.emplace(std::make_pair(n, p), fn_(n, p)).first->second;
}

int SubMixedComplex::dim(int n, int p) const {
    if (n < 0 || p < 0 || parent_->dim(n, p) == 0) return 0;
    return basis_of(n, p).cols();
}

SparseMatrix SubMixedComplex::restrict(const SparseMatrix& op, int n, int p, int tn, int tp) const {
    int sd = dim(n, p), td = dim(tn, tp);
    SparseMatrix out(td, sd);
    if (sd == 0) return out;
    SparseMatrix src = basis_of(n, p);
    SparseMatrix img = op * src;
    if (td == 0) {
        if (!img.is_zero()) fail(ErrorKind::Internal, label_ + " is not closed under the mixed structure");
        return out;
    }
    Elimination e(basis_of(tn, tp));
    for (int j = 0; j < sd; ++j) {
        auto x = e.solve(img.column(j));
        if (!x)
            fail(ErrorKind::Internal, label_ + " is not closed under the mixed structure at block (" +
                                          std::to_string(n) + "," + std::to_string(p) + ")");
        for (int i = 0; i < td; ++i) out.set(i, j, (*x)[i]);
    }
    return out;
}

SparseMatrix SubMixedComplex::delta(int n, int p) const {
    if (dim(n, p) == 0) return SparseMatrix(dim(n + 1, p), 0);
    return restrict(parent_->delta(n, p), n, p, n + 1, p);
}

SparseMatrix SubMixedComplex::beta(int n, int p) const {
    int bw = beta_weight(p);
    if (dim(n, p) == 0 || n == 0) return SparseMatrix(dim(n - 1, bw), dim(n, p));
    return restrict(parent_->beta(n, p), n, p, n - 1, bw);
}

SparseMatrix SubMixedComplex::psi(int k, int n, int p) const {
    if (dim(n, p) == 0) return SparseMatrix(0, 0);
    return restrict(parent_->psi(k, n, p), n, p, n, p);
}

MixedPtr augmentation_ideal(MixedPtr m) {
    const MixedComplex* raw = m.get();
    auto fn = [raw](int n, int p) {
        int d = raw->dim(n, p);
        if (n == 0 && p == 0) return SparseMatrix(d, 0);
        return SparseMatrix::identity(d);
    };
    return std::make_shared<SubMixedComplex>(m, fn, "augmentation ideal of " + m->label());
}

MixedPtr image_of_beta(MixedPtr m) {
    const MixedComplex* raw = m.get();
    auto fn = [raw](int n, int p) {
        int d = raw->dim(n, p);
        int sp = raw->weighted() ? p - 1 : p;
        if (sp < 0 || raw->dim(n + 1, sp) == 0) return SparseMatrix(d, 0);
        SparseMatrix b = raw->beta(n + 1, sp);
        Elimination e(b);
        std::vector<Vector> cols;
        for (int c : e.pivot_cols()) cols.push_back(b.column(c));
        return SparseMatrix::from_columns(d, cols);
    };
    return std::make_shared<SubMixedComplex>(m, fn, "image of beta in " + m->label());
}

// ---------------------------------------------------------------------------

std::string tower_name(Tower t, Side s) {
    std::string base = s == Side::Cochain ? "C" : "H";
    switch (t) {
        case Tower::Plain: return base;
        case Tower::Plus: return "+" + base;
        case Tower::Minus: return "-" + base;
        case Tower::Periodic: return "P" + base;
    }
    return base;
}

int natural_lo(Tower t, Side s, std::optional<int> q) {
    if (s == Side::Cochain && (t == Tower::Minus || t == Tower::Periodic)) {
        if (!q) return -1;
        return -2 * std::max(*q, 0) - 1;
    }
    return -1;
}

namespace {

std::vector<Slot> slots_for(const MixedComplex& M, const DerivedParams& sp, int n, bool& complete) {
    complete = true;
    std::vector<int> ms;
    bool with_q = M.weighted() && sp.q.has_value();
    int par = ((n % 2) + 2) % 2;
    auto upper = [&]() -> long {
        long b = LONG_MAX;
        if (with_q) b = sp.side == Side::Cochain ? long(n) + 2L * *sp.q : 2L * *sp.q - n;
        if (sp.trunc != INT_MAX) b = std::min(b, long(n) + 2L * sp.trunc);
        if (b == LONG_MAX)
            fail(ErrorKind::Unsupported, tower_name(sp.tower, sp.side) +
                                             ": untruncated infinite product without weights is not supported");
        return b;
    };
    switch (sp.tower) {
        case Tower::Plain: ms.push_back(n); break;
        case Tower::Plus:
            for (int m = n; m >= 0; m -= 2) ms.push_back(m);
            std::reverse(ms.begin(), ms.end());
            break;
        case Tower::Minus: {
            long b = upper();
            for (long m = n; m <= b; m += 2) ms.push_back(int(m));
            break;
        }
        case Tower::Periodic: {
            long b = upper();
            for (long m = par; m <= b; m += 2) ms.push_back(int(m));
            break;
        }
    }
    std::vector<Slot> out;
    int off = 0;
    for (int m : ms) {
        if (m < 0) continue;
        std::vector<int> ps;
        if (with_q) {
            int p = sp.side == Side::Cochain ? *sp.q - (m - n) / 2 : *sp.q - (m + n) / 2;
            if (p < 0) continue;
            ps.push_back(p);
        } else if (M.weighted()) {
            int w = M.max_weight(m);
            if (w > M.weight_limit()) {
                complete = false;
                w = M.weight_limit();
            }
            if (w == INT_MAX) fail(ErrorKind::Unsupported, "unbounded weights need a weight cutoff");
            for (int p = 0; p <= w; ++p) ps.push_back(p);
        } else {
            ps.push_back(0);
        }
        for (int p : ps) {
            if (!M.known(m, p)) {
                complete = false;
                continue;
            }
            int sz = M.dim(m, p);
            if (sz == 0) continue;
            out.push_back({m, p, 0, off, sz});
            off += sz;
        }
    }
    if (sp.trunc != INT_MAX && (sp.tower == Tower::Minus || sp.tower == Tower::Periodic) && !with_q) complete = false;
    return out;
}

const Slot* find_slot(const std::vector<Slot>& v, int m, int p, int part = 0) {
    for (auto& s : v)
        if (s.m == m && s.p == p && s.part == part) return &s;
    return nullptr;
}

}  // namespace

Complex derived_complex(const MixedComplex& M, const DerivedParams& sp) {
    int dir = sp.side == Side::Cochain ? 1 : -1;
    std::string nm = tower_name(sp.tower, sp.side) + "(" + M.label() + ")";
    if (sp.q) nm += "[q=" + std::to_string(*sp.q) + "]";
    Complex c = Complex::make(nm, dir, sp.lo, sp.hi);
    int total = 0;
    for (int n = sp.lo; n <= sp.hi; ++n) {
        bool ok;
        auto s = slots_for(M, sp, n, ok);
        int k = n - sp.lo;
        c.slots[k] = std::move(s);
        c.complete[k] = ok;
        int d = 0;
        for (auto& x : c.slots[k]) d += x.size;
        c.dims[k] = d;
        total += d;
    }
    {
        bool ok;
        auto below = slots_for(M, sp, sp.lo - 1, ok);
        c.bottom_exact = ok && below.empty();
        auto above = slots_for(M, sp, sp.hi + 1, ok);
        c.top_exact = ok && above.empty();
    }
    for (int n = sp.lo; n <= sp.hi; ++n) {
        int t = n + dir;
        if (!c.in_range(t)) continue;
        SparseMatrix m(c.dim(t), c.dim(n));
        const auto& ts = c.slots_at(t);
        for (auto& s : c.slots_at(n)) {
            if (auto* x = find_slot(ts, s.m + 1, s.p)) m.place(M.delta(s.m, s.p), x->offset, s.offset);
            if (auto* x = find_slot(ts, s.m - 1, M.beta_weight(s.p))) m.place(M.beta(s.m, s.p), x->offset, s.offset);
        }
        c.set_diff(n, std::move(m));
    }
    return c;
}

SparseMatrix derived_psi(const MixedComplex& M, const Complex& c, int k, int n) {
    if (c.dir != 1) fail(ErrorKind::Unsupported, "power maps are defined on the cochain side");
    if (k == 0) fail(ErrorKind::InvalidArgument, "Psi_0 is not defined");
    SparseMatrix out(c.dim(n), c.dim(n));
    for (auto& s : c.slots_at(n)) out.place(M.psi(k, s.m, s.p), s.offset, s.offset, rpow(k, (s.m - n) / 2));
    return out;
}

ChainMap slot_map(const Complex& src, const Complex& tgt, const BlockFn& fn) {
    ChainMap f;
    int lo = std::min(src.lo, tgt.lo), hi = std::max(src.hi, tgt.hi);
    for (int n = lo; n <= hi; ++n) {
        SparseMatrix m(tgt.dim(n), src.dim(n));
        for (auto& s : src.slots_at(n)) {
            const Slot* t = find_slot(tgt.slots_at(n), s.m, s.p, s.part);
            if (!t) continue;
            SparseMatrix b = fn ? fn(s.m, s.p) : SparseMatrix::identity(s.size);
            if (b.rows() != t->size || b.cols() != s.size) fail(ErrorKind::Internal, "slot map block has wrong shape");
            m.place(b, t->offset, s.offset);
        }
        f.f[n] = std::move(m);
    }
    return f;
}

Complex plus_complex(const MixedComplex& m, std::optional<int> q, int hi) {
    return derived_complex(m, {Tower::Plus, Side::Cochain, q, natural_lo(Tower::Plus, Side::Cochain, q), hi});
}

Complex minus_complex(const MixedComplex& m, std::optional<int> q, int hi, int trunc) {
    return derived_complex(m, {Tower::Minus, Side::Cochain, q, natural_lo(Tower::Minus, Side::Cochain, q), hi, trunc});
}

Complex periodic_complex(const MixedComplex& m, std::optional<int> q, int hi, int trunc) {
    int lo = natural_lo(Tower::Periodic, Side::Cochain, q);
    return derived_complex(m, {Tower::Periodic, Side::Cochain, q, lo, hi, trunc});
}

Complex u_model(const MixedComplex& M, int hi) {
    // a (x) u^r with a in C^{n-2r}; D(a u^r) = delta(a) u^r + beta(a) u^{r+1}
    Complex c = Complex::make("C[u](" + M.label() + ")", 1, -1, hi);
    auto basis = [&](int n) {
        std::vector<Slot> v;
        int off = 0;
        for (int r = 0; 2 * r <= n; ++r) {
            int m = n - 2 * r;
            int w = M.weighted() ? std::min(M.max_weight(m), M.weight_limit()) : 0;
            for (int p = 0; p <= w; ++p) {
                int sz = M.dim(m, p);
                if (!sz) continue;
                v.push_back({m, p, r, off, sz});
                off += sz;
            }
        }
        return v;
    };
    for (int n = -1; n <= hi; ++n) {
        auto s = basis(n);
        int d = 0;
        for (auto& x : s) d += x.size;
        c.dims[n + 1] = d;
        c.slots[n + 1] = std::move(s);
        c.complete[n + 1] = n <= M.top();
    }
    for (int n = -1; n < hi; ++n) {
        SparseMatrix m(c.dim(n + 1), c.dim(n));
        for (auto& s : c.slots_at(n)) {
            int r = s.part;
            for (auto& t : c.slots_at(n + 1)) {
                if (t.part == r && t.m == s.m + 1 && t.p == s.p) m.place(M.delta(s.m, s.p), t.offset, s.offset);
                if (t.part == r + 1 && t.m == s.m - 1 && t.p == M.beta_weight(s.p))
                    m.place(M.beta(s.m, s.p), t.offset, s.offset);
            }
        }
        c.set_diff(n, std::move(m));
    }
    return c;
}

// ---------------------------------------------------------------------------

int CohomologyTable::dim(int n) const {
    auto it = entries.find(n);
    return it == entries.end() ? 0 : it->second.total;
}

int CohomologyTable::dim(int n, int w) const {
    auto it = entries.find(n);
    if (it == entries.end()) return 0;
    auto jt = it->second.weights.find(w);
    return jt == it->second.weights.end() ? 0 : jt->second;
}

bool CohomologyTable::certified(int n) const {
    auto it = entries.find(n);
    return it != entries.end() && it->second.certified;
}

CohomologyTable cohomology_table(const Complex& c, int lo, int hi) {
    CohomologyTable t;
    t.name = c.name;
    for (int n = lo; n <= hi; ++n) {
        CohomologyEntry e;
        e.certified = c.certified(n);
        e.status = e.certified ? "exact" : "uncertified";
        try {
            e.total = c.cohomology(n).dim();
        } catch (const Error&) {
            e.total = -1;
            e.certified = false;
            e.status = "uncomputable";
        }
        t.entries[n] = e;
    }
    return t;
}

CohomologyTable truncated_cohomology(const MixedComplex& M, Tower tw, int lo, int hi, int trunc, int window) {
    CohomologyTable t;
    t.name = tower_name(tw, Side::Cochain) + "(" + M.label() + ") truncated";
    DerivedParams a{tw, Side::Cochain, std::nullopt, lo, hi, trunc};
    DerivedParams b{tw, Side::Cochain, std::nullopt, lo, hi, trunc - 1};
    Complex ca = derived_complex(M, a), cb = derived_complex(M, b);
    Complex plain = derived_complex(M, {Tower::Plain, Side::Cochain, std::nullopt, -1, M.top()});
    std::map<int, int> hplain;
    auto plain_h = [&](int m) {
        auto it = hplain.find(m);
        if (it != hplain.end()) return it->second;
        int v = plain.certified(m) ? plain.cohomology(m).dim() : -1;
        hplain[m] = v;
        return v;
    };
    for (int n = lo + 1; n < hi; ++n) {
        CohomologyEntry e;
        int da = ca.cohomology(n).dim(), db = cb.cohomology(n).dim();
        e.total = da;
        bool vanish = true;
        int topm = n + 1 + 2 * trunc;
        for (int m = topm - window + 1; m <= topm; ++m)
            if (m >= 0 && plain_h(m) != 0) vanish = false;
        e.certified = da == db && vanish;
        e.status = e.certified ? "stable" : "unstable";
        t.entries[n] = e;
    }
    return t;
}

HomologySide homology_side(const MixedComplex& M, int lo, int hi, int trunc) {
    HomologySide h;
    auto run = [&](Tower tw, int tr) {
        Complex c = derived_complex(M, {tw, Side::Chain, std::nullopt, lo - 1, hi + 1, tr});
        return cohomology_table(c, lo, hi);
    };
    h.plain = run(Tower::Plain, INT_MAX);
    h.plus = run(Tower::Plus, INT_MAX);
    if (trunc != INT_MAX)
        h.minus = run(Tower::Minus, trunc);
    else
        h.minus.name = "-H (not computed: needs a truncation)";
    return h;
}

// ---------------------------------------------------------------------------

ExactSequence long_exact_sequence(const Complex& A, const Complex& B, const Complex& C, const ChainMap& f,
                                  const ChainMap& g, int lo, int hi, const LabelFn& label) {
    int dir = B.dir;
    ExactSequence s;
    std::vector<int> degs;
    if (dir == 1)
        for (int n = lo; n <= hi; ++n) degs.push_back(n);
    else
        for (int n = hi; n >= lo; --n) degs.push_back(n);
    const Complex* cx[3] = {&A, &B, &C};
    for (int n : degs)
        for (int w = 0; w < 3; ++w) {
            LesNode node;
            node.label = label(w, n);
            node.degree = n;
            node.which = w;
            node.certified = cx[w]->certified(n);
            if (node.certified)
                node.h = cx[w]->cohomology(n);
            else
                node.h.ambient = cx[w]->dim(n);
            s.nodes.push_back(std::move(node));
        }
    for (size_t i = 0; i + 1 < s.nodes.size(); ++i) {
        const LesNode& a = s.nodes[i];
        const LesNode& b = s.nodes[i + 1];
        bool ok = a.certified && b.certified;
        SparseMatrix m(b.dim(), a.dim());
        if (ok) {
            int n = a.degree;
            if (a.which == 0) {
                m = induced_map(f.at(n), a.h, b.h, a.label);
            } else if (a.which == 1) {
                m = induced_map(g.at(n), a.h, b.h, a.label);
            } else {
                // connecting map by lifting through g and pulling back through f
                Elimination eg(g.at(n)), ef(f.at(n + dir));
                for (int j = 0; j < a.dim(); ++j) {
                    auto lift = eg.solve(a.h.reps[j]);
                    if (!lift) fail(ErrorKind::Internal, "no lift through the surjection at " + a.label);
                    Vector db = B.diff(n) * *lift;
                    auto pre = ef.solve(db);
                    if (!pre) fail(ErrorKind::Internal, "boundary not in the image of the injection at " + a.label);
                    auto c = b.h.coordinates(*pre);
                    if (!c) fail(ErrorKind::Internal, "connecting image is not a cocycle at " + b.label);
                    for (int r = 0; r < b.dim(); ++r) m.set(r, j, (*c)[r]);
                }
            }
        }
        s.maps.push_back(std::move(m));
        s.map_certified.push_back(ok);
    }
    return s;
}

void LesReport::merge(const LesReport& o) {
    ok = ok && o.ok;
    checked += o.checked;
    failures.insert(failures.end(), o.failures.begin(), o.failures.end());
}

LesReport les_audit(const ExactSequence& s) {
    LesReport r;
    for (size_t i = 1; i + 1 < s.nodes.size(); ++i) {
        if (!s.nodes[i - 1].certified || !s.nodes[i].certified || !s.nodes[i + 1].certified) continue;
        if (!s.map_certified[i - 1] || !s.map_certified[i]) continue;
        ++r.checked;
        const SparseMatrix& in = s.maps[i - 1];
        const SparseMatrix& out = s.maps[i];
        if (!(out * in).is_zero()) {
            r.ok = false;
            r.failures.push_back({s.nodes[i].label, "composite of consecutive maps is nonzero"});
            continue;
        }
        int ri = rank(in), ro = rank(out), d = s.nodes[i].dim();
        if (ri + ro != d) {
            r.ok = false;
            std::ostringstream os;
            os << "image != kernel: rank in " << ri << ", rank out " << ro << ", dim " << d;
            r.failures.push_back({s.nodes[i].label, os.str()});
        }
    }
    return r;
}

// ---------------------------------------------------------------------------

BetaAcyclicReport beta_acyclic_check(MixedPtr mp, int max_degree) {
    const MixedComplex& M = *mp;
    BetaAcyclicReport r;
    int top = std::min(max_degree, M.top() - 2);
    bool any_beta = false, any_space = false;
    for (int n = 0; n <= top; ++n) {
        int wmax = std::min(M.max_weight(n), M.weight_limit());
        for (int p = 0; p <= wmax; ++p) {
            int d = M.dim(n, p);
            if (d == 0) continue;
            any_space = true;
            int rout = n > 0 ? rank(M.beta(n, p)) : 0;
            int sp = M.weighted() ? p - 1 : p;
            int rin = (sp >= 0 && M.dim(n + 1, sp)) ? rank(M.beta(n + 1, sp)) : 0;
            if (rout || rin) any_beta = true;
            ++r.checked;
            if (d - rout != rin && r.acyclic) {
                r.acyclic = false;
                r.witness = "beta-homology nonzero at block (" + std::to_string(n) + "," + std::to_string(p) + ")";
            }
        }
    }
    if (any_space && !any_beta) {
        r.status = "SKIPPED";
        r.witness = "beta vanishes identically; not beta-acyclic";
        return r;
    }
    if (!r.acyclic) {
        r.status = "FAIL";
        return r;
    }
    auto im = image_of_beta(mp);
    auto* sub = static_cast<const SubMixedComplex*>(im.get());
    std::vector<std::optional<int>> qs;
    if (M.weighted())
        for (int q = -(top / 2) - 1; q <= top + 1 && q <= M.weight_limit(); ++q) qs.push_back(q);
    else
        qs.push_back(std::nullopt);
    for (auto q : qs) {
        Complex lhs = derived_complex(*im, {Tower::Plain, Side::Cochain, q, -1, top + 1});
        Complex rhs = plus_complex(M, q, top + 1);
        ChainMap inc = slot_map(lhs, rhs, [sub](int m, int p) { return sub->inclusion(m, p); });
        for (int n = 0; n <= top; ++n) {
            if (!lhs.certified(n) || !rhs.certified(n)) continue;
            auto hl = lhs.cohomology(n);
            auto hr = rhs.cohomology(n);
            int key = q ? *q : 0;
            if (hl.dim() || hr.dim()) r.dims[{n, key}] = {hl.dim(), hr.dim()};
            SparseMatrix ind = induced_map(inc.at(n), hl, hr, rhs.name);
            if (hl.dim() != hr.dim() || rank(ind) != hl.dim()) {
                r.status = "FAIL";
                r.witness = "H(Im beta) -> +H not an isomorphism at degree " + std::to_string(n) +
                            (q ? " q=" + std::to_string(*q) : "");
                return r;
            }
        }
    }
    return r;
}

PowerAction power_action(const MixedComplex& M, const DerivedParams& params, int k) {
    if (k == 0) fail(ErrorKind::InvalidArgument, "Psi_0 is not defined");
    Complex c = derived_complex(M, params);
    PowerAction pa;
    for (int n = params.lo; n <= params.hi; ++n) {
        if (!c.certified(n)) continue;
        auto h = c.cohomology(n);
        pa.on_degree[n] = induced_map(derived_psi(M, c, k, n), h, h, c.name);
    }
    return pa;
}

}  // namespace cdgacyc

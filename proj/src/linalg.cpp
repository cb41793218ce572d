#include "cdgacyc/linalg.hpp"

#include <algorithm>
#include <sstream>

#include "cdgacyc/error.hpp"

namespace cdgacyc {

SparseMatrix::SparseMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
    if (rows < 0 || cols < 0) fail(ErrorKind::InvalidArgument, "negative matrix dimension");
}

SparseMatrix SparseMatrix::identity(int n) {
    SparseMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.data_[i][i] = 1;
    return m;
}

SparseMatrix SparseMatrix::from_columns(int rows, const std::vector<Vector>& cols) {
    SparseMatrix m(rows, int(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j) {
        if (int(cols[j].size()) != rows) fail(ErrorKind::InvalidArgument, "column length mismatch");
        for (int i = 0; i < rows; ++i)
            if (cols[j][i] != 0) m.data_[i][int(j)] = cols[j][i];
    }
    return m;
}

void SparseMatrix::check(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        fail(ErrorKind::InvalidArgument, "matrix index out of range");
}

void SparseMatrix::set(int i, int j, const Rational& v) {
    check(i, j);
    if (v == 0)
        data_[i].erase(j);
    else
        data_[i][j] = v;
}

void SparseMatrix::add(int i, int j, const Rational& v) {
    check(i, j);
    if (v == 0) return;
    auto [it, fresh] = data_[i].try_emplace(j, v);
    if (!fresh) {
        it->second += v;
        if (it->second == 0) data_[i].erase(it);
    }
}

Rational SparseMatrix::get(int i, int j) const {
    check(i, j);
    auto it = data_[i].find(j);
    return it == data_[i].end() ? Rational(0) : it->second;
}

bool SparseMatrix::is_zero() const {
    for (auto& r : data_)
        if (!r.empty()) return false;
    return true;
}

long SparseMatrix::nnz() const {
    long n = 0;
    for (auto& r : data_) n += long(r.size());
    return n;
}

Vector SparseMatrix::column(int j) const {
    Vector v(rows_);
    for (int i = 0; i < rows_; ++i) {
        auto it = data_[i].find(j);
        if (it != data_[i].end()) v[i] = it->second;
    }
    return v;
}

SparseMatrix SparseMatrix::transpose() const {
    SparseMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (auto& [j, v] : data_[i]) t.data_[j][i] = v;
    return t;
}

SparseMatrix SparseMatrix::scaled(const Rational& s) const {
    if (s == 0) return SparseMatrix(rows_, cols_);
    SparseMatrix m = *this;
    for (auto& r : m.data_)
        for (auto& [j, v] : r) v *= s;
    return m;
}

void SparseMatrix::place(const SparseMatrix& b, int r0, int c0, const Rational& s) {
    if (r0 < 0 || c0 < 0 || r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
        fail(ErrorKind::InvalidArgument, "block does not fit");
    for (int i = 0; i < b.rows_; ++i)
        for (auto& [j, v] : b.data_[i]) add(r0 + i, c0 + j, s * v);
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
    if (cols_ != o.rows_) fail(ErrorKind::InvalidArgument, "matrix product dimension mismatch");
    SparseMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
        auto& out = m.data_[i];
        for (auto& [k, a] : data_[i])
            for (auto& [j, b] : o.data_[k]) {
                auto [it, fresh] = out.try_emplace(j, a * b);
                if (!fresh) it->second += a * b;
            }
        for (auto it = out.begin(); it != out.end();)
            it = it->second == 0 ? out.erase(it) : std::next(it);
    }
    return m;
}

Vector SparseMatrix::operator*(const Vector& v) const {
    if (int(v.size()) != cols_) fail(ErrorKind::InvalidArgument, "matrix-vector dimension mismatch");
    Vector out(rows_);
    for (int i = 0; i < rows_; ++i)
        for (auto& [j, a] : data_[i]) out[i] += a * v[j];
    return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::InvalidArgument, "matrix sum dimension mismatch");
    SparseMatrix m = *this;
    m.place(o, 0, 0);
    return m;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorKind::InvalidArgument, "matrix difference dimension mismatch");
    SparseMatrix m = *this;
    m.place(o, 0, 0, -1);
    return m;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::string SparseMatrix::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        os << "[";
        for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << get(i, j).get_str();
        os << "]\n";
    }
    return os.str();
}

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}
Vector zero_vector(int n) { return Vector(n); }
Vector unit_vector(int n, int i) {
    Vector v(n);
    v[i] = 1;
    return v;
}

// ---------------------------------------------------------------------------

Elimination::Elimination(const SparseMatrix& m)
    : rows_(m.rows()), cols_(m.cols()), r_(m.rows()), is_pivot_row_(m.rows(), false) {
    std::vector<std::vector<int>> bucket(cols_);
    for (int i = 0; i < rows_; ++i) {
        if (m.row(i).empty()) continue;
        Integer l = 1;
        for (auto& [j, v] : m.row(i)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        if (l != 1) ops_.push_back({i, -1, l, 1});
        for (auto& [j, v] : m.row(i)) r_[i][j] = Integer(v.get_num() * (l / v.get_den()));
        bucket[r_[i].begin()->first].push_back(i);
    }
    for (int c = 0; c < cols_; ++c) {
        auto& cand = bucket[c];
        if (cand.empty()) continue;
        int p = -1;
        for (int i : cand)
            if (p < 0 || r_[i].size() < r_[p].size() || (r_[i].size() == r_[p].size() && i < p)) p = i;
        pivot_col_.push_back(c);
        pivot_row_.push_back(p);
        is_pivot_row_[p] = true;
        const Integer pv = r_[p].at(c);
        for (int i : cand) {
            if (i == p) continue;
            Integer a = r_[i].at(c);
            Integer g;
            mpz_gcd(g.get_mpz_t(), pv.get_mpz_t(), a.get_mpz_t());
            Integer ca = pv / g, cc = a / g;
            auto& row = r_[i];
            for (auto& [j, v] : row) v *= ca;
            for (auto& [j, v] : r_[p]) {
                auto [it, fresh] = row.try_emplace(j, -cc * v);
                if (!fresh) it->second -= cc * v;
            }
            ops_.push_back({i, p, ca, cc});
            Integer content = 0;
            for (auto it = row.begin(); it != row.end();) {
                if (it->second == 0) {
                    it = row.erase(it);
                } else {
                    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), it->second.get_mpz_t());
                    ++it;
                }
            }
            if (content > 1) {
                for (auto& [j, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), content.get_mpz_t());
                ops_.push_back({i, -1, 1, content});
            }
            if (!row.empty()) bucket[row.begin()->first].push_back(i);
        }
        cand.clear();
    }
}

std::vector<int> Elimination::free_cols() const {
    std::vector<bool> piv(cols_, false);
    for (int c : pivot_col_) piv[c] = true;
    std::vector<int> out;
    for (int c = 0; c < cols_; ++c)
        if (!piv[c]) out.push_back(c);
    return out;
}

Vector Elimination::back_substitute(const Vector& rhs, int free_col) const {
    Vector x(cols_);
    if (free_col >= 0) x[free_col] = 1;
    for (int k = rank() - 1; k >= 0; --k) {
        int pr = pivot_row_[k], pc = pivot_col_[k];
        Rational s = rhs.empty() ? Rational(0) : rhs[pr];
        for (auto& [j, v] : r_[pr])
            if (j != pc && x[j] != 0) s -= Rational(v) * x[j];
        x[pc] = s / Rational(r_[pr].at(pc));
    }
    return x;
}

std::optional<Vector> Elimination::solve(const Vector& b) const {
    if (int(b.size()) != rows_) fail(ErrorKind::InvalidArgument, "right-hand side has wrong length");
    Vector y = b;
    for (auto& op : ops_) {
        if (op.s < 0) {
            y[op.t] *= Rational(op.a, op.c);
        } else {
            y[op.t] = Rational(op.a) * y[op.t] - Rational(op.c) * y[op.s];
        }
    }
    for (int i = 0; i < rows_; ++i)
        if (!is_pivot_row_[i] && y[i] != 0) return std::nullopt;
    return back_substitute(y, -1);
}

std::vector<Vector> Elimination::kernel() const {
    std::vector<Vector> out;
    for (int f : free_cols()) out.push_back(back_substitute({}, f));
    return out;
}

int rank(const SparseMatrix& m) { return Elimination(m).rank(); }
std::vector<Vector> kernel_basis(const SparseMatrix& m) { return Elimination(m).kernel(); }
std::optional<Vector> solve(const SparseMatrix& m, const Vector& b) { return Elimination(m).solve(b); }

// ---------------------------------------------------------------------------

std::optional<Vector> SubquotientBasis::coordinates(const Vector& z) const {
    if (int(z.size()) != ambient) fail(ErrorKind::InvalidArgument, "vector has wrong length for subquotient");
    auto x = coord->solve(z);
    if (!x) return std::nullopt;
    return Vector(x->begin() + long(image.size()), x->end());
}

std::vector<Rational> charpoly(const SparseMatrix& a) {
    if (a.rows() != a.cols()) fail(ErrorKind::InvalidArgument, "characteristic polynomial of a non-square matrix");
    int n = a.rows();
    std::vector<Rational> c(n + 1);
    c[n] = 1;
    SparseMatrix mk(n, n);
    for (int k = 1; k <= n; ++k) {
        SparseMatrix next = a * mk;
        for (int i = 0; i < n; ++i) next.add(i, i, c[n - k + 1]);
        mk = std::move(next);
        SparseMatrix am = a * mk;
        Rational tr = 0;
        for (int i = 0; i < n; ++i) tr += am.get(i, i);
        c[n - k] = -tr / k;
    }
    return c;
}

int deflate(std::vector<Rational>& p, const Rational& root) {
    int mult = 0;
    while (p.size() > 1) {
        // synthetic division
        int d = int(p.size()) - 1;
        std::vector<Rational> q(d);
        Rational carry = 0;
        for (int i = d; i >= 1; --i) {
            carry = p[i] + carry * root;
            q[i - 1] = carry;
        }
        if (p[0] + carry * root != 0) break;
        p = std::move(q);
        ++mult;
    }
    return mult;
}

SubquotientBasis cohomology_at(const SparseMatrix& d_in, const SparseMatrix& d_out, const std::string& where) {
    if (d_in.rows() != d_out.cols())
        fail(ErrorKind::InvalidArgument, "incompatible differentials" + (where.empty() ? "" : " at " + where));
    if (!(d_out * d_in).is_zero())
        fail(ErrorKind::Precondition,
             "differential does not square to zero" + (where.empty() ? "" : " at " + where));
    SubquotientBasis h;
    h.ambient = d_out.cols();
    Elimination ein(d_in);
    for (int c : ein.pivot_cols()) h.image.push_back(d_in.column(c));
    h.kernel = Elimination(d_out).kernel();
    std::vector<Vector> cols = h.image;
    cols.insert(cols.end(), h.kernel.begin(), h.kernel.end());
    Elimination ecols(SparseMatrix::from_columns(h.ambient, cols));
    for (int c : ecols.pivot_cols())
        if (c >= int(h.image.size())) h.reps.push_back(cols[c]);
    std::vector<Vector> basis = h.image;
    basis.insert(basis.end(), h.reps.begin(), h.reps.end());
    h.coord = std::make_shared<Elimination>(SparseMatrix::from_columns(h.ambient, basis));
    return h;
}

SparseMatrix induced_map(const SparseMatrix& f, const SubquotientBasis& src, const SubquotientBasis& tgt,
                         const std::string& where) {
    if (f.cols() != src.ambient || f.rows() != tgt.ambient)
        fail(ErrorKind::InvalidArgument, "induced map dimension mismatch" + (where.empty() ? "" : " at " + where));
    auto witness = [&](const Vector& v) {
        std::ostringstream os;
        os << "(";
        for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
        os << ")";
        return os.str();
    };
    for (auto& b : src.image) {
        auto c = tgt.coordinates(f * b);
        if (!c || !is_zero(*c))
            fail(ErrorKind::Precondition, "map does not send coboundaries to coboundaries" +
                                              (where.empty() ? "" : " at " + where) + ", witness " + witness(b));
    }
    SparseMatrix m(tgt.dim(), src.dim());
    for (int j = 0; j < src.dim(); ++j) {
        auto c = tgt.coordinates(f * src.reps[j]);
        if (!c)
            fail(ErrorKind::Precondition, "map does not send cocycles to cocycles" +
                                              (where.empty() ? "" : " at " + where) + ", witness " +
                                              witness(src.reps[j]));
        for (int i = 0; i < tgt.dim(); ++i) m.set(i, j, (*c)[i]);
    }
    return m;
}

}  // namespace cdgacyc

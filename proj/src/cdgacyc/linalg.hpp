#pragma once
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cdgacyc/rational.hpp"

namespace cdgacyc {

using Vector = std::vector<Rational>;

class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols);
    static SparseMatrix identity(int n);
    static SparseMatrix from_columns(int rows, const std::vector<Vector>& cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    void set(int i, int j, const Rational& v);
    void add(int i, int j, const Rational& v);
    Rational get(int i, int j) const;
    const std::map<int, Rational>& row(int i) const { return data_[i]; }

    bool is_zero() const;
    long nnz() const;
    Vector column(int j) const;
    SparseMatrix transpose() const;
    SparseMatrix scaled(const Rational& s) const;
    // adds block into this matrix with its (0,0) entry at (r0,c0)
    void place(const SparseMatrix& block, int r0, int c0, const Rational& s = 1);

    SparseMatrix operator*(const SparseMatrix& o) const;
    Vector operator*(const Vector& v) const;
    SparseMatrix operator+(const SparseMatrix& o) const;
    SparseMatrix operator-(const SparseMatrix& o) const;
    bool operator==(const SparseMatrix& o) const;

    std::string str() const;

private:
    void check(int i, int j) const;
    int rows_ = 0, cols_ = 0;
    std::vector<std::map<int, Rational>> data_;
};

bool is_zero(const Vector& v);
Vector zero_vector(int n);
Vector unit_vector(int n, int i);

// Forward fraction-free elimination; rows are kept integral and divided by
// their content after each update.  The row operations are logged so that
// right-hand sides can be pushed through later.
class Elimination {
public:
    explicit Elimination(const SparseMatrix& m);

    int rank() const { return int(pivot_col_.size()); }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<int>& pivot_cols() const { return pivot_col_; }
    std::vector<int> free_cols() const;

    // some x with M x = b, or nullopt when b is outside the column span
    std::optional<Vector> solve(const Vector& b) const;
    std::vector<Vector> kernel() const;

private:
    struct Op {
        int t, s;  // s < 0: row_t *= a / c, else row_t = a*row_t - c*row_s
        Integer a, c;
    };
    Vector back_substitute(const Vector& rhs, int free_col) const;

    int rows_, cols_;
    std::vector<std::map<int, Integer>> r_;
    std::vector<int> pivot_col_, pivot_row_;
    std::vector<bool> is_pivot_row_;
    std::vector<Op> ops_;
};

int rank(const SparseMatrix& m);
std::vector<Vector> kernel_basis(const SparseMatrix& m);
std::optional<Vector> solve(const SparseMatrix& m, const Vector& b);

// Characteristic polynomial det(tI - M), coefficients from t^0 up; Faddeev-LeVerrier.
std::vector<Rational> charpoly(const SparseMatrix& m);
// Divides p by (t - root) while it divides exactly; returns the multiplicity.
int deflate(std::vector<Rational>& p, const Rational& root);

struct SubquotientBasis {
    int ambient = 0;
    std::vector<Vector> kernel, image, reps;
    std::shared_ptr<const Elimination> coord;  // on [image | reps]

    int dim() const { return int(reps.size()); }
    // coordinates of a cocycle in the rep basis modulo the image; nullopt if z is not a cocycle
    std::optional<Vector> coordinates(const Vector& z) const;
};

// H = Ker d_out / Im d_in at one degree; `where` names the degree in errors.
SubquotientBasis cohomology_at(const SparseMatrix& d_in, const SparseMatrix& d_out,
                               const std::string& where = "");

SparseMatrix induced_map(const SparseMatrix& f, const SubquotientBasis& src,
                         const SubquotientBasis& tgt, const std::string& where = "");

}  // namespace cdgacyc

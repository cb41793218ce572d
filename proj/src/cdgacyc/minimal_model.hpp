#pragma once
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cdgacyc/functors.hpp"
#include "cdgacyc/gralg.hpp"

namespace cdgacyc {

// A graded algebra seen through per-degree coordinates.  Both free CDGAs
// (up to a cutoff) and finite CDGAs are exposed this way, so morphisms and
// cohomology comparisons do not care which kind sits on either end.
class CdgaView {
public:
    virtual ~CdgaView() = default;
    virtual std::string name() const = 0;
    virtual int top() const = 0;  // highest degree with coordinates
    virtual int dim(int n) const = 0;
    virtual SparseMatrix d(int n) const = 0;  // dim(n+1) x dim(n)
    virtual Vector mul(int a, const Vector& x, int b, const Vector& y) const = 0;
    virtual Vector unit() const = 0;

    SubquotientBasis cohomology(int n) const;
};

class FreeView : public CdgaView {
public:
    FreeView(FreeCDGA a, int cutoff);
    std::string name() const override { return a_.name; }
    int top() const override { return cutoff_; }
    int dim(int n) const override;
    SparseMatrix d(int n) const override;
    Vector mul(int a, const Vector& x, int b, const Vector& y) const override;
    Vector unit() const override;

    const FreeCDGA& algebra() const { return a_; }
    const std::vector<Monomial>& basis(int n) const;
    Vector coords(const Polynomial& p) const;  // p homogeneous of degree <= cutoff
    Polynomial poly(int n, const Vector& v) const;

private:
    FreeCDGA a_;
    int cutoff_;
    mutable std::map<int, std::vector<Monomial>> basis_;
    mutable std::map<int, std::map<Monomial, int>> index_;
};

struct Term {
    Rational coeff;
    int elt;  // basis element index
};

struct FiniteElement {
    std::string name;
    int degree = 0;
};

// Finite-dimensional CDGA given by structure constants on a homogeneous basis.
// Degree 0 must be spanned by the unit.
class FiniteCDGA : public CdgaView {
public:
    // products: unordered pairs (i, j) -> sum of terms; the mirror product follows
    // from graded commutativity, and products with the unit are implied.
    static FiniteCDGA make(std::string name, std::vector<FiniteElement> basis,
                           const std::vector<std::tuple<int, int, std::vector<Term>>>& products,
                           const std::vector<std::pair<int, std::vector<Term>>>& differential);

    std::string name() const override { return name_; }
    int top() const override { return top_; }
    int dim(int n) const override;
    SparseMatrix d(int n) const override;
    Vector mul(int a, const Vector& x, int b, const Vector& y) const override;
    Vector unit() const override;

    const std::vector<FiniteElement>& elements() const { return basis_; }
    int unit_index() const { return unit_; }
    int find(const std::string& name) const;  // -1 if absent
    const std::vector<int>& in_degree(int n) const;
    int local_index(int elt) const { return local_[elt]; }
    // full structure constants, including the implied ones
    const std::map<int, Rational>& product(int i, int j) const;
    const std::map<int, Rational>& diff(int i) const { return d_[i]; }

private:
    std::string name_;
    std::vector<FiniteElement> basis_;
    int unit_ = -1, top_ = 0;
    std::vector<int> local_;
    std::map<int, std::vector<int>> by_degree_;
    std::map<std::pair<int, int>, std::map<int, Rational>> mul_;
    std::vector<std::map<int, Rational>> d_;
};

// the free CDGA cut off above degree `top` (a quotient by a d-stable ideal)
FiniteCDGA truncate(const FreeCDGA& a, int top);

// Morphism out of a free CDGA, given by cocycle-level values on generators.
class CDGAMorphism {
public:
    CDGAMorphism(FreeCDGA src, std::shared_ptr<const CdgaView> tgt, std::vector<Vector> values);
    const FreeCDGA& source() const { return src_; }
    const CdgaView& target() const { return *tgt_; }
    std::shared_ptr<const CdgaView> target_ptr() const { return tgt_; }
    const Vector& value(int g) const { return values_.at(g); }

    Vector apply(const Monomial& m) const;
    // matrix on the degree-n monomial basis of the source
    SparseMatrix matrix(int n) const;
    // commutes with d on every generator of degree <= cutoff; throws Precondition with a witness
    void verify(int cutoff) const;

private:
    FreeCDGA src_;
    std::shared_ptr<const CdgaView> tgt_;
    std::vector<Vector> values_;
};

AuditReport verify_minimal(const FreeCDGA& a, int cutoff);

struct QuasiIsoRow {
    int n, dim_src, dim_tgt, rank;
};
struct QuasiIsoReport {
    bool ok = true;
    int window = 0;  // degrees 0..window were compared
    std::vector<QuasiIsoRow> rows;
    std::string witness;
};

// H^n(f) iso for n <= cutoff - 1
QuasiIsoReport is_quasi_iso(const CDGAMorphism& f, int cutoff);

struct MinimalModel {
    FreeCDGA model;
    std::shared_ptr<CDGAMorphism> theta;
    int cutoff = 0;  // generators are complete up to this degree
};

// Stepwise Sullivan model of a homologically 1-connected finite CDGA.
// seed 0 picks the elimination pivots; other seeds perturb every choice
// (representatives, primitives, generator scalings) at random.
MinimalModel build_minimal_model(const FiniteCDGA& b, int cutoff, unsigned seed = 0);

// Builds a minimal model complete far enough for every functor at this cutoff.
struct ModelledFunctors {
    MinimalModel model;
    std::unique_ptr<Functors> functors;
};
ModelledFunctors functor_on_cdga(const FiniteCDGA& b, FunctorOptions o, unsigned seed = 0);
int model_degree_for(const FunctorOptions& o);

}  // namespace cdgacyc

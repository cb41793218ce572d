#pragma once
#include <climits>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cdgacyc/linalg.hpp"

namespace cdgacyc {

// A block of a derived complex: component C^m of weight p placed at `offset`.
// `part` separates the two summands of a mapping cone.
struct Slot {
    int m = 0, p = 0, part = 0;
    int offset = 0, size = 0;
};

// Finite window [lo, hi] of a (co)chain complex.  dir = +1 for cochain
// complexes, -1 for chain complexes; d(n) maps degree n to n + dir.
struct Complex {
    std::string name;
    int dir = 1;
    int lo = 0, hi = -1;
    bool bottom_exact = true;  // everything below lo is zero
    bool top_exact = false;    // everything above hi is zero
    std::vector<int> dims;
    std::vector<std::vector<Slot>> slots;
    std::vector<char> complete;
    std::vector<SparseMatrix> d;

    static Complex make(const std::string& name, int dir, int lo, int hi);
    bool in_range(int n) const { return n >= lo && n <= hi; }
    int dim(int n) const { return in_range(n) ? dims[n - lo] : 0; }
    bool is_complete(int n) const;
    const std::vector<Slot>& slots_at(int n) const;
    SparseMatrix diff(int n) const;
    void set_diff(int n, SparseMatrix m);
    bool certified(int n) const;
    SubquotientBasis cohomology(int n) const;
};

struct ChainMap {
    std::map<int, SparseMatrix> f;
    const SparseMatrix& at(int n) const;
    bool has(int n) const { return f.count(n) > 0; }
};

Complex reindex(const Complex& c, int shift, const std::string& name = "");  // new C^n = old C^{n+shift}
// raises a Precondition error naming degree and source column on failure
void check_chain_map(const ChainMap& f, const Complex& src, const Complex& tgt);
Complex mapping_cone(const ChainMap& f, const Complex& src, const Complex& tgt, bool check = true);

// ---------------------------------------------------------------------------

class MixedComplex {
public:
    virtual ~MixedComplex() = default;
    virtual bool weighted() const = 0;
    virtual int top() const = 0;  // blocks known in degrees <= top
    virtual int weight_limit() const { return INT_MAX; }
    virtual int max_weight(int n) const = 0;  // no nonzero block (n, p) for larger p
    virtual int dim(int n, int p) const = 0;
    virtual SparseMatrix delta(int n, int p) const = 0;  // (n,p) -> (n+1,p)
    virtual SparseMatrix beta(int n, int p) const = 0;   // (n,p) -> (n-1, beta_weight(p))
    virtual SparseMatrix psi(int k, int n, int p) const;  // default: k^p on weight p
    virtual std::string label() const { return "mixed complex"; }

    bool known(int n, int p) const { return n <= top() && p <= weight_limit(); }
    int beta_weight(int p) const { return weighted() ? p + 1 : p; }
};

using MixedPtr = std::shared_ptr<const MixedComplex>;

// Explicitly tabulated mixed complex.
class TableMixedComplex : public MixedComplex {
public:
    TableMixedComplex(bool weighted, int top) : weighted_(weighted), top_(top) {}
    void set_dim(int n, int p, int d) { dims_[{n, p}] = d; }
    void set_delta(int n, int p, SparseMatrix m) { delta_[{n, p}] = std::move(m); }
    void set_beta(int n, int p, SparseMatrix m) { beta_[{n, p}] = std::move(m); }
    void set_psi(int k, int n, int p, SparseMatrix m) { psi_[{k, n, p}] = std::move(m); }
    void set_label(std::string s) { label_ = std::move(s); }

    bool weighted() const override { return weighted_; }
    int top() const override { return top_; }
    int max_weight(int n) const override;
    int dim(int n, int p) const override;
    SparseMatrix delta(int n, int p) const override;
    SparseMatrix beta(int n, int p) const override;
    SparseMatrix psi(int k, int n, int p) const override;
    std::string label() const override { return label_; }

private:
    bool weighted_;
    int top_;
    std::string label_ = "table";
    std::map<std::pair<int, int>, int> dims_;
    std::map<std::pair<int, int>, SparseMatrix> delta_, beta_;
    std::map<std::tuple<int, int, int>, SparseMatrix> psi_;
};

// C^0 = Q, everything else zero
std::shared_ptr<TableMixedComplex> one_point_complex(bool weighted);
// Validates the compatibility triple (and the Psi axioms for ks) on all known slices.
struct AxiomReport {
    bool ok = true;
    std::string witness;
    int checks = 0;
};
AxiomReport check_mixed_axioms(const MixedComplex& m, int max_degree, const std::vector<int>& ks = {});

// Restriction of a mixed complex to a subcomplex given by column bases per block.
class SubMixedComplex : public MixedComplex {
public:
    using BasisFn = std::function<SparseMatrix(int n, int p)>;
    SubMixedComplex(MixedPtr parent, BasisFn basis, std::string label);

    bool weighted() const override { return parent_->weighted(); }
    int top() const override { return parent_->top() - 1; }
    int weight_limit() const override { return parent_->weight_limit(); }
    int max_weight(int n) const override { return parent_->max_weight(n); }
    int dim(int n, int p) const override;
    SparseMatrix delta(int n, int p) const override;
    SparseMatrix beta(int n, int p) const override;
    SparseMatrix psi(int k, int n, int p) const override;
    std::string label() const override { return label_; }
    // inclusion block into the parent
    SparseMatrix inclusion(int n, int p) const { return basis_of(n, p); }

private:
    const SparseMatrix& basis_of(int n, int p) const;
    SparseMatrix restrict(const SparseMatrix& op, int n, int p, int tn, int tp) const;
    MixedPtr parent_;
    BasisFn fn_;
    std::string label_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, SparseMatrix> cache_;
};

MixedPtr augmentation_ideal(MixedPtr m);  // drops the (0,0) block
MixedPtr image_of_beta(MixedPtr m);       // Im(beta), a mixed subcomplex with beta = 0

// ---------------------------------------------------------------------------

enum class Tower { Plain, Plus, Minus, Periodic };
enum class Side { Cochain, Chain };

struct DerivedParams {
    Tower tower = Tower::Plus;
    Side side = Side::Cochain;
    std::optional<int> q;  // weight label; absent = all weights together
    int lo = 0, hi = 0;
    // products without weight labels are cut to slot index j <= trunc, where
    // m = n + 2j (cochain side) or m = n + 2j (chain side, minus tower); the cut
    // keeps a sub- or quotient complex, so the result is always a complex
    int trunc = INT_MAX;
};

std::string tower_name(Tower t, Side s);
// Lowest degree that can carry a slot of label q, minus a margin of one.
int natural_lo(Tower t, Side s, std::optional<int> q);
Complex derived_complex(const MixedComplex& m, const DerivedParams& params);
// Psi_k on a cochain-side derived complex at degree n: slot m scaled by k^((m-n)/2)
SparseMatrix derived_psi(const MixedComplex& m, const Complex& c, int k, int n);

using BlockFn = std::function<SparseMatrix(int m, int p)>;
// identity (or fn) between slots carrying the same (m, p, part); other slots are dropped
ChainMap slot_map(const Complex& src, const Complex& tgt, const BlockFn& fn = nullptr);

Complex plus_complex(const MixedComplex& m, std::optional<int> q, int hi);
Complex minus_complex(const MixedComplex& m, std::optional<int> q, int hi, int trunc = INT_MAX);
Complex periodic_complex(const MixedComplex& m, std::optional<int> q, int hi, int trunc = INT_MAX);
Complex u_model(const MixedComplex& m, int hi);

// ---------------------------------------------------------------------------

struct CohomologyEntry {
    int total = 0;
    std::map<int, int> weights;
    bool certified = true;
    std::string status = "exact";
};

struct CohomologyTable {
    std::string name;
    std::map<int, CohomologyEntry> entries;
    int dim(int n) const;
    int dim(int n, int w) const;
    bool certified(int n) const;
};

CohomologyTable cohomology_table(const Complex& c, int lo, int hi);

// Truncated computation for products without weights: a degree is "stable"
// when the result agrees with the cutoff trunc-2 and H(C, delta) vanishes on
// the top window of the given width.
CohomologyTable truncated_cohomology(const MixedComplex& m, Tower t, int lo, int hi, int trunc, int window);

struct HomologySide {
    CohomologyTable plain, plus, minus;  // H_*, +H^delta_*, -H^delta_*
};
HomologySide homology_side(const MixedComplex& m, int lo, int hi, int trunc = INT_MAX);

// ---------------------------------------------------------------------------

struct LesNode {
    std::string label;
    int degree = 0;
    int which = 0;  // 0 = A, 1 = B, 2 = C of the short exact sequence
    bool certified = false;
    SubquotientBasis h;
    int dim() const { return h.dim(); }
};

struct ExactSequence {
    std::vector<LesNode> nodes;
    std::vector<SparseMatrix> maps;  // maps[i]: nodes[i] -> nodes[i+1]
    std::vector<char> map_certified;
};

using LabelFn = std::function<std::string(int which, int n)>;
// 0 -> A -f-> B -g-> C -> 0 on the common window; connecting maps by zig-zag lifts.
ExactSequence long_exact_sequence(const Complex& A, const Complex& B, const Complex& C, const ChainMap& f,
                                  const ChainMap& g, int lo, int hi, const LabelFn& label);

struct LesFailure {
    std::string node;
    std::string reason;
};

struct LesReport {
    bool ok = true;
    int checked = 0;
    std::vector<LesFailure> failures;
    void merge(const LesReport& o);
};

LesReport les_audit(const ExactSequence& s);

// ---------------------------------------------------------------------------

struct BetaAcyclicReport {
    std::string status = "PASS";  // PASS, FAIL, SKIPPED
    bool acyclic = true;
    int checked = 0;
    std::string witness;
    std::map<std::pair<int, int>, std::pair<int, int>> dims;  // (n, q) -> (H(Im beta), +H)
};

// degrees up to max_degree (both sides must be certified there)
BetaAcyclicReport beta_acyclic_check(MixedPtr m, int max_degree);

struct PowerAction {
    std::map<int, SparseMatrix> on_degree;  // induced matrix per certified degree
};
PowerAction power_action(const MixedComplex& m, const DerivedParams& params, int k);

}  // namespace cdgacyc

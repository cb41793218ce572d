#pragma once
#include <climits>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "cdgacyc/complexes.hpp"
#include "cdgacyc/free_loop.hpp"

namespace cdgacyc {

struct FunctorOptions {
    int cutoff = 12;
    int weight_max = 12;
    std::vector<int> ks = {2, 3};
    bool corrupt_bar_sign = false;
};

struct CheckResult {
    std::string name;
    std::string status = "PASS";  // PASS, FAIL, SKIPPED
    std::string detail;           // witness on failure
    int checked = 0;
    bool failed() const { return status == "FAIL"; }
};

struct AuditReport {
    std::deque<CheckResult> checks;  // deque: add() hands out references that must survive later adds
    bool ok() const;
    CheckResult& add(const std::string& name);
    void merge(const AuditReport& o);
    const CheckResult* find(const std::string& name) const;
};

struct PHEntry {
    int dim = 0;
    int stable_from = -1;  // k at which CH^{r+2k}(q-k) stabilizes along S, -1 if not seen
};

struct PHReport {
    CohomologyTable colimit;   // S-stabilization
    CohomologyTable periodic;  // direct-sum periodic complex per label
    std::map<std::pair<int, int>, PHEntry> entries;  // (r, q)
    bool tail_certified = false;  // Lambda+ is beta-acyclic in the window
    std::string tail_note;
};

struct ReducedGroups {
    CohomologyTable k_bar, ch_bar, sh_bar;
};

struct EulerSeries {
    std::map<int, Rational> chi_h, chi_c;  // weight / label -> coefficient
    std::map<int, bool> h_certified, c_certified;
};

enum class ConeKind { WeightZero, DropProjection };

struct ComparisonOptions {
    bool corrupt_connecting = false;  // negative control: zero one connecting map of the Gysin row
};

// Derived functors of a free connected CDGA through the free-loop construction.
// Everything is computed per label q (the Psi-weight) and summed.
class Functors {
public:
    Functors(FreeCDGA a, FunctorOptions o = {});

    const FreeCDGA& algebra() const { return a_; }
    const FunctorOptions& options() const { return o_; }
    int cutoff() const { return o_.cutoff; }
    LoopPtr loop() const { return loop_; }
    std::shared_ptr<const LoopMixedComplex> mixed() const { return mixed_; }
    std::shared_ptr<const BaseMixedComplex> base() const { return base_; }
    bool weight_truncated() const { return loop_->weight_truncated(); }

    // per-label complexes (cached)
    const Complex& plain(int q);
    const Complex& plus(int q);
    const Complex& shifted_plus(int q);  // n -> +C^{n-2}(q+1)
    const Complex& periodic(int q);
    const Complex& minus(int q);
    const Complex& base_periodic(int q);
    const Complex& cone(int q, ConeKind kind = ConeKind::WeightZero);
    const Complex& suspended_plus(int q, ConeKind kind = ConeKind::WeightZero);  // quotient of the cone
    const SubquotientBasis& h(const Complex& c, int n);

    // chain maps
    ChainMap s_map(int q);        // shifted_plus(q) -> plus(q)
    ChainMap j_map(int q);        // plus(q) -> plain(q)
    ChainMap i_map(int q);        // shifted_plus(q) -> periodic(q)
    ChainMap pm_map(int q);       // periodic(q) -> minus(q)
    ChainMap t_map(int q);        // plus(q) -> base_periodic(q), weight-0 projection of the slot j = -q
    ChainMap ibar_map(int q);     // shifted_plus(q) -> base_periodic(q)
    ChainMap incl_map(int q);     // plus(q) -> periodic(q)
    ChainMap p_map(int q);        // periodic(q) -> base_periodic(q)
    ChainMap phi_map(int q);      // plain(q) -> cone(q)
    ChainMap jj_map(int q, ConeKind k = ConeKind::WeightZero);  // base/loop periodic -> cone
    ChainMap bb_map(int q, ConeKind k = ConeKind::WeightZero);  // cone -> suspended plus

    // the one-point algebra's complexes, for the unit comparison maps
    const Complex& pt_plus(int q);
    const Complex& pt_base_periodic(int q);
    const Complex& pt_cone(int q);
    std::shared_ptr<const TableMixedComplex> point() const { return point_; }

    // base cohomology H^n(A), computed to degree 3N+1
    int base_top() const { return 3 * o_.cutoff + 1; }
    int base_h(int n);
    int top_h();                // highest nonzero base degree within base_top()
    bool base_bounded();        // top window of width maxgen+1 vanishes
    CohomologyTable cohomology();

    CohomologyTable hh();
    CohomologyTable hh_total();  // one complex with all weights
    CohomologyTable ch();
    CohomologyTable ch_u_model();
    PHReport ph(bool corrupt_s_map = false);
    CohomologyTable k_groups();
    CohomologyTable sh(ConeKind kind = ConeKind::WeightZero);
    ReducedGroups reduced(ConeKind kind = ConeKind::WeightZero);

    // audits
    AuditReport axioms(const std::vector<int>& ks);
    AuditReport gysin_audit();
    AuditReport comparison_audit(ComparisonOptions opt = {});
    AuditReport sh_sequence_audit(ConeKind kind = ConeKind::WeightZero);
    AuditReport eigen_audit();
    AuditReport cross_pipelines();
    AuditReport beta_acyclic();
    EulerSeries euler_series();

    // label ranges
    int hh_qmax(int n) const;
    int sh_qmin(int n) const { return -(n + 1) / 2 - 2; }
    int sh_qmax(int n) const { return std::max(n - 2, (base_top() - n) / 2); }
    int barred_max() const;  // largest barred generator degree

private:
    int dim_h(const Complex& c, int n) { return c.certified(n) ? h(c, n).dim() : 0; }
    SparseMatrix induced(const ChainMap& f, const Complex& src, const Complex& tgt, int n);
    std::string lbl(const std::string& what, int n, int q) const;

    FreeCDGA a_;
    FunctorOptions o_;
    LoopPtr loop_;
    std::shared_ptr<LoopMixedComplex> mixed_;
    std::shared_ptr<BaseMixedComplex> base_;
    std::shared_ptr<TableMixedComplex> point_;
    const Complex& cached(int kind, int q);
    std::map<std::pair<int, int>, Complex> cache_;  // (kind, q)
    std::map<std::pair<const Complex*, int>, SubquotientBasis> hcache_;
    std::optional<Complex> base_plain_;
    std::optional<PHReport> ph_;
};

// unit map pt -> A on a derived complex: the (0,0) slot goes to the unit monomial
ChainMap unit_map(const Complex& pt, const Complex& a);

}  // namespace cdgacyc

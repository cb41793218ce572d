#pragma once
#include <climits>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "cdgacyc/complexes.hpp"
#include "cdgacyc/gralg.hpp"

namespace cdgacyc {

struct LoopOptions {
    int weight_limit = INT_MAX;  // required when the base has degree-1 generators
    bool corrupt_bar_sign = false;  // negative control: delta(v~) = +i(dv)
};

// Lambda[V + V~] with delta and the interior derivation i.  Base generator g keeps
// id g; its barred partner has id g + |V|, degree |g| - 1 and weight 1.
class LoopAlgebra {
public:
    LoopAlgebra(FreeCDGA base, LoopOptions opts = {});

    const FreeCDGA& base() const { return base_; }
    const FreeAlgebra& algebra() const { return *alg_; }
    AlgebraPtr algebra_ptr() const { return alg_; }
    const Derivation& delta() const { return delta_; }
    const Derivation& iota() const { return iota_; }
    const LoopOptions& options() const { return opts_; }
    int num_base() const { return g_; }
    int bar(int id) const { return id + g_; }
    bool weight_truncated() const { return opts_.weight_limit != INT_MAX; }
    int weight_limit() const { return opts_.weight_limit; }
    // largest weight of a nonzero monomial in degree n (INT_MAX if unbounded)
    int max_weight(int n) const;

    Polynomial embed(const Polynomial& base_poly) const;  // base ids are loop ids
    AlgebraMap power_map(int k) const;                    // v -> v, v~ -> k v~
    std::vector<Monomial> basis(int n, int p) const;

private:
    FreeCDGA base_;
    LoopOptions opts_;
    int g_ = 0;
    AlgebraPtr alg_;
    Derivation delta_, iota_;
};

using LoopPtr = std::shared_ptr<const LoopAlgebra>;

LoopPtr free_loop(const FreeCDGA& a, LoopOptions opts = {});

struct WeightSlice {
    int weight = 0;
    std::map<int, std::vector<Monomial>> basis;  // degree -> monomials
    std::map<int, SparseMatrix> delta;             // degree -> delta restricted to the slice
};

struct SliceReport {
    std::vector<WeightSlice> slices;
    bool exact = false;  // every degree <= N is exhausted by weights <= W
};
SliceReport weight_slices(const LoopAlgebra& l, int cutoff, int weight_max);

// The loop algebra as a weighted mixed complex (delta, i), blocks cached.
class LoopMixedComplex : public MixedComplex {
public:
    LoopMixedComplex(LoopPtr l, int top);
    bool weighted() const override { return true; }
    int top() const override { return top_; }
    int weight_limit() const override { return loop_->weight_limit(); }
    int max_weight(int n) const override;
    int dim(int n, int p) const override;
    SparseMatrix delta(int n, int p) const override;
    SparseMatrix beta(int n, int p) const override;
    SparseMatrix psi(int k, int n, int p) const override;  // by applying the power map
    std::string label() const override { return "L(" + loop_->base().name + ")"; }

    const LoopAlgebra& loop() const { return *loop_; }
    const std::vector<Monomial>& basis(int n, int p) const;

private:
    LoopPtr loop_;
    int top_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, int>, std::vector<Monomial>> basis_;
    mutable std::map<std::pair<int, int>, SparseMatrix> delta_, beta_;
    mutable std::map<std::tuple<int, int, int>, SparseMatrix> psi_;
};

// (Lambda[V], d, 0): weighted, everything of weight 0.
class BaseMixedComplex : public MixedComplex {
public:
    BaseMixedComplex(FreeCDGA a, int top);
    bool weighted() const override { return true; }
    int top() const override { return top_; }
    int max_weight(int) const override { return 0; }
    int dim(int n, int p) const override;
    SparseMatrix delta(int n, int p) const override;
    SparseMatrix beta(int n, int p) const override;
    std::string label() const override { return a_.name; }

    const std::vector<Monomial>& basis(int n) const;
    const FreeCDGA& algebra() const { return a_; }

private:
    FreeCDGA a_;
    int top_;
    mutable std::mutex mu_;
    mutable std::map<int, std::vector<Monomial>> basis_;
    mutable std::map<int, SparseMatrix> delta_;
};

// Weight-0 projection block: loop slot (m, 0) -> base slot (m).
SparseMatrix weight0_projection(const LoopMixedComplex& l, const BaseMixedComplex& b, int m);

struct LoopAxiomReport {
    bool ok = true;
    int checks = 0;
    std::string witness;  // "<identity> on <monomial> (degree n)"
};
// delta^2 = i^2 = delta i + i delta = 0, Psi_k delta = delta Psi_k, Psi_k i = k i Psi_k,
// weight behaviour and Psi_k = k^r on weight r, on every basis monomial of degree <= cutoff
LoopAxiomReport verify_loop(const LoopAlgebra& l, int cutoff, const std::vector<int>& ks);

// The Lambda[u] model, |u| = 2: D = delta + u*i on Lambda[V + V~ + u]; label q = weight - (u-exponent).
class UModel {
public:
    explicit UModel(LoopPtr l);
    const FreeAlgebra& algebra() const { return *alg_; }
    const Derivation& differential() const { return d_; }
    int u_id() const { return u_; }
    std::vector<Monomial> basis(int n, int q) const;
    Complex complex(int q, int hi) const;  // degrees -1..hi, label q
    AlgebraMap power_map(int k) const;    // v -> v, v~ -> k v~, u -> u/k
    SparseMatrix psi(int k, int n, int q) const;

private:
    LoopPtr loop_;
    AlgebraPtr alg_;
    int u_ = 0;
    Derivation d_;
};

}  // namespace cdgacyc

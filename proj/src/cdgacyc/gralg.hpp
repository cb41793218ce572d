#pragma once
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cdgacyc/linalg.hpp"
#include "cdgacyc/rational.hpp"

namespace cdgacyc {

struct Generator {
    int id = 0;
    std::string name;
    int degree = 0;
    int weight = 0;  // number of barred factors it carries (0 or 1)
};

struct Monomial {
    std::vector<std::pair<int, int>> f;  // (generator id, exponent), sorted by id

    bool is_unit() const { return f.empty(); }
    int length() const;  // total exponent
    auto operator<=>(const Monomial&) const = default;
};

struct Polynomial {
    std::map<Monomial, Rational> terms;

    Polynomial() = default;
    static Polynomial constant(const Rational& c);
    static Polynomial of(const Monomial& m, const Rational& c = 1);

    bool is_zero() const { return terms.empty(); }
    void add(const Monomial& m, const Rational& c);
    void add(const Polynomial& p, const Rational& s = 1);
    Polynomial scaled(const Rational& s) const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    bool operator==(const Polynomial& o) const { return terms == o.terms; }
};

struct SignedMonomial {
    int sign = 0;  // 0 flags a vanishing product
    Monomial m;
};

class FreeAlgebra {
public:
    explicit FreeAlgebra(std::vector<Generator> gens);

    const std::vector<Generator>& generators() const { return gens_; }
    const Generator& gen(int id) const { return gens_.at(id); }
    int size() const { return int(gens_.size()); }
    int find(std::string_view name) const;  // -1 if absent
    bool has_degree_zero() const;
    int max_degree() const;

    int degree(const Monomial& m) const;
    int weight(const Monomial& m) const;
    void validate(const Monomial& m) const;
    int degree(const Polynomial& p) const;  // -1 for zero, throws if inhomogeneous

    Monomial generator_monomial(int id, int exp = 1) const;
    Polynomial generator(int id) const { return Polynomial::of(generator_monomial(id)); }

    SignedMonomial multiply(const Monomial& a, const Monomial& b) const;
    Polynomial mul(const Polynomial& a, const Polynomial& b) const;
    Polynomial power(const Polynomial& a, int e) const;

    // canonical degree-n basis; weight < 0 means all weights (needs no degree-0 generators)
    std::vector<Monomial> basis(int n, int weight = -1) const;

    std::string format(const Monomial& m) const;
    std::string format(const Polynomial& p) const;
    bool same_generators(const FreeAlgebra& o) const;

private:
    std::vector<Generator> gens_;
};

using AlgebraPtr = std::shared_ptr<const FreeAlgebra>;

// Graded derivation of degree `shift`, determined by its values on generators.
class Derivation {
public:
    Derivation() = default;
    Derivation(AlgebraPtr a, int shift, std::vector<Polynomial> values);

    const FreeAlgebra& algebra() const { return *alg_; }
    AlgebraPtr algebra_ptr() const { return alg_; }
    int shift() const { return shift_; }
    const Polynomial& value(int g) const { return values_.at(g); }
    const std::vector<Polynomial>& values() const { return values_; }

    Polynomial apply(const Monomial& m) const;
    Polynomial apply(const Polynomial& p) const;

private:
    AlgebraPtr alg_;
    int shift_ = 0;
    std::vector<Polynomial> values_;
};

Derivation extend_derivation(AlgebraPtr a, int shift, std::vector<Polynomial> values);

struct DifferentialReport {
    bool ok = true;
    std::string witness;  // first generator or monomial violating D∘D = 0
    int degree = -1;
    std::string message;
};

// D∘D = 0 on generators, then (redundantly) on every basis monomial up to `cutoff`
DifferentialReport check_differential(const Derivation& d, int cutoff);

struct FreeCDGA {
    std::string name;
    AlgebraPtr alg;
    Derivation d;

    const FreeAlgebra& algebra() const { return *alg; }
    int num_generators() const { return alg->size(); }
    bool one_connected() const;
    std::map<int, int> generator_counts() const;  // degree -> count
};

// names/degrees plus differential values; validates connectivity and homogeneity, not d∘d
FreeCDGA make_free_cdga(const std::string& name, const std::vector<std::pair<std::string, int>>& gens,
                        const std::vector<Polynomial>& dvalues);
FreeCDGA tensor(const FreeCDGA& a, const FreeCDGA& b, const std::string& name = "");

// Algebra homomorphism between free algebras, given on generators.
class AlgebraMap {
public:
    AlgebraMap() = default;
    AlgebraMap(AlgebraPtr src, AlgebraPtr tgt, std::vector<Polynomial> values);
    Polynomial apply(const Monomial& m) const;
    Polynomial apply(const Polynomial& p) const;
    const FreeAlgebra& source() const { return *src_; }
    const FreeAlgebra& target() const { return *tgt_; }
    const Polynomial& value(int g) const { return values_.at(g); }

private:
    AlgebraPtr src_, tgt_;
    std::vector<Polynomial> values_;
};

// matrix of p -> apply(p) from span(src) to span(tgt); images must lie in span(tgt)
template <class F>
SparseMatrix operator_matrix(const std::vector<Monomial>& src, const std::vector<Monomial>& tgt, F&& apply);

std::map<Monomial, int> index_of(const std::vector<Monomial>& basis);
Vector coefficients(const Polynomial& p, const std::map<Monomial, int>& index, int n);
Polynomial from_coefficients(const Vector& v, const std::vector<Monomial>& basis);

}  // namespace cdgacyc

#include "cdgacyc/gralg_impl.hpp"

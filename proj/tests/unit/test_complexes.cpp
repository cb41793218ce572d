#include "doctest.h"

#include "cdgacyc/complexes.hpp"
#include "cdgacyc/error.hpp"

using namespace cdgacyc;

namespace {

// C^0 = Q<a>, C^1 = Q<b>, beta(b) = a, delta = 0: beta-acyclic
std::shared_ptr<TableMixedComplex> acyclic_pair(bool weighted) {
    auto m = std::make_shared<TableMixedComplex>(weighted, 20);
    m->set_dim(0, weighted ? 1 : 0, 1);
    m->set_dim(1, 0, 1);
    SparseMatrix b(1, 1);
    b.set(0, 0, 1);
    m->set_beta(1, 0, b);
    m->set_label("acyclic pair");
    return m;
}

// beta = 0, C^0 = Q, C^2 = Q, C^3 = Q, delta: C^2 -> C^3 iso
std::shared_ptr<TableMixedComplex> beta_zero() {
    auto m = std::make_shared<TableMixedComplex>(false, 20);
    m->set_dim(0, 0, 1);
    m->set_dim(2, 0, 1);
    m->set_dim(3, 0, 1);
    m->set_dim(4, 0, 1);
    SparseMatrix d(1, 1);
    d.set(0, 0, 1);
    m->set_delta(2, 0, d);
    return m;
}

int h(const Complex& c, int n) { return c.cohomology(n).dim(); }

}  // namespace

TEST_CASE("one-point complex: plus, minus and periodic towers") {
    auto pt = one_point_complex(false);
    Complex plus = plus_complex(*pt, std::nullopt, 12);
    for (int n = 0; n <= 11; ++n) CHECK(h(plus, n) == (n % 2 == 0 ? 1 : 0));
    Complex minus = minus_complex(*pt, std::nullopt, 12, 8);
    for (int n = 0; n <= 11; ++n) CHECK(h(minus, n) == (n == 0 ? 1 : 0));
    Complex per = periodic_complex(*pt, std::nullopt, 12, 8);
    for (int n = 0; n <= 11; ++n) CHECK(h(per, n) == (n % 2 == 0 ? 1 : 0));
    auto hs = homology_side(*pt, 0, 10, 6);
    for (int n = 0; n <= 10; n += 2) CHECK(hs.plus.dim(n) == 1);
    CHECK(hs.plain.dim(0) == 1);
}

TEST_CASE("minus tower without weights needs a truncation") {
    auto pt = one_point_complex(false);
    CHECK_THROWS_AS(minus_complex(*pt, std::nullopt, 6), Error);
}

TEST_CASE("beta = 0 decouples the towers") {
    auto m = beta_zero();
    Complex plus = plus_complex(*m, std::nullopt, 12);
    // H = Q in degrees 0 and 4
    int expect[] = {1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 2};
    for (int n = 0; n <= 10; ++n) CHECK(h(plus, n) == expect[n]);
    Complex minus = minus_complex(*m, std::nullopt, 14, 6);
    CHECK(h(minus, 0) == 2);
    CHECK(h(minus, 2) == 1);
    CHECK(h(minus, 4) == 1);
    CHECK(h(minus, 6) == 0);
    auto hs = homology_side(*m, 0, 4);
    for (int n = 0; n <= 4; ++n) CHECK(hs.plain.dim(n) == m->dim(n, 0));
}

TEST_CASE("weighted one-point labels") {
    auto pt = one_point_complex(true);
    for (int q = -3; q <= 3; ++q) {
        Complex plus = plus_complex(*pt, q, 10);
        for (int n = 0; n <= 9; ++n) CHECK(h(plus, n) == (q <= 0 && n == -2 * q ? 1 : 0));
        Complex minus = minus_complex(*pt, q, 10);
        for (int n = 0; n <= 9; ++n) CHECK(h(minus, n) == (q == 0 && n == 0 ? 1 : 0));
    }
}

TEST_CASE("mapping cones") {
    auto m = beta_zero();
    Complex c = plus_complex(*m, std::nullopt, 10);
    ChainMap id = slot_map(c, c);
    Complex cone = mapping_cone(id, c, c);
    for (int n = cone.lo + 1; n < cone.hi; ++n) CHECK(h(cone, n) == 0);
    Complex zero = Complex::make("zero", 1, c.lo, c.hi);
    for (int n = zero.lo; n < zero.hi; ++n) zero.set_diff(n, SparseMatrix(0, 0));
    ChainMap z;
    for (int n = c.lo; n <= c.hi; ++n) z.f[n] = SparseMatrix(c.dim(n), 0);
    Complex cz = mapping_cone(z, zero, c);
    for (int n = 0; n < 9; ++n) CHECK(h(cz, n) == h(c, n));
    ChainMap bad;
    for (int n = c.lo; n <= c.hi; ++n) bad.f[n] = SparseMatrix::identity(c.dim(n));
    bad.f[2] = SparseMatrix(c.dim(2), c.dim(2));
    CHECK_THROWS_AS(mapping_cone(bad, c, c), Error);
}

TEST_CASE("axioms on tabulated complexes") {
    auto m = acyclic_pair(true);
    auto r = check_mixed_axioms(*m, 10, {-1, 2, 3});
    CHECK(r.ok);
    CHECK(r.checks > 0);
    m->set_psi(2, 1, 0, SparseMatrix::identity(1).scaled(5));
    auto bad = check_mixed_axioms(*m, 10, {2});
    CHECK_FALSE(bad.ok);
    CHECK(bad.witness.find("(1,0)") != std::string::npos);
}

TEST_CASE("beta-acyclic check") {
    auto ok = beta_acyclic_check(acyclic_pair(false), 6);
    CHECK(ok.status == "PASS");
    auto skip = beta_acyclic_check(beta_zero(), 6);
    CHECK(skip.status == "SKIPPED");
}

TEST_CASE("power action") {
    auto pt = one_point_complex(true);
    DerivedParams s{Tower::Plus, Side::Cochain, std::nullopt, -1, 10};
    auto one = power_action(*pt, s, 1);
    for (auto& [n, m] : one.on_degree) CHECK(m == SparseMatrix::identity(m.rows()));
    auto tau = power_action(*pt, s, -1);
    for (auto& [n, m] : tau.on_degree) CHECK(m * m == SparseMatrix::identity(m.rows()));
    // the class in +C^{2j} sits in slot j, scaled by k^{-j}
    auto two = power_action(*pt, s, 2);
    CHECK(two.on_degree.at(4).get(0, 0) == Rational(1, 4));
    CHECK_THROWS_AS(power_action(*pt, s, 0), Error);
}

TEST_CASE("long exact sequence of the plus tower") {
    auto pt = one_point_complex(true);
    for (int q = -3; q <= 1; ++q) {
        Complex A = reindex(plus_complex(*pt, q + 1, 12), -2);
        Complex B = plus_complex(*pt, q, 12);
        Complex C = derived_complex(*pt, {Tower::Plain, Side::Cochain, q, -1, 12});
        ChainMap f = slot_map(A, B), g = slot_map(B, C);
        auto seq = long_exact_sequence(A, B, C, f, g, 0, 10,
                                       [](int w, int n) { return std::to_string(w) + "@" + std::to_string(n); });
        auto r = les_audit(seq);
        CHECK(r.ok);
        CHECK(r.checked > 0);
    }
    LesReport empty = les_audit(ExactSequence{});
    CHECK(empty.ok);
}

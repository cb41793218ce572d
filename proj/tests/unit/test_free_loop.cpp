#include "doctest.h"

#include <fstream>

#include "cdgacyc/error.hpp"
#include "cdgacyc/free_loop.hpp"
#include "fixtures.hpp"
#include "json.hpp"

using namespace cdgacyc;

namespace {
int hh(const LoopMixedComplex& M, int n, int q) {
    Complex c = derived_complex(M, {Tower::Plain, Side::Cochain, q, -1, M.top()});
    return c.cohomology(n).dim();
}
}  // namespace

TEST_CASE("barred generators and delta on sphere2") {
    auto L = free_loop(fx::sphere2());
    const FreeAlgebra& A = L->algebra();
    CHECK(A.size() == 4);
    CHECK(A.gen(2).degree == 1);
    CHECK(A.gen(3).degree == 2);
    // delta(y~) = -i(x^2) = -2 x x~
    Polynomial expect = A.mul(A.generator(0), A.generator(2)).scaled(-2);
    CHECK(L->delta().value(3) == expect);
    CHECK(L->iota().value(1) == A.generator(3));
    CHECK(L->iota().value(3).is_zero());
}

TEST_CASE("sphere3 loop: zero differential") {
    auto L = free_loop(fx::sphere3());
    CHECK(L->delta().value(0).is_zero());
    CHECK(L->delta().value(1).is_zero());
    LoopMixedComplex M(L, 13);
    CHECK(M.dim(5, 1) == 1);  // x x~
    CHECK(M.dim(5, 0) == 0);
    CHECK(M.dim(5, 2) == 0);
}

TEST_CASE("loop axioms hold on fixtures and fail under a corrupted sign") {
    for (auto a : {fx::sphere2(), fx::sphere3(), fx::sphere_even4(), fx::cp2()}) {
        auto r = verify_loop(*free_loop(a), 12, {-1, 2, 3, 6});
        CHECK_MESSAGE(r.ok, a.name << ": " << r.witness);
    }
    LoopOptions bad;
    bad.corrupt_bar_sign = true;
    auto r = verify_loop(*free_loop(fx::sphere2(), bad), 12, {2});
    CHECK_FALSE(r.ok);
    CHECK(r.witness.find("delta i + i delta") != std::string::npos);
}

TEST_CASE("degree-1 generators need a weight cutoff") {
    CHECK_THROWS_AS(free_loop(fx::circle()), Error);
    LoopOptions o;
    o.weight_limit = 3;
    auto L = free_loop(fx::circle(), o);
    CHECK(L->basis(1, 2).size() == 1);  // x x~^2
    CHECK(verify_loop(*L, 6, {2}).ok);
}

TEST_CASE("weight slices partition each degree") {
    auto L = free_loop(fx::sphere2());
    auto s = weight_slices(*L, 10, 10);
    CHECK(s.exact);
    for (int n = 0; n <= 10; ++n) {
        size_t tot = 0;
        for (auto& sl : s.slices) tot += sl.basis[n].size();
        CHECK(tot == L->algebra().basis(n).size());
    }
    for (auto& m : s.slices[0].basis[7]) CHECK(L->algebra().weight(m) == 0);
}

TEST_CASE("power maps compose") {
    auto L = free_loop(fx::sphere2());
    LoopMixedComplex M(L, 12);
    for (int n = 0; n <= 8; ++n)
        for (int p = 0; p <= n; ++p) {
            CHECK(M.psi(2, n, p) * M.psi(3, n, p) == M.psi(6, n, p));
            CHECK(M.psi(1, n, p) == SparseMatrix::identity(M.dim(n, p)));
            CHECK(M.psi(-1, n, p) * M.psi(-1, n, p) == SparseMatrix::identity(M.dim(n, p)));
        }
}

TEST_CASE("HH agrees with the frozen brute-force oracle") {
    std::ifstream in(CDGACYC_ORACLE_FILE);
    REQUIRE(in);
    auto j = nlohmann::json::parse(in);
    std::map<std::string, FreeCDGA> fs = {{"trivial", fx::trivial()},
                                          {"sphere3", fx::sphere3()},
                                          {"sphere2", fx::sphere2()},
                                          {"sphereEven4", fx::sphere_even4()}};
    for (auto& [name, a] : fs) {
        LoopMixedComplex M(free_loop(a), 13);
        auto& o = j.at(name);
        for (int n = 0; n <= 12; ++n) {
            int tot = 0;
            for (int q = 0; q <= n; ++q) {
                int d = hh(M, n, q);
                tot += d;
                auto w = o.at("hh_weights");
                int expect = w.contains(std::to_string(q)) ? w[std::to_string(q)][n].get<int>() : 0;
                CHECK_MESSAGE(d == expect, name << " HH^" << n << "(" << q << ")");
            }
            CHECK(tot == o.at("hh")[n].get<int>());
        }
    }
}

TEST_CASE("ideals of the loop complex") {
    auto L = free_loop(fx::sphere3());
    auto M = std::make_shared<LoopMixedComplex>(L, 13);
    auto plus = augmentation_ideal(M);
    CHECK(plus->dim(0, 0) == 0);
    CHECK(plus->dim(3, 0) == 1);
    auto im = image_of_beta(M);
    CHECK(im->dim(2, 1) == 1);  // x~
    CHECK(im->dim(0, 0) == 0);
    auto r = beta_acyclic_check(plus, 10);
    CHECK(r.status == "PASS");
}

TEST_CASE("u-model of the one-point algebra and of sphere3") {
    UModel U0(free_loop(fx::trivial()));
    for (int q = -5; q <= 0; ++q) {
        Complex c = U0.complex(q, 11);
        for (int n = 0; n <= 10; ++n) CHECK(c.cohomology(n).dim() == (n == -2 * q ? 1 : 0));
    }
    UModel U(free_loop(fx::sphere3()));
    int tot[11] = {};
    for (int q = -6; q <= 10; ++q) {
        Complex c = U.complex(q, 11);
        for (int n = 0; n <= 10; ++n) tot[n] += c.cohomology(n).dim();
    }
    int expect[11] = {1, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2};
    for (int n = 0; n <= 10; ++n) CHECK(tot[n] == expect[n]);
    // u -> u/2 and x~ -> 2 x~: u has label -1, x~ label +1
    auto m = U.psi(2, 2, 1);
    for (int i = 0; i < m.rows(); ++i) CHECK(m.get(i, i) == 2);
    auto mu = U.psi(2, 2, -1);
    CHECK(mu.get(0, 0) == Rational(1, 2));
}

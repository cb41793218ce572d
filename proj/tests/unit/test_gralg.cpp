#include "doctest.h"

#include "cdgacyc/error.hpp"
#include "cdgacyc/gralg.hpp"

using namespace cdgacyc;

namespace {
AlgebraPtr alg(std::vector<std::pair<std::string, int>> g) {
    std::vector<Generator> gens;
    for (auto& [n, d] : g) gens.push_back({0, n, d, 0});
    return std::make_shared<FreeAlgebra>(gens);
}
}  // namespace

TEST_CASE("odd generators anticommute and square to zero") {
    auto a = alg({{"a", 1}, {"b", 1}, {"x", 2}});
    auto A = a->generator(0), B = a->generator(1), X = a->generator(2);
    CHECK(a->mul(A, B) == a->mul(B, A).scaled(-1));
    CHECK(a->mul(A, A).is_zero());
    CHECK(a->mul(X, A) == a->mul(A, X));
    CHECK(a->power(X, 3).terms.size() == 1);
}

TEST_CASE("basis counts") {
    auto a = alg({{"x", 2}, {"y", 3}});
    CHECK(a->basis(0).size() == 1);
    CHECK(a->basis(1).empty());
    CHECK(a->basis(5).size() == 1);  // xy
    CHECK(a->basis(6).size() == 1);  // x^3
    CHECK(a->basis(7).size() == 1);  // x^2 y
    auto z = alg({{"t", 0}});
    CHECK_THROWS_AS(z->basis(0), Error);
}

TEST_CASE("Leibniz rule with Koszul signs") {
    auto a = alg({{"x", 2}, {"y", 3}});
    auto d = extend_derivation(a, 1, {Polynomial(), a->power(a->generator(0), 2)});
    auto xy = a->mul(a->generator(0), a->generator(1));
    CHECK(d.apply(xy) == a->power(a->generator(0), 3));
    CHECK(check_differential(d, 12).ok);
    auto b = alg({{"a", 1}, {"b", 1}});
    // d(a) = 0, d(b) = 0 but a degree -1 derivation a -> 1 shows the sign
    auto i = extend_derivation(b, -1, {Polynomial::constant(1), Polynomial()});
    auto ba = b->mul(b->generator(1), b->generator(0));
    CHECK(i.apply(ba) == b->generator(1).scaled(-1));
}

TEST_CASE("d squared detection names the witness") {
    auto a = alg({{"x", 2}, {"y", 2}, {"z", 3}});
    auto ok = extend_derivation(a, 1, {Polynomial(), Polynomial(), a->mul(a->generator(1), a->generator(0))});
    CHECK(check_differential(ok, 8).ok);
    auto b = alg({{"x", 2}, {"y", 3}, {"w", 2}});
    auto bad = extend_derivation(b, 1, {Polynomial(), b->power(b->generator(0), 2), b->generator(1)});
    auto r = check_differential(bad, 8);
    CHECK_FALSE(r.ok);
    CHECK(r.witness == "w");
}

TEST_CASE("make_free_cdga validation") {
    CHECK_THROWS_AS(make_free_cdga("z", {{"t", 0}}, {Polynomial()}), Error);
    CHECK_THROWS_AS(make_free_cdga("dup", {{"x", 2}, {"x", 3}}, {Polynomial(), Polynomial()}), Error);
    auto s = make_free_cdga("s3", {{"x", 3}}, {Polynomial()});
    CHECK(s.one_connected());
    auto c = make_free_cdga("c", {{"x", 1}}, {Polynomial()});
    CHECK_FALSE(c.one_connected());
}

TEST_CASE("algebra maps multiply images") {
    auto a = alg({{"x", 2}, {"y", 3}});
    AlgebraMap f(a, a, {a->generator(0).scaled(2), a->generator(1).scaled(3)});
    auto xy = a->mul(a->generator(0), a->generator(1));
    CHECK(f.apply(xy) == xy.scaled(6));
}

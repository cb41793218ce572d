#include "cdgacyc/minimal_model.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace cdgacyc;

namespace {
std::vector<Term> t(int e, Rational c = 1) { return {{c, e}}; }

// 1, a2, a4 with a*a = a4: the cohomology of CP^2
FiniteCDGA cp2_cohomology() {
    return FiniteCDGA::make("cp2-finite", {{"1", 0}, {"a", 2}, {"b", 4}}, {{1, 1, t(2)}}, {});
}
FiniteCDGA s2_cohomology() { return FiniteCDGA::make("s2", {{"1", 0}, {"a", 2}}, {}, {}); }
FiniteCDGA s3_cohomology() { return FiniteCDGA::make("s3", {{"1", 0}, {"a", 3}}, {}, {}); }
FiniteCDGA point() { return FiniteCDGA::make("pt", {{"1", 0}}, {}, {}); }
}  // namespace

TEST_CASE("finite CDGA validation") {
    CHECK_NOTHROW(cp2_cohomology());
    CHECK_THROWS_AS(FiniteCDGA::make("bad", {{"1", 0}, {"a", 2}}, {{1, 1, t(1)}}, {}), Error);
    // a3*a3 must vanish by graded commutativity
    CHECK_THROWS_AS(FiniteCDGA::make("bad", {{"1", 0}, {"a", 3}, {"b", 6}}, {{1, 1, t(2)}}, {}), Error);
    // d not a derivation: da = b but a*a = c with dc = 0 while d(a*a) should be 2ab
    CHECK_THROWS_AS(FiniteCDGA::make("bad", {{"1", 0}, {"a", 2}, {"b", 3}, {"c", 4}, {"e", 5}},
                                     {{1, 1, t(3)}, {1, 2, t(4)}}, {{1, t(2)}}),
                    Error);
    CHECK_THROWS_AS(FiniteCDGA::make("bad", {{"1", 0}, {"u", 0}}, {}, {}), Error);
}

TEST_CASE("verify_minimal") {
    CHECK(verify_minimal(fx::sphere2(), 12).ok());
    CHECK(verify_minimal(fx::sphere3(), 12).ok());
    CHECK_FALSE(verify_minimal(fx::sphere2_nonminimal(), 12).ok());
    auto lin = make_free_cdga("lin", {{"x", 2}, {"y", 2}}, {Polynomial(), Polynomial()});
    CHECK(verify_minimal(lin, 12).ok());
    auto bad = make_free_cdga("bad", {{"x", 2}, {"y", 1}}, {Polynomial(), Polynomial::of(fx::mono({{0, 1}}))});
    auto r = verify_minimal(bad, 12);
    CHECK_FALSE(r.ok());
}

TEST_CASE("quasi-isomorphisms between free models") {
    auto s2 = std::make_shared<FreeView>(fx::sphere2(), 14);
    FreeCDGA nm = fx::sphere2_nonminimal();
    // x -> x, y -> y, a -> 0, b -> 0
    std::vector<Vector> vals = {s2->coords(s2->algebra().alg->generator(0)), s2->coords(s2->algebra().alg->generator(1)),
                                zero_vector(s2->dim(5)), zero_vector(s2->dim(4))};
    CDGAMorphism f(nm, s2, vals);
    CHECK_NOTHROW(f.verify(12));
    auto r = is_quasi_iso(f, 12);
    CHECK(r.ok);
    CHECK(r.window == 11);
    // identity
    auto id = std::make_shared<FreeView>(fx::sphere3(), 14);
    CDGAMorphism i(fx::sphere3(), id, {id->coords(id->algebra().alg->generator(0))});
    CHECK(is_quasi_iso(i, 12).ok);
    // acyclic source to the point
    auto ac = make_free_cdga("acyclic", {{"a", 5}, {"b", 4}}, {Polynomial(), Polynomial::of(fx::mono({{0, 1}}))});
    auto pt = std::make_shared<FiniteCDGA>(point());
    CDGAMorphism p(ac, pt, {zero_vector(0), zero_vector(0)});
    CHECK(is_quasi_iso(p, 12).ok);
    // zero map from sphere3 to its cohomology is not a quasi-isomorphism
    auto s3 = std::make_shared<FiniteCDGA>(s3_cohomology());
    CDGAMorphism z(fx::sphere3(), s3, {zero_vector(1)});
    auto zr = is_quasi_iso(z, 12);
    CHECK_FALSE(zr.ok);
    CHECK(zr.witness.find("H^3") != std::string::npos);
}

TEST_CASE("minimal models of small cohomology algebras") {
    auto m2 = build_minimal_model(s2_cohomology(), 12);
    CHECK(m2.model.generator_counts() == fx::sphere2().generator_counts());
    CHECK(verify_minimal(m2.model, 12).ok());
    CHECK(is_quasi_iso(*m2.theta, 12).ok);

    auto m3 = build_minimal_model(s3_cohomology(), 12);
    CHECK(m3.model.generator_counts() == fx::sphere3().generator_counts());

    auto mp = build_minimal_model(point(), 12);
    CHECK(mp.model.num_generators() == 0);

    auto c = build_minimal_model(cp2_cohomology(), 12);
    CHECK(c.model.generator_counts() == fx::cp2().generator_counts());
    CHECK(is_quasi_iso(*c.theta, 12).ok);

    auto h1 = FiniteCDGA::make("circle", {{"1", 0}, {"a", 1}}, {}, {});
    CHECK_THROWS_WITH_AS(build_minimal_model(h1, 6), doctest::Contains("1-connectedness"), Error);
}

TEST_CASE("builder is idempotent on minimal free input and seed independent") {
    for (auto a : {fx::sphere2(), fx::sphere_even4(), fx::cp2()}) {
        auto m = build_minimal_model(truncate(a, 14), 12);
        CHECK(m.model.generator_counts() == a.generator_counts());
        for (unsigned seed : {1u, 7u}) {
            auto r = build_minimal_model(truncate(a, 14), 12, seed);
            CHECK(r.model.generator_counts() == a.generator_counts());
            CHECK(is_quasi_iso(*r.theta, 12).ok);
        }
    }
    // a non-minimal input collapses to the minimal counts
    auto nm = build_minimal_model(truncate(fx::sphere2_nonminimal(), 14), 12);
    CHECK(nm.model.generator_counts() == fx::sphere2().generator_counts());
}

TEST_CASE("functors through the builder match the free model") {
    FunctorOptions o;
    o.cutoff = 8;
    o.weight_max = 8;
    auto r = functor_on_cdga(s2_cohomology(), o);
    Functors direct(fx::sphere2(), o);
    auto a = r.functors->hh(), b = direct.hh();
    for (int n = 0; n <= 8; ++n) CHECK(a.entries[n].weights == b.entries[n].weights);
    auto r7 = functor_on_cdga(s2_cohomology(), o, 7);
    auto c = r7.functors->ch(), d = direct.ch();
    for (int n = 0; n <= 8; ++n) CHECK(c.dim(n) == d.dim(n));
}

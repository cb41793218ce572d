#include "cdgacyc/functors.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace cdgacyc;

namespace {
FunctorOptions small(int n = 8) {
    FunctorOptions o;
    o.cutoff = n;
    o.weight_max = n;
    return o;
}
std::string first_failure(const AuditReport& r) {
    for (auto& c : r.checks)
        if (c.failed()) return c.name + ": " + c.detail;
    return "";
}
}  // namespace

TEST_CASE("HH and CH of the odd sphere") {
    Functors f(fx::sphere3(), small());
    auto hh = f.hh();
    auto ch = f.ch();
    for (int n = 0; n <= 8; ++n) {
        CHECK(hh.certified(n));
        CHECK(hh.dim(n) == (n == 1 ? 0 : 1));
        CHECK(ch.dim(n) == (n == 0 ? 1 : n % 2 ? 0 : 2));
    }
    CHECK(hh.dim(2, 1) == 1);
    CHECK(hh.dim(5, 1) == 1);
    CHECK(hh.dim(6, 3) == 1);
}

TEST_CASE("one-point algebra") {
    Functors f(fx::trivial(), small());
    auto hh = f.hh(), ch = f.ch(), k = f.k_groups();
    auto ph = f.ph();
    for (int n = 0; n <= 8; ++n) {
        CHECK(hh.dim(n) == (n == 0));
        CHECK(ch.dim(n) == (n % 2 == 0));
        CHECK(k.dim(n) == (n % 2 == 0));
        CHECK(ph.colimit.dim(n) == (n % 2 == 0));
    }
    auto e = f.euler_series();
    CHECK(e.chi_h[0] == 1);
    for (int r = 1; r <= 8; ++r) CHECK(e.chi_h[r] == 0);
}

TEST_CASE("K groups") {
    Functors s3(fx::sphere3(), small()), s2(fx::sphere2(), small());
    auto a = s3.k_groups(), b = s2.k_groups();
    for (int n = 0; n <= 8; ++n) {
        CHECK(a.certified(n));
        CHECK(a.dim(n) == 1);
        CHECK(b.dim(n) == (n % 2 ? 0 : 2));
    }
}

TEST_CASE("PH stabilizes and matches the periodic complex") {
    Functors f(fx::sphere3(), small());
    auto p = f.ph();
    CHECK(p.tail_certified);
    for (int n = 0; n <= 8; ++n) {
        CHECK(p.colimit.certified(n));
        CHECK(p.colimit.dim(n) == p.periodic.dim(n));
        if (n % 2 == 0) CHECK(p.colimit.dim(n) == f.k_groups().dim(n));
    }
    auto bad = f.ph(true);
    bool broken = false;
    for (int n = 0; n <= 8; ++n) broken |= !bad.colimit.certified(n) || bad.colimit.dim(n) != p.colimit.dim(n);
    CHECK(broken);
}

TEST_CASE("exactness audits on the spheres") {
    for (auto a : {fx::sphere3(), fx::sphere2()}) {
        Functors f(a, small());
        auto r2 = f.gysin_audit();
        CHECK_MESSAGE(r2.ok(), first_failure(r2));
        auto r7 = f.comparison_audit();
        CHECK_MESSAGE(r7.ok(), first_failure(r7));
        auto t2 = f.sh_sequence_audit();
        CHECK_MESSAGE(t2.ok(), first_failure(t2));
        for (auto& c : t2.checks) CHECK(c.checked > 0);
    }
}

TEST_CASE("negative controls fail with a witness") {
    Functors f(fx::sphere3(), small());
    ComparisonOptions bad;
    bad.corrupt_connecting = true;
    auto r = f.comparison_audit(bad);
    CHECK_FALSE(r.ok());
    CHECK(first_failure(r).find("node") != std::string::npos);
    auto t = f.sh_sequence_audit(ConeKind::DropProjection);
    CHECK_FALSE(t.ok());
    FunctorOptions o = small();
    o.corrupt_bar_sign = true;
    Functors g(fx::sphere2(), o);
    auto ax = g.axioms({2});
    CHECK_FALSE(ax.ok());
    CHECK(first_failure(ax).find("degree") != std::string::npos);
}

TEST_CASE("eigenstructure and cross pipelines") {
    for (auto a : {fx::sphere3(), fx::sphere2()}) {
        Functors f(a, small());
        auto t = f.eigen_audit();
        CHECK_MESSAGE(t.ok(), first_failure(t));
        auto c = f.cross_pipelines();
        CHECK_MESSAGE(c.ok(), first_failure(c));
        for (auto& x : c.checks) CHECK(x.checked > 0);
    }
}

TEST_CASE("Euler series of the odd sphere") {
    Functors f(fx::sphere3(), small());
    auto e = f.euler_series();
    int certified = 0;
    for (auto& [r, x] : e.chi_h)
        if (e.h_certified[r]) {
            CHECK(x == 0);
            ++certified;
        }
    CHECK(certified >= 3);
}

TEST_CASE("SH of the odd sphere splits as Kbar plus shifted CHbar") {
    Functors f(fx::sphere3(), small());
    auto sh = f.sh();
    int want[] = {1, 1, 0, 2, 0, 2, 0, 2, 0};
    for (int n = 0; n <= 8; ++n) {
        CHECK(sh.certified(n));
        CHECK(sh.dim(n) == want[n]);
    }
    auto red = f.reduced();
    CHECK(red.ch_bar.dim(0) == 0);
    CHECK(red.ch_bar.dim(2) == 1);
    CHECK(red.k_bar.dim(3) == 1);
}

#pragma once
#include "cdgacyc/gralg.hpp"

namespace fx {
using namespace cdgacyc;

inline Monomial mono(std::vector<std::pair<int, int>> f) { return Monomial{std::move(f)}; }

inline FreeCDGA trivial() { return make_free_cdga("trivial", {}, {}); }
inline FreeCDGA sphere3() { return make_free_cdga("sphere3", {{"x", 3}}, {Polynomial()}); }
inline FreeCDGA sphere2() {
    return make_free_cdga("sphere2", {{"x", 2}, {"y", 3}}, {Polynomial(), Polynomial::of(mono({{0, 2}}))});
}
inline FreeCDGA sphere_even4() {
    return make_free_cdga("sphereEven4", {{"x", 4}, {"y", 7}}, {Polynomial(), Polynomial::of(mono({{0, 2}}))});
}
inline FreeCDGA cp2() {
    return make_free_cdga("cp2", {{"x", 2}, {"y", 5}}, {Polynomial(), Polynomial::of(mono({{0, 3}}))});
}
// Lambda[x2, y3, a5, b4], dy = x^2, db = a: not minimal, quasi-isomorphic to sphere2
inline FreeCDGA sphere2_nonminimal() {
    return make_free_cdga("sphere2-nonminimal", {{"x", 2}, {"y", 3}, {"a", 5}, {"b", 4}},
                          {Polynomial(), Polynomial::of(mono({{0, 2}})), Polynomial(), Polynomial::of(mono({{2, 1}}))});
}
inline FreeCDGA circle() { return make_free_cdga("circle", {{"x", 1}}, {Polynomial()}); }
}  // namespace fx

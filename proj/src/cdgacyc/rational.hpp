#pragma once
#include <gmpxx.h>
#include <string>
#include <string_view>

namespace cdgacyc {

using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "p", "-p", "p/q"; anything else (floats, exponents, blanks) is rejected.
Rational parse_rational(std::string_view s);
std::string to_string(const Rational& q);
Rational rpow(const Rational& base, int e);

}  // namespace cdgacyc

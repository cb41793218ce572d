#include "cdgacyc/rational.hpp"

#include "cdgacyc/error.hpp"

namespace cdgacyc {

namespace {
bool is_int_literal(std::string_view s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}
}  // namespace

Rational parse_rational(std::string_view s) {
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
    if (!is_int_literal(num) || !is_int_literal(den) || den[0] == '-' || den[0] == '+')
        fail(ErrorKind::Parse, "malformed rational '" + std::string(s) + "' (expected p or p/q)");
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    Integer a(n), b{std::string(den)};
    if (b == 0) fail(ErrorKind::Parse, "zero denominator in '" + std::string(s) + "'");
    Rational q(a, b);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational rpow(const Rational& base, int e) {
    Rational r = 1;
    Rational b = e >= 0 ? base : Rational(1) / base;
    for (int i = 0; i < (e >= 0 ? e : -e); ++i) r *= b;
    return r;
}

}  // namespace cdgacyc

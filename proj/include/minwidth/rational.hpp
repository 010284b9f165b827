#pragma once

// Exact rational arithmetic helpers.
//
// All geometry predicates and dyadic-exact network evaluation run on
// boost::multiprecision::cpp_rational.  Doubles are promoted to rationals
// exactly (every finite double is a dyadic rational), never through decimal
// strings.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace minwidth {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact double -> rational conversion via mantissa/exponent decomposition.
inline Rational rat_from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
    if (x == 0.0) return Rational(0);
    int exp = 0;
    double m = std::frexp(x, &exp);       // x = m * 2^exp, |m| in [0.5, 1)
    auto mi = static_cast<std::int64_t>(std::ldexp(m, 53));  // integer, |mi| < 2^53
    exp -= 53;
    Rational r(mi);
    if (exp > 0) {
        r *= Rational(BigInt(1) << exp);
    } else if (exp < 0) {
        r /= Rational(BigInt(1) << (-exp));
    }
    return r;
}

inline double rat_to_double(const Rational& r) { return static_cast<double>(r); }

// True iff r = p / 2^k for some integer p, k >= 0.
inline bool is_dyadic(const Rational& r) {
    BigInt den = denominator(r);
    return den > 0 && (den & (den - 1)) == 0;
}

// Exact decimal string for a dyadic rational p/2^k (finite decimal expansion).
inline std::string dyadic_decimal_string(const Rational& r) {
    if (!is_dyadic(r)) throw std::invalid_argument("dyadic_decimal_string: not dyadic");
    BigInt num = numerator(r), den = denominator(r);
    bool neg = num < 0;
    if (neg) num = -num;
    // p/2^k = p*5^k / 10^k
    unsigned k = 0;
    for (BigInt d = den; d > 1; d >>= 1) ++k;
    BigInt scaled = num;
    for (unsigned i = 0; i < k; ++i) scaled *= 5;
    std::string digits = scaled.str();
    std::string out;
    if (k == 0) {
        out = digits;
    } else {
        if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
        out = digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
        // trim trailing zeros but keep at least one fractional digit
        while (out.back() == '0' && out[out.size() - 2] != '.') out.pop_back();
    }
    return neg ? "-" + out : out;
}

// Parse "p/q" (or a plain integer string) into a rational.
inline Rational rat_from_fraction_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("rat_from_fraction_string: zero denominator");
    return Rational(p) / Rational(q);
}

inline std::string rat_to_fraction_string(const Rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace minwidth

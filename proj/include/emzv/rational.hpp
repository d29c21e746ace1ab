#pragma once

#include <gmpxx.h>

#include <string>

#include "errors.hpp"

namespace emzv {

/// Exact rational number in canonical form (reduced, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw ArgumentError("zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// "-1/2", "3", "0".
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(const std::string& text) {
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0) throw ParseError("malformed rational: '" + text + "'");
    if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

inline Rational sign_power(std::uint64_t exponent) { return exponent % 2 == 0 ? Rational(1) : Rational(-1); }

inline Integer factorial(unsigned n) {
    Integer f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace emzv

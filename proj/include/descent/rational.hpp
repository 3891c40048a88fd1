#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace descent {

using Rational = mpq_class;

// Accepts "p/q", integers and finite decimals ("1.25", "-3e-2" is not accepted).
// The result is canonical (reduced, positive denominator).
Rational parse_rational(std::string_view text);

// Canonical "p/q" form, or plain "p" when the denominator is 1.
std::string to_string(const Rational& q);

inline Rational positive_part(const Rational& q) { return sgn(q) > 0 ? q : Rational(0); }

inline Rational rational_abs(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

// q^e for an integer exponent e >= 0 (exact).
Rational rational_pow(const Rational& q, unsigned long e);

}  // namespace descent

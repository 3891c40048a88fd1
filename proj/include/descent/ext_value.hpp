#pragma once

#include "descent/rational.hpp"

#include <compare>
#include <string>
#include <vector>

namespace descent {

// coef * radicand^(1/degree). Canonical terms have coef > 0, a radicand that is
// free of degree-th powers (as far as trial division detects), and degree 1
// exactly when radicand == 1.
struct RadicalTerm {
    Rational coef;
    mpz_class radicand;
    unsigned degree = 1;

    bool operator==(const RadicalTerm&) const = default;
};

// Extended nonnegative real used for operator values.
//
// Exact: a finite sum of canonical radical terms (a plain rational is a single
// degree-1 term, zero is the empty sum). Interval: a certified enclosure
// 0 < lo <= hi plus an expression key; identical keys denote identical values.
// Infinite: +inf, never a sentinel number.
class ExtValue {
public:
    enum class Kind { Exact, Interval, Infinite };

    ExtValue() = default;  // zero
    static ExtValue zero() { return {}; }
    static ExtValue from_rational(const Rational& q);  // q >= 0
    static ExtValue infinity();
    static ExtValue root(const Rational& base, unsigned degree);  // base >= 0
    static ExtValue enclosure(Rational lo, Rational hi, std::string key);

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::Exact && terms_.empty(); }
    bool is_infinite() const { return kind_ == Kind::Infinite; }
    bool is_finite() const { return kind_ != Kind::Infinite; }
    bool is_exact() const { return kind_ == Kind::Exact; }
    bool is_rational() const;
    Rational as_rational() const;  // throws unless is_rational()
    const std::vector<RadicalTerm>& terms() const { return terms_; }

    // Certified bounds; precision in bits applies to irrational exact values.
    Rational lower(unsigned prec = 192) const;
    Rational upper(unsigned prec = 192) const;
    double to_double() const;

    // Canonical text: equal keys imply equal values.
    std::string key() const;
    std::string to_string() const;

    ExtValue scaled(const Rational& r) const;  // r >= 0, 0 * inf = 0
    ExtValue pow(const Rational& e) const;     // e > 0

    friend ExtValue operator+(const ExtValue& a, const ExtValue& b);
    ExtValue& operator+=(const ExtValue& b) { return *this = *this + b; }
    friend ExtValue operator*(const ExtValue& a, const ExtValue& b);  // 0 * inf = 0

    // unordered means the comparison could not be decided with certainty.
    friend std::partial_ordering compare(const ExtValue& a, const ExtValue& b);
    friend std::partial_ordering operator<=>(const ExtValue& a, const ExtValue& b) { return compare(a, b); }
    friend bool operator==(const ExtValue& a, const ExtValue& b) { return compare(a, b) == 0; }

private:
    Kind kind_ = Kind::Exact;
    std::vector<RadicalTerm> terms_;
    Rational lo_, hi_;
    std::string key_;
};

// When the comparison is undecided these return an enclosure of both candidates.
ExtValue max_value(const ExtValue& a, const ExtValue& b);
ExtValue min_value(const ExtValue& a, const ExtValue& b);

// Canonical decomposition s^(1/d) = outer * inner^(1/degree) for s >= 1.
RadicalTerm canonical_radical(const mpz_class& s, unsigned d);

}  // namespace descent

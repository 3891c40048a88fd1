#include "descent/ext_value.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace descent {

namespace {

constexpr unsigned long kTrialBound = 10000;
constexpr unsigned kMaxExpandPower = 8;

class Mpfr {
public:
    explicit Mpfr(unsigned prec) { mpfr_init2(v_, prec); }
    ~Mpfr() { mpfr_clear(v_); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
    mpfr_ptr get() { return v_; }

    Rational to_rational() {
        Rational q;
        mpfr_get_q(q.get_mpq_t(), v_);
        return q;
    }

private:
    mpfr_t v_;
};

// Largest j such that r is a perfect j-th power; writes the root into t.
unsigned perfect_power(const mpz_class& r, mpz_class& t) {
    unsigned best = 1;
    t = r;
    size_t bits = mpz_sizeinbase(r.get_mpz_t(), 2);
    for (unsigned j = 2; j <= bits; ++j) {
        mpz_class root;
        if (mpz_root(root.get_mpz_t(), r.get_mpz_t(), j) != 0) {
            best = j;
            t = root;
        }
    }
    return best;
}

bool term_less(const RadicalTerm& a, const RadicalTerm& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return cmp(a.radicand, b.radicand) < 0;
}

void normalize(std::vector<RadicalTerm>& terms) {
    std::sort(terms.begin(), terms.end(), term_less);
    std::vector<RadicalTerm> out;
    for (auto& t : terms) {
        if (sgn(t.coef) == 0) continue;
        if (!out.empty() && out.back().degree == t.degree && out.back().radicand == t.radicand)
            out.back().coef += t.coef;
        else
            out.push_back(std::move(t));
    }
    terms = std::move(out);
}

// base^(1/d) for rational base > 0, as a canonical term.
RadicalTerm rational_root_term(const Rational& base, unsigned d) {
    mpz_class m = base.get_den();
    mpz_class s = base.get_num();
    if (d > 1) {
        mpz_class mp;
        mpz_pow_ui(mp.get_mpz_t(), m.get_mpz_t(), d - 1);
        s *= mp;
    }
    RadicalTerm t = canonical_radical(s, d);
    t.coef /= Rational(m);
    return t;
}

RadicalTerm multiply_terms(const RadicalTerm& a, const RadicalTerm& b) {
    unsigned D = std::lcm(a.degree, b.degree);
    mpz_class sa, sb;
    mpz_pow_ui(sa.get_mpz_t(), a.radicand.get_mpz_t(), D / a.degree);
    mpz_pow_ui(sb.get_mpz_t(), b.radicand.get_mpz_t(), D / b.degree);
    RadicalTerm t = canonical_radical(sa * sb, D);
    t.coef *= a.coef * b.coef;
    return t;
}

std::vector<RadicalTerm> multiply_sums(const std::vector<RadicalTerm>& a, const std::vector<RadicalTerm>& b) {
    std::vector<RadicalTerm> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b) out.push_back(multiply_terms(x, y));
    normalize(out);
    return out;
}

Rational exact_bound(const std::vector<RadicalTerm>& terms, unsigned prec, bool upper) {
    mpfr_rnd_t rnd = upper ? MPFR_RNDU : MPFR_RNDD;
    Rational exact_part = 0;
    Mpfr acc(prec), x(prec);
    mpfr_set_zero(acc.get(), 1);
    for (const auto& t : terms) {
        if (t.degree == 1) {
            exact_part += t.coef * Rational(t.radicand);
            continue;
        }
        mpfr_set_z(x.get(), t.radicand.get_mpz_t(), rnd);
        mpfr_rootn_ui(x.get(), x.get(), t.degree, rnd);
        mpfr_mul_q(x.get(), x.get(), t.coef.get_mpq_t(), rnd);
        mpfr_add(acc.get(), acc.get(), x.get(), rnd);
    }
    return exact_part + acc.to_rational();
}

// Directed-rounding bound of x^(a/b) for x >= 0.
Rational pow_bound(const Rational& x, const Rational& e, bool upper, unsigned prec = 192) {
    if (sgn(x) == 0) return 0;
    mpfr_rnd_t rnd = upper ? MPFR_RNDU : MPFR_RNDD;
    if (!e.get_num().fits_ulong_p() || !e.get_den().fits_ulong_p())
        throw std::invalid_argument("exponent too large");
    Mpfr v(prec);
    mpfr_set_q(v.get(), x.get_mpq_t(), rnd);
    mpfr_pow_ui(v.get(), v.get(), e.get_num().get_ui(), rnd);
    mpfr_rootn_ui(v.get(), v.get(), e.get_den().get_ui(), rnd);
    return v.to_rational();
}

std::string term_text(const RadicalTerm& t) {
    std::string c = to_string(t.coef);
    if (t.degree == 1) {
        Rational v = t.coef * Rational(t.radicand);
        return to_string(v);
    }
    std::string r = t.radicand.get_str() + "^(1/" + std::to_string(t.degree) + ")";
    return t.coef == 1 ? r : c + "*" + r;
}

std::string format_double(double d) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

}  // namespace

RadicalTerm canonical_radical(const mpz_class& s_in, unsigned d) {
    if (d == 0) throw std::invalid_argument("radical degree must be >= 1");
    if (sgn(s_in) <= 0) throw std::invalid_argument("radicand must be positive");
    if (d == 1 || s_in == 1) return RadicalTerm{Rational(s_in), mpz_class(1), 1};

    std::vector<std::pair<mpz_class, unsigned>> factors;
    mpz_class s = s_in;
    for (unsigned long p = 2; p <= kTrialBound; p += (p == 2 ? 1 : 2)) {
        if (mpz_cmp_ui(s.get_mpz_t(), p * p) < 0) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(s.get_mpz_t(), p)) {
            mpz_divexact_ui(s.get_mpz_t(), s.get_mpz_t(), p);
            ++e;
        }
        if (e) factors.emplace_back(mpz_class(p), e);
    }
    if (s > 1) {
        mpz_class t;
        unsigned j = perfect_power(s, t);
        factors.emplace_back(t, j);
    }

    mpz_class outer = 1;
    unsigned g = 0;
    for (auto& [p, e] : factors) {
        mpz_class q;
        mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), e / d);
        outer *= q;
        e %= d;
        if (e) g = std::gcd(g, e);
    }
    if (g == 0) return RadicalTerm{Rational(outer), mpz_class(1), 1};
    g = std::gcd(g, d);
    mpz_class inner = 1;
    for (auto& [p, e] : factors) {
        if (!e) continue;
        mpz_class q;
        mpz_pow_ui(q.get_mpz_t(), p.get_mpz_t(), e / g);
        inner *= q;
    }
    return RadicalTerm{Rational(outer), inner, d / g};
}

ExtValue ExtValue::from_rational(const Rational& q) {
    if (sgn(q) < 0) throw std::invalid_argument("extended value must be nonnegative, got " + descent::to_string(q));
    ExtValue v;
    if (sgn(q) > 0) v.terms_.push_back(RadicalTerm{q, mpz_class(1), 1});
    return v;
}

ExtValue ExtValue::infinity() {
    ExtValue v;
    v.kind_ = Kind::Infinite;
    return v;
}

ExtValue ExtValue::root(const Rational& base, unsigned degree) {
    if (sgn(base) < 0) throw std::invalid_argument("root of a negative number");
    if (degree == 0) throw std::invalid_argument("root degree must be >= 1");
    ExtValue v;
    if (sgn(base) > 0) v.terms_.push_back(rational_root_term(base, degree));
    return v;
}

ExtValue ExtValue::enclosure(Rational lo, Rational hi, std::string key) {
    if (sgn(lo) <= 0 || lo > hi) throw std::invalid_argument("invalid enclosure");
    ExtValue v;
    v.kind_ = Kind::Interval;
    v.lo_ = std::move(lo);
    v.hi_ = std::move(hi);
    v.key_ = std::move(key);
    return v;
}

bool ExtValue::is_rational() const {
    return kind_ == Kind::Exact && (terms_.empty() || (terms_.size() == 1 && terms_[0].degree == 1));
}

Rational ExtValue::as_rational() const {
    if (!is_rational()) throw std::logic_error("value " + to_string() + " is not rational");
    return terms_.empty() ? Rational(0) : terms_[0].coef;
}

Rational ExtValue::lower(unsigned prec) const {
    switch (kind_) {
        case Kind::Exact: return exact_bound(terms_, prec, false);
        case Kind::Interval: return lo_;
        case Kind::Infinite: break;
    }
    throw std::logic_error("no finite bound for +inf");
}

Rational ExtValue::upper(unsigned prec) const {
    switch (kind_) {
        case Kind::Exact: return exact_bound(terms_, prec, true);
        case Kind::Interval: return hi_;
        case Kind::Infinite: break;
    }
    throw std::logic_error("no finite bound for +inf");
}

double ExtValue::to_double() const {
    if (kind_ == Kind::Infinite) return HUGE_VAL;
    if (is_rational()) return as_rational().get_d();
    Rational mid = (lower() + upper()) / 2;
    return mid.get_d();
}

std::string ExtValue::key() const {
    switch (kind_) {
        case Kind::Infinite: return "inf";
        case Kind::Interval: return "~" + key_;
        case Kind::Exact: break;
    }
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& t : terms_) {
        if (!out.empty()) out += "+";
        out += term_text(t);
    }
    return out;
}

std::string ExtValue::to_string() const {
    if (kind_ == Kind::Interval) return "~" + format_double(to_double());
    return key();
}

ExtValue ExtValue::scaled(const Rational& r) const {
    if (sgn(r) < 0) throw std::invalid_argument("negative scale factor");
    if (sgn(r) == 0) return zero();
    if (r == 1) return *this;
    switch (kind_) {
        case Kind::Infinite: return *this;
        case Kind::Interval: return enclosure(lo_ * r, hi_ * r, descent::to_string(r) + "*(" + key_ + ")");
        case Kind::Exact: break;
    }
    ExtValue v = *this;
    for (auto& t : v.terms_) t.coef *= r;
    return v;
}

ExtValue ExtValue::pow(const Rational& e) const {
    if (sgn(e) <= 0) throw std::invalid_argument("exponent must be positive");
    if (kind_ == Kind::Infinite || is_zero() || e == 1) return *this;
    if (kind_ == Kind::Exact) {
        if (terms_.size() == 1) {
            const RadicalTerm& t = terms_[0];
            if (!e.get_num().fits_ulong_p() || !e.get_den().fits_uint_p())
                throw std::invalid_argument("exponent too large");
            unsigned long a = e.get_num().get_ui();
            unsigned b = static_cast<unsigned>(e.get_den().get_ui());
            RadicalTerm c = rational_root_term(rational_pow(t.coef, a), b);
            mpz_class sa;
            mpz_pow_ui(sa.get_mpz_t(), t.radicand.get_mpz_t(), a);
            RadicalTerm s = canonical_radical(sa, t.degree * b);
            ExtValue v;
            v.terms_.push_back(multiply_terms(c, s));
            return v;
        }
        if (e.get_den() == 1 && e.get_num() <= kMaxExpandPower) {
            unsigned long k = e.get_num().get_ui();
            ExtValue v = *this;
            for (unsigned long i = 1; i < k; ++i) v.terms_ = multiply_sums(v.terms_, terms_);
            return v;
        }
    }
    Rational lo = pow_bound(lower(), e, false);
    Rational hi = pow_bound(upper(), e, true);
    return enclosure(lo, hi, "(" + key() + ")^(" + descent::to_string(e) + ")");
}

ExtValue operator+(const ExtValue& a, const ExtValue& b) {
    if (a.is_infinite()) return a;
    if (b.is_infinite()) return b;
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_exact() && b.is_exact()) {
        ExtValue v = a;
        v.terms_.insert(v.terms_.end(), b.terms_.begin(), b.terms_.end());
        normalize(v.terms_);
        return v;
    }
    std::string ka = a.key(), kb = b.key();
    if (kb < ka) std::swap(ka, kb);
    return ExtValue::enclosure(a.lower() + b.lower(), a.upper() + b.upper(), "sum[" + ka + "," + kb + "]");
}

ExtValue operator*(const ExtValue& a, const ExtValue& b) {
    if (a.is_zero() || b.is_zero()) return ExtValue::zero();
    if (a.is_infinite()) return a;
    if (b.is_infinite()) return b;
    if (a.is_exact() && b.is_exact()) {
        ExtValue v;
        v.terms_ = multiply_sums(a.terms_, b.terms_);
        return v;
    }
    std::string ka = a.key(), kb = b.key();
    if (kb < ka) std::swap(ka, kb);
    return ExtValue::enclosure(a.lower() * b.lower(), a.upper() * b.upper(), "prod[" + ka + "," + kb + "]");
}

std::partial_ordering compare(const ExtValue& a, const ExtValue& b) {
    using PO = std::partial_ordering;
    if (a.is_infinite() || b.is_infinite()) {
        if (a.is_infinite() && b.is_infinite()) return PO::equivalent;
        return a.is_infinite() ? PO::greater : PO::less;
    }
    if (a.is_exact() && b.is_exact()) {
        if (a.terms_ == b.terms_) return PO::equivalent;
        if (a.is_rational() && b.is_rational()) {
            int c = cmp(a.as_rational(), b.as_rational());
            return c < 0 ? PO::less : (c > 0 ? PO::greater : PO::equivalent);
        }
        if (a.terms_.size() <= 1 && b.terms_.size() <= 1 && !a.terms_.empty() && !b.terms_.empty()) {
            const auto& x = a.terms_[0];
            const auto& y = b.terms_[0];
            unsigned D = std::lcm(x.degree, y.degree);
            mpz_class sx, sy;
            mpz_pow_ui(sx.get_mpz_t(), x.radicand.get_mpz_t(), D / x.degree);
            mpz_pow_ui(sy.get_mpz_t(), y.radicand.get_mpz_t(), D / y.degree);
            Rational lx = rational_pow(x.coef, D) * Rational(sx);
            Rational ly = rational_pow(y.coef, D) * Rational(sy);
            int c = cmp(lx, ly);
            return c < 0 ? PO::less : (c > 0 ? PO::greater : PO::equivalent);
        }
        for (unsigned prec : {192u, 640u, 2048u}) {
            if (a.upper(prec) < b.lower(prec)) return PO::less;
            if (a.lower(prec) > b.upper(prec)) return PO::greater;
        }
        return PO::unordered;
    }
    if (!a.is_exact() && !b.is_exact() && a.key_ == b.key_) return PO::equivalent;
    Rational alo = a.lower(), ahi = a.upper(), blo = b.lower(), bhi = b.upper();
    if (ahi < blo) return PO::less;
    if (alo > bhi) return PO::greater;
    if (alo == ahi && blo == bhi && alo == blo) return PO::equivalent;
    return PO::unordered;
}

ExtValue max_value(const ExtValue& a, const ExtValue& b) {
    auto c = compare(a, b);
    if (c == std::partial_ordering::less) return b;
    if (c != std::partial_ordering::unordered) return a;
    std::string ka = a.key(), kb = b.key();
    if (kb < ka) std::swap(ka, kb);
    return ExtValue::enclosure(std::max(a.lower(), b.lower()), std::max(a.upper(), b.upper()),
                               "max[" + ka + "," + kb + "]");
}

ExtValue min_value(const ExtValue& a, const ExtValue& b) {
    auto c = compare(a, b);
    if (c == std::partial_ordering::greater) return b;
    if (c != std::partial_ordering::unordered) return a;
    std::string ka = a.key(), kb = b.key();
    if (kb < ka) std::swap(ka, kb);
    return ExtValue::enclosure(std::min(a.lower(), b.lower()), std::min(a.upper(), b.upper()),
                               "min[" + ka + "," + kb + "]");
}

}  // namespace descent

#include "descent/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace descent {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    mpz_class z(std::string(s), 10);
    return neg ? mpz_class(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw std::invalid_argument("empty rational");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        mpz_class num = parse_integer(s.substr(0, slash), text);
        std::string_view den_s = s.substr(slash + 1);
        if (!all_digits(den_s)) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        mpz_class den(std::string(den_s), 10);
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac = s.substr(dot + 1);
        bool neg = !int_part.empty() && int_part.front() == '-';
        if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) int_part.remove_prefix(1);
        if ((!int_part.empty() && !all_digits(int_part)) || !all_digits(frac))
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class num(std::string(int_part.empty() ? "0" : int_part) + std::string(frac), 10);
        if (neg) num = -num;
        Rational q(num, scale);
        q.canonicalize();
        return q;
    }
    return Rational(parse_integer(s, text));
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Rational rational_pow(const Rational& q, unsigned long e) {
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), q.get_num_mpz_t(), e);
    mpz_pow_ui(out.get_den_mpz_t(), q.get_den_mpz_t(), e);
    out.canonicalize();
    return out;
}

}  // namespace descent

#include "steadycert/rational.hpp"

#include <cctype>
#include <cmath>
#include <ostream>

#include "steadycert/errors.hpp"

namespace steadycert {

Rational::Rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::operator/(const Rational& o) const {
    if (o.is_zero()) throw DomainError("division by zero rational");
    return Rational(mpq_class(v_ / o.v_));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero rational");
    v_ /= o.v_;
    return *this;
}

Rational Rational::inv() const {
    if (is_zero()) throw DomainError("inverse of zero");
    mpq_class r;
    mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
    return Rational(r);
}

Rational Rational::pow(long e) const {
    if (e == 0) return Rational(1);
    Rational base = e < 0 ? inv() : *this;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.v_.get_num_mpz_t(), n);
    mpz_pow_ui(den.get_mpz_t(), base.v_.get_den_mpz_t(), n);
    mpq_class r(num, den);
    return Rational(r);
}

Rational Rational::pow10(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? Rational(mpq_class(p)) : Rational(mpq_class(1, p));
}

Rational Rational::from_double(double d) {
    if (!std::isfinite(d)) throw DomainError("non-finite double to rational");
    mpq_class q;
    mpq_set_d(q.get_mpq_t(), d);
    return Rational(q);
}

Rational Rational::parse(std::string_view s) {
    // trim
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) throw DomainError("empty rational literal");

    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        Rational n = parse(s.substr(0, slash));
        Rational d = parse(s.substr(slash + 1));
        return n / d;
    }

    bool neg = false;
    size_t i = 0;
    if (s[i] == '+' || s[i] == '-') { neg = s[i] == '-'; ++i; }

    std::string digits;
    long exp10 = 0;
    bool any_digit = false, seen_dot = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (seen_dot) --exp10;
            any_digit = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if ((c == 'e' || c == 'E') && any_digit) {
            long e = 0, esign = 1;
            ++i;
            if (i < s.size() && (s[i] == '+' || s[i] == '-')) { if (s[i] == '-') esign = -1; ++i; }
            if (i >= s.size()) throw DomainError("malformed exponent in rational literal");
            for (; i < s.size(); ++i) {
                if (s[i] < '0' || s[i] > '9') throw DomainError("malformed exponent in rational literal");
                e = e * 10 + (s[i] - '0');
            }
            exp10 += esign * e;
            break;
        } else {
            throw DomainError("malformed rational literal: " + std::string(s));
        }
    }
    if (!any_digit) throw DomainError("malformed rational literal: " + std::string(s));

    mpz_class mant(digits.empty() ? "0" : digits, 10);
    Rational r{mpq_class(mant)};
    if (exp10 != 0) r *= pow10(exp10);
    if (neg) r = -r;
    return r;
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace steadycert

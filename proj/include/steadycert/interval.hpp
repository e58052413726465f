#pragma once

#include <optional>

#include "steadycert/errors.hpp"
#include "steadycert/rational.hpp"

namespace steadycert {

/// Closed interval with exact rational endpoints. Arithmetic is exact, so the
/// usual directed-rounding concerns of floating interval arithmetic vanish.
struct RatInterval {
    Rational lo, hi;

    RatInterval() = default;
    RatInterval(Rational point) : lo(point), hi(point) {}
    RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}

    bool is_point() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / Rational(2); }
    double mid_d() const { return mid().to_double(); }
    bool contains(const Rational& r) const { return lo <= r && r <= hi; }
    bool contains_zero() const { return lo.sign() <= 0 && hi.sign() >= 0; }

    /// +1 / -1 when the sign is decided, 0 for the exact point zero,
    /// nullopt when the interval straddles zero.
    std::optional<int> sign() const {
        if (lo.sign() > 0) return 1;
        if (hi.sign() < 0) return -1;
        if (lo.is_zero() && hi.is_zero()) return 0;
        return std::nullopt;
    }

    RatInterval operator-() const { return {-hi, -lo}; }
    RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    RatInterval operator*(const RatInterval& o) const {
        Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {min(min(a, b), min(c, d)), max(max(a, b), max(c, d))};
    }
    RatInterval operator/(const RatInterval& o) const;

    RatInterval operator+(const Rational& r) const { return {lo + r, hi + r}; }
    RatInterval operator*(const Rational& r) const {
        return r.sign() >= 0 ? RatInterval{lo * r, hi * r} : RatInterval{hi * r, lo * r};
    }

    explicit RatInterval(int n) : lo(n), hi(n) {}
};

inline RatInterval RatInterval::operator/(const RatInterval& o) const {
    if (o.contains_zero()) throw DomainError("interval division by interval containing zero");
    return *this * RatInterval{o.hi.inv(), o.lo.inv()};
}

}  // namespace steadycert

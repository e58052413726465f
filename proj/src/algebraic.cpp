#include "steadycert/algebraic.hpp"

#include "steadycert/errors.hpp"

namespace steadycert {

AlgebraicNumber::AlgebraicNumber(UniPoly squarefree, IsolatingInterval iv)
    : sf_(std::move(squarefree)), iv_(std::move(iv)) {
    if (sf_.is_zero()) throw DomainError("algebraic number needs a nonzero polynomial");
    if (!iv_.is_exact()) {
        lo_sign_ = sf_.eval<Rational>(iv_.lo).sign();
        int hi_sign = sf_.eval<Rational>(iv_.hi).sign();
        if (lo_sign_ == 0 || hi_sign == 0 || lo_sign_ == hi_sign)
            throw DomainError("interval does not bracket a simple root");
    } else if (!sf_.eval<Rational>(iv_.lo).is_zero()) {
        throw DomainError("exact value is not a root of its defining polynomial");
    }
}

void AlgebraicNumber::bisect_once() const {
    Rational mid = (iv_.lo + iv_.hi) / Rational(2);
    int ms = sf_.eval<Rational>(mid).sign();
    if (ms == 0) {
        iv_ = {mid, mid};
        lo_sign_ = 0;
        return;
    }
    if (ms == lo_sign_) iv_.lo = mid;
    else iv_.hi = mid;
}

void AlgebraicNumber::refine_to(const Rational& eps) {
    while (!iv_.is_exact() && iv_.width() > eps) bisect_once();
}

double AlgebraicNumber::to_double() const {
    if (iv_.is_exact()) return iv_.lo.to_double();
    Rational scale = max(Rational(1), max(iv_.lo.abs(), iv_.hi.abs()));
    const_cast<AlgebraicNumber*>(this)->refine_to(scale / Rational(1000000000000000L));
    return iv_.mid_d();
}

int AlgebraicNumber::sign() const { return sign_of(UniPoly::x()); }

int AlgebraicNumber::sign_of(const UniPoly& v) const {
    if (v.is_zero()) return 0;
    if (iv_.is_exact()) return v.eval<Rational>(iv_.lo).sign();
    if (v.degree() == 0) return v.leading().sign();
    // exact zero test first, so refinement below always terminates
    if (is_root_of(v)) return 0;
    for (;;) {
        auto s = v.eval<RatInterval>(iv_.as_interval()).sign();
        if (s.has_value()) return *s;
        bisect_once();
        if (iv_.is_exact()) return v.eval<Rational>(iv_.lo).sign();
    }
}

bool AlgebraicNumber::is_root_of(const UniPoly& q) const {
    if (q.is_zero()) return true;
    if (iv_.is_exact()) return q.eval<Rational>(iv_.lo).is_zero();
    UniPoly c = gcd(sf_, q);
    if (c.degree() <= 0) return false;
    // a common root of sf and q inside (lo, hi] can only be ours; sf has no
    // root at either endpoint, so the half-open Sturm count is faithful
    auto chain = sturm_sequence(c);
    auto variations_at = [&](const Rational& x) {
        int v = 0, prev = 0;
        for (const auto& e : chain) {
            int s = e.eval<Rational>(x).sign();
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    };
    return variations_at(iv_.lo) - variations_at(iv_.hi) == 1;
}

}  // namespace steadycert

#pragma once

#include "steadycert/realroots.hpp"

namespace steadycert {

/// A real algebraic number given by a squarefree polynomial and an isolating
/// interval. All queries are exact: interval refinement decides nonzero signs,
/// and a gcd test decides exact vanishing, so no query can loop forever.
class AlgebraicNumber {
public:
    AlgebraicNumber(UniPoly squarefree, IsolatingInterval iv);

    const UniPoly& defining() const { return sf_; }
    const IsolatingInterval& interval() const { return iv_; }
    bool is_rational() const { return iv_.is_exact(); }

    void refine_to(const Rational& eps);
    RatInterval enclosure() const { return iv_.as_interval(); }
    double to_double() const;

    /// Exact sign of this number.
    int sign() const;
    /// Exact sign of v evaluated at this number.
    int sign_of(const UniPoly& v) const;
    /// Exact: is this number also a root of q?
    bool is_root_of(const UniPoly& q) const;

private:
    void bisect_once() const;

    UniPoly sf_;
    mutable IsolatingInterval iv_;
    mutable int lo_sign_ = 0;  // sign of sf at iv.lo (0 when exact)
};

}  // namespace steadycert

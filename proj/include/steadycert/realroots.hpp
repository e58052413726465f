#pragma once

#include <optional>
#include <vector>

#include "steadycert/interval.hpp"
#include "steadycert/unipoly.hpp"

namespace steadycert {

/// Interval containing exactly one distinct real root of the subject
/// polynomial; lo == hi marks an exact rational root.
struct IsolatingInterval {
    Rational lo, hi;
    bool is_exact() const { return lo == hi; }
    Rational width() const { return hi - lo; }
    RatInterval as_interval() const { return {lo, hi}; }
    double mid_d() const { return ((lo + hi) / Rational(2)).to_double(); }
};

/// Standard Sturm chain: p, p', then negated remainders. The last element is a
/// nonzero constant when p is squarefree.
std::vector<UniPoly> sturm_sequence(const UniPoly& p);

/// Number of distinct real roots of p in the half-open interval (a, b].
/// The squarefree part is taken internally, so multiple roots count once.
int count_roots(const UniPoly& p, const Rational& a, const Rational& b);

/// Number of distinct real roots on all of R.
int count_roots(const UniPoly& p);

/// Pairwise-disjoint isolating intervals covering every real root of p
/// (restricted to the open domain (lo, hi) when given). Endpoints are dyadic;
/// intervals are ordered increasingly. Repeated bisection with Sturm counts.
std::vector<IsolatingInterval> isolate_roots(const UniPoly& p);
std::vector<IsolatingInterval> isolate_roots(const UniPoly& p, const Rational& lo, const Rational& hi);

/// Shrinks iv (which must isolate a root of p) by bisection until
/// width <= eps; the same root stays inside. Returns the input unchanged when
/// it is already small enough or exact.
IsolatingInterval refine(const IsolatingInterval& iv, const UniPoly& p, const Rational& eps);

/// Cauchy bound: every real root lies in (-B, B).
Rational root_bound(const UniPoly& p);

}  // namespace steadycert

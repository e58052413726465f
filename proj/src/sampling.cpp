#include "steadycert/sampling.hpp"

#include <cmath>

namespace steadycert {

Rational log_uniform_rational(Rng& rng, double lo, double hi) {
    if (!(lo > 0) || !(hi >= lo)) throw DomainError("log-uniform range needs 0 < lo <= hi");
    double e = std::log10(lo) + rng.uniform01() * (std::log10(hi) - std::log10(lo));
    double v = std::pow(10.0, e);
    // round to 9 significant decimal digits, exactly
    int mag = static_cast<int>(std::floor(std::log10(v)));
    int shift = 8 - mag;
    double scaled = std::round(v * std::pow(10.0, shift));
    Rational r = Rational::from_double(scaled) * Rational::pow10(-shift);
    if (r.sign() <= 0) r = Rational::from_double(lo);  // guard against rounding to zero at the edge
    return r;
}

ParameterSet sample_sbg(Rng& rng, double lo, double hi) {
    Rational s = log_uniform_rational(rng, lo, hi);
    Rational b = log_uniform_rational(rng, lo, hi);
    Rational g = log_uniform_rational(rng, lo, hi);
    return ParameterSet::sbg(s, b, g);
}

}  // namespace steadycert

#pragma once

#include <cstdint>
#include <random>

#include "steadycert/models.hpp"

namespace steadycert {

/// Deterministic RNG wrapper: same seed, same stream on every platform
/// (distribution transforms are written out by hand, not delegated to
/// implementation-defined <random> distributions).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1p-53; }
    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

/// Log-uniform positive rational in [lo, hi], rounded to 9 significant
/// decimal digits so exact-arithmetic pipelines keep small coefficients.
Rational log_uniform_rational(Rng& rng, double lo, double hi);

ParameterSet sample_sbg(Rng& rng, double lo, double hi);

}  // namespace steadycert

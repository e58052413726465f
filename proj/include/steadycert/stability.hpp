#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "steadycert/algebraic.hpp"
#include "steadycert/models.hpp"

namespace steadycert {

/// Hurwitz determinants Delta_1..Delta_n of a real polynomial given by
/// descending coefficients [a0, a1, ..., an]. Requires a monic input unless
/// `normalize` is set (then divides through by a0, which must be positive).
std::vector<Rational> hurwitz_determinants(std::vector<Rational> coeffs_desc, bool normalize = false);
std::vector<RatInterval> hurwitz_determinants_interval(const std::vector<RatInterval>& coeffs_desc);

/// All eigenvalues of a real square matrix (dense solver; backward error at
/// machine-precision level).
std::vector<std::complex<double>> eigen_numeric(const std::vector<std::vector<double>>& J);

/// Closed-form eigenvalues at the positive steady state of rep3d/fwd6d/bwd6d.
std::vector<std::complex<double>> eigen_closed_form(const ModelDef& m, const ParameterSet& p);

enum class Verdict { AsymptoticallyStable, Unstable, Marginal };
std::string verdict_name(Verdict v);

struct ComplexPairInfo {
    double abs_re = 0, abs_im = 0;
    double ratio = 0;  // |Re| / |Im|
};

struct StabilityReport {
    std::string model;
    std::vector<double> steady_state;
    std::vector<double> char_coeffs;   // descending, monic
    std::vector<std::string> char_coeffs_exact;  // populated when the steady state is rational
    std::vector<double> hurwitz;       // Delta_1..Delta_n (floating mirror)
    std::vector<int> hurwitz_signs;    // exact signs via interval refinement
    double a_n = 0;                    // (-1)^n det J = constant char coeff
    int a_n_sign = 0;
    std::vector<std::complex<double>> eigenvalues;           // numeric
    std::vector<std::complex<double>> eigenvalues_closed;    // empty if unsupported
    Verdict verdict = Verdict::Marginal;
    std::optional<ComplexPairInfo> complex_pair;
    bool abs_re_lt_abs_im = false;  // for the dominant complex pair
};

/// Full stability analysis at the positive steady state. Sign decisions for
/// the Hurwitz determinants use exact interval arithmetic over the algebraic
/// steady-state coordinate; the floating lane is for reporting.
StabilityReport classify(const ModelDef& m, const ParameterSet& p);

/// First-order Hopf-candidate formula: stationarity = 0, denominators != 0,
/// a_n > 0, Delta_{n-1} = 0, Delta_i > 0 (i < n-1), all states and parameters
/// positive. Polynomials are cleared numerators over [params..., states...];
/// every cleared inequality carries its (positive) denominator side condition.
struct HopfFormula {
    ContextPtr ctx;
    std::vector<std::string> param_vars, state_vars;
    std::vector<Polynomial> stationarity;                    // = 0
    std::vector<Polynomial> denominators;                    // != 0
    std::optional<Polynomial> critical_num, critical_den;    // Delta_{n-1} = 0 (absent for dim 1)
    std::vector<Polynomial> positive_num, positive_den;      // a_n and lower Hurwitz determinants
};

HopfFormula hopf_formula_build(const ModelDef& m);

struct GridAxis {
    std::string name;
    double lo = 0, hi = 0;
    int count = 1;
};

struct GridSpec {
    std::vector<GridAxis> axes;
    bool log_scale = false;
    /// "s:1e-2:1e2:10,b:1e-2:1e2:10,g:1e-2:1e2:10"
    static GridSpec parse(const std::string& text, bool log_scale);
    std::uint64_t total_points() const;
    std::vector<double> point(std::uint64_t index) const;  // axis order
};

struct HopfScanPoint {
    std::vector<Rational> params;
    int critical_sign = 0;  // exact sign of Delta_{n-1} at the steady state
    bool witness = false;
};

struct HopfScanReport {
    std::string model;
    std::uint64_t seed = 0;
    std::uint64_t points = 0;
    std::uint64_t witnesses = 0;
    bool critical_positive_everywhere = true;
    double min_critical_value = 0;  // floating, for reporting
    std::vector<HopfScanPoint> witness_points;
};

/// Evaluates the Hopf formula at the positive steady state over every grid
/// point; exact sign decisions, deterministic output. `base` supplies values
/// for parameters the grid does not sweep.
HopfScanReport hopf_falsify(const ModelDef& m, const GridSpec& grid, std::uint64_t seed,
                            const ParameterSet& base = ParameterSet());

/// Same check over seeded log-uniform random samples of (s, b, g).
HopfScanReport hopf_falsify_sampled(const ModelDef& m, int samples, double lo, double hi,
                                    std::uint64_t seed, const ParameterSet& base = ParameterSet());

}  // namespace steadycert

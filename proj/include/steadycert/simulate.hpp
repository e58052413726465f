#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "steadycert/models.hpp"
#include "steadycert/stability.hpp"

namespace steadycert {

using RhsFn = std::function<void(double t, const double* x, double* dx)>;

struct IntegrateOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double max_step = 0;  // 0: auto (t_end/100); also sets the dense-output resolution
    std::size_t max_steps = 10000000;
    bool enforce_positive = true;  // positive orthant is forward-invariant for all registered models
};

/// Time grid, states and derivatives at accepted steps. Dense output by cubic
/// Hermite interpolation, so crossing counts do not depend on step placement.
struct Trajectory {
    std::string model;
    std::vector<double> params;
    std::vector<double> t;
    std::vector<std::vector<double>> x;
    std::vector<std::vector<double>> f;
    std::size_t accepted = 0, rejected = 0;
    double rel_tol = 0, abs_tol = 0;

    std::size_t dim() const { return x.empty() ? 0 : x.front().size(); }
    std::vector<double> sample(double tq) const;
    const std::vector<double>& back() const { return x.back(); }
};

/// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)). Local error per step
/// is controlled against abs_tol + rel_tol*|y|; deterministic given inputs.
Trajectory integrate_raw(const RhsFn& rhs, int dim, std::vector<double> x0, double t_end,
                         const IntegrateOptions& opts);

Trajectory integrate(const ModelDef& m, const ParameterSet& p, std::vector<double> x0,
                     double t_end, const IntegrateOptions& opts = IntegrateOptions());

struct DampingMetrics {
    std::vector<int> crossings;   // equilibrium crossings per component
    int max_crossings = 0;
    double overshoot_ratio = 0;   // peak (x_i - x*_i)/x*_i over components starting below target
    double terminal_residual = 0;
    double decay_rate = 0;        // fitted decay of |x - x*|
    bool converged = false;       // terminal residual below threshold; metrics unreliable otherwise
    bool damped_oscillation = false;  // >= 2 crossings on some component
};

/// Crossing detection uses dense sub-samples per accepted step and a
/// hysteresis band of hysteresis_rel * |target| to ignore numerical chatter.
DampingMetrics damping_metrics(const Trajectory& tr, const std::vector<double>& target,
                               const RhsFn& rhs, double hysteresis_rel = 1e-6,
                               double residual_threshold = 1e-4);
DampingMetrics damping_metrics(const ModelDef& m, const ParameterSet& p, const Trajectory& tr,
                               const std::vector<double>& target);

struct PairDecayReport {
    double max_rel_err = 0;
    bool ok = false;
};

/// Checks |x_i(t) - x_j(t)| = |x_i(0) - x_j(0)| e^(-g t) at every recorded
/// time for each declared symmetry pair. Errors on models without pairs.
PairDecayReport pairwise_decay_check(const ModelDef& m, const ParameterSet& p,
                                     const Trajectory& tr, double tol_rel = 1e-6);

struct SweepRow {
    std::vector<double> params;  // axis order
    double max_re = 0;
    bool stable = false;
    int crossings = 0;
    double overshoot = 0;
    bool converged = false;
    std::string error;  // nonempty when this point failed
};

struct SweepResult {
    std::string model;
    std::vector<std::string> axes;
    std::uint64_t seed = 0;
    std::vector<SweepRow> rows;
    bool any_unstable = false;
    bool any_stable = false;
};

/// Per-grid-point stability classification (sign of max Re eigenvalue at the
/// positive fixed point) plus, optionally, a simulation-based oscillation
/// classification from a deterministic perturbed start.
SweepResult sweep(const ModelDef& m, const GridSpec& grid, const ParameterSet& base,
                  bool with_simulation, std::uint64_t seed, int jobs = 1);

}  // namespace steadycert

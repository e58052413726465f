#include "steadycert/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace steadycert {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
// embedded 4th-order weights
constexpr double E1 = B1 - 5179.0 / 57600, E3 = B3 - 7571.0 / 16695, E4 = B4 - 393.0 / 640,
                 E5 = B5 + 92097.0 / 339200, E6 = B6 - 187.0 / 2100, E7 = -1.0 / 40;
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;

}  // namespace

std::vector<double> Trajectory::sample(double tq) const {
    if (t.empty()) throw IntegrationError("empty trajectory");
    if (tq <= t.front()) return x.front();
    if (tq >= t.back()) return x.back();
    auto it = std::upper_bound(t.begin(), t.end(), tq);
    std::size_t hi = static_cast<std::size_t>(it - t.begin());
    std::size_t lo = hi - 1;
    double h = t[hi] - t[lo];
    double u = (tq - t[lo]) / h;
    // cubic Hermite on (x_lo, f_lo, x_hi, f_hi)
    double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    double h10 = u * (1 - u) * (1 - u);
    double h01 = u * u * (3 - 2 * u);
    double h11 = u * u * (u - 1);
    std::vector<double> out(dim());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = h00 * x[lo][i] + h10 * h * f[lo][i] + h01 * x[hi][i] + h11 * h * f[hi][i];
    return out;
}

Trajectory integrate_raw(const RhsFn& rhs, int dim_i, std::vector<double> x0, double t_end,
                         const IntegrateOptions& opts) {
    if (opts.rel_tol <= 0 || opts.abs_tol <= 0) throw IntegrationError("tolerances must be positive");
    if (t_end <= 0) throw IntegrationError("t_end must be positive");
    const std::size_t n = static_cast<std::size_t>(dim_i);
    if (x0.size() != n) throw IntegrationError("initial state dimension mismatch");
    if (opts.enforce_positive)
        for (double v : x0)
            if (v <= 0) throw IntegrationError("initial state must lie in the open positive orthant");

    Trajectory tr;
    tr.rel_tol = opts.rel_tol;
    tr.abs_tol = opts.abs_tol;

    std::vector<double> y = x0, ynew(n), err(n);
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n);
    double t = 0;
    rhs(t, y.data(), k1.data());

    // initial step heuristic
    double ny = 0, nf = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ny = std::max(ny, std::abs(y[i]));
        nf = std::max(nf, std::abs(k1[i]));
    }
    double hmax = opts.max_step > 0 ? opts.max_step : t_end / 100;
    double h = std::min({0.01 * (ny + 1) / (nf + 1), t_end / 10, hmax});
    h = std::max(h, 1e-10);

    tr.t.push_back(0);
    tr.x.push_back(y);
    tr.f.push_back(k1);

    std::size_t steps = 0;
    bool last = false;
    while (!last) {
        if (++steps > opts.max_steps) throw IntegrationError("step budget exceeded");
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw IntegrationError("step size underflow at t=" + std::to_string(t));
        if (t + h >= t_end) {
            h = t_end - t;
            last = true;
        }

        auto stage = [&](std::vector<double>& out, double c, auto&&... terms) {
            auto add = [&](double w, const std::vector<double>& k) {
                for (std::size_t i = 0; i < n; ++i) tmp[i] += w * k[i];
            };
            std::fill(tmp.begin(), tmp.end(), 0.0);
            (add(terms.first, *terms.second), ...);
            for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * tmp[i];
            rhs(t + c * h, tmp.data(), out.data());
        };
        using P = std::pair<double, const std::vector<double>*>;
        stage(k2, C2, P{A21, &k1});
        stage(k3, C3, P{A31, &k1}, P{A32, &k2});
        stage(k4, C4, P{A41, &k1}, P{A42, &k2}, P{A43, &k3});
        stage(k5, C5, P{A51, &k1}, P{A52, &k2}, P{A53, &k3}, P{A54, &k4});
        stage(k6, 1.0, P{A61, &k1}, P{A62, &k2}, P{A63, &k3}, P{A64, &k4}, P{A65, &k5});

        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] + B6 * k6[i]);
        rhs(t + h, ynew.data(), k7.data());  // FSAL

        double errnorm = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                            E7 * k7[i]);
            double sc = opts.abs_tol + opts.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
            errnorm += (e / sc) * (e / sc);
        }
        errnorm = std::sqrt(errnorm / static_cast<double>(n));

        if (errnorm <= 1.0) {
            t += h;
            y = ynew;
            k1 = k7;
            if (opts.enforce_positive)
                for (double v : y)
                    if (v <= 0)
                        throw IntegrationError("trajectory left the positive orthant at t=" +
                                               std::to_string(t));
            tr.t.push_back(t);
            tr.x.push_back(y);
            tr.f.push_back(k1);
            ++tr.accepted;
            double fac = 0.9 * std::pow(std::max(errnorm, 1e-10), -0.2);
            h = std::min(h * std::clamp(fac, 0.2, 5.0), hmax);
        } else {
            ++tr.rejected;
            last = false;
            double fac = 0.9 * std::pow(errnorm, -0.2);
            h *= std::clamp(fac, 0.1, 0.9);
        }
    }
    return tr;
}

Trajectory integrate(const ModelDef& m, const ParameterSet& p, std::vector<double> x0,
                     double t_end, const IntegrateOptions& opts) {
    m.validate(p);
    auto prm = m.param_doubles(p);
    RhsFn rhs = [&m, prm](double, const double* x, double* dx) { m.rhs_d(prm, x, dx); };
    Trajectory tr = integrate_raw(rhs, m.dim, std::move(x0), t_end, opts);
    tr.model = m.id;
    tr.params = prm;
    return tr;
}

DampingMetrics damping_metrics(const Trajectory& tr, const std::vector<double>& target,
                               const RhsFn& rhs, double hysteresis_rel,
                               double residual_threshold) {
    const std::size_t n = tr.dim();
    if (target.size() != n) throw DomainError("target dimension mismatch");
    DampingMetrics dm;
    dm.crossings.assign(n, 0);

    std::vector<double> band(n);
    for (std::size_t i = 0; i < n; ++i) band[i] = hysteresis_rel * std::abs(target[i]);

    // walk dense sub-samples with a hysteresis state machine per component
    const int sub = 16;
    std::vector<int> side(n, 0);
    for (std::size_t k = 0; k + 1 < tr.t.size(); ++k) {
        for (int j = (k == 0 ? 0 : 1); j <= sub; ++j) {
            double tq = tr.t[k] + (tr.t[k + 1] - tr.t[k]) * j / sub;
            auto xs = tr.sample(tq);
            for (std::size_t i = 0; i < n; ++i) {
                double d = xs[i] - target[i];
                int s = d > band[i] ? 1 : (d < -band[i] ? -1 : 0);
                if (s == 0) continue;
                if (side[i] != 0 && s != side[i]) ++dm.crossings[i];
                side[i] = s;
            }
        }
    }
    for (int c : dm.crossings) dm.max_crossings = std::max(dm.max_crossings, c);

    // overshoot for components that start below target
    for (std::size_t i = 0; i < n; ++i) {
        if (tr.x.front()[i] >= target[i] || target[i] == 0) continue;
        for (const auto& xs : tr.x)
            dm.overshoot_ratio = std::max(dm.overshoot_ratio, (xs[i] - target[i]) / target[i]);
    }

    std::vector<double> fend(n);
    rhs(tr.t.back(), tr.x.back().data(), fend.data());
    double r = 0;
    for (double v : fend) r += v * v;
    dm.terminal_residual = std::sqrt(r);
    dm.converged = dm.terminal_residual < residual_threshold;

    // decay-rate fit: least squares on log |x - x*| over the trailing half
    {
        std::vector<double> ts, ls;
        for (std::size_t k = tr.t.size() / 2; k < tr.t.size(); ++k) {
            double d = 0;
            for (std::size_t i = 0; i < n; ++i)
                d += (tr.x[k][i] - target[i]) * (tr.x[k][i] - target[i]);
            d = std::sqrt(d);
            if (d > 0) {
                ts.push_back(tr.t[k]);
                ls.push_back(std::log(d));
            }
        }
        if (ts.size() >= 2) {
            double mt = 0, ml = 0;
            for (std::size_t k = 0; k < ts.size(); ++k) { mt += ts[k]; ml += ls[k]; }
            mt /= static_cast<double>(ts.size());
            ml /= static_cast<double>(ts.size());
            double num = 0, den = 0;
            for (std::size_t k = 0; k < ts.size(); ++k) {
                num += (ts[k] - mt) * (ls[k] - ml);
                den += (ts[k] - mt) * (ts[k] - mt);
            }
            if (den > 0) dm.decay_rate = -num / den;
        }
    }

    int total_crossings = 0;
    for (int c : dm.crossings) total_crossings += c;
    dm.damped_oscillation = total_crossings >= 2;
    return dm;
}

DampingMetrics damping_metrics(const ModelDef& m, const ParameterSet& p, const Trajectory& tr,
                               const std::vector<double>& target) {
    auto prm = m.param_doubles(p);
    RhsFn rhs = [&m, prm](double, const double* x, double* dx) { m.rhs_d(prm, x, dx); };
    return damping_metrics(tr, target, rhs);
}

PairDecayReport pairwise_decay_check(const ModelDef& m, const ParameterSet& p,
                                     const Trajectory& tr, double tol_rel) {
    if (m.symmetry_pairs.empty())
        throw DomainError("model " + m.id + " declares no symmetry pairs");
    double g = p.get_d("g");
    PairDecayReport rep;
    for (auto [i, j] : m.symmetry_pairs) {
        auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
        double d0 = std::abs(tr.x.front()[si] - tr.x.front()[sj]);
        for (std::size_t k = 0; k < tr.t.size(); ++k) {
            double d = std::abs(tr.x[k][si] - tr.x[k][sj]);
            if (d0 == 0) {
                // identical nonlinear terms keep equal components bitwise equal
                if (d != 0) rep.max_rel_err = std::max(rep.max_rel_err, 1.0);
                continue;
            }
            double expect = d0 * std::exp(-g * tr.t[k]);
            rep.max_rel_err = std::max(rep.max_rel_err, std::abs(d - expect) / expect);
        }
    }
    rep.ok = rep.max_rel_err <= tol_rel;
    return rep;
}

SweepResult sweep(const ModelDef& m, const GridSpec& grid, const ParameterSet& base,
                  bool with_simulation, std::uint64_t seed, int jobs) {
    SweepResult res;
    res.model = m.id;
    res.seed = seed;
    for (const auto& ax : grid.axes) res.axes.push_back(ax.name);
    std::uint64_t total = grid.total_points();
    res.rows.assign(total, SweepRow{});

    auto work = [&](std::uint64_t idx) {
        SweepRow& row = res.rows[idx];
        auto vals = grid.point(idx);
        row.params = vals;
        try {
            std::map<std::string, Rational> pv = base.values();
            for (std::size_t i = 0; i < grid.axes.size(); ++i)
                pv[grid.axes[i].name] = Rational::from_double(vals[i]);
            ParameterSet p(pv);

            SymmetricProfile prof = positive_symmetric_profile(m, p);
            AlgebraicNumber root(prof.sf, prof.iv);
            double td = root.to_double();
            std::vector<double> star;
            for (const auto& c : prof.multipliers) star.push_back(td * c.to_double());

            auto ev = eigen_numeric(jacobian_d(m, p, star));
            double max_re = -1e300;
            for (auto e : ev) max_re = std::max(max_re, e.real());
            row.max_re = max_re;
            row.stable = max_re < 0;

            if (with_simulation) {
                std::vector<double> x0(star);
                for (std::size_t i = 0; i < x0.size(); ++i) x0[i] *= (i % 2 == 0 ? 1.4 : 0.7);
                Trajectory tr = integrate(m, p, x0, m.default_t_end);
                auto dm = damping_metrics(m, p, tr, star);
                row.crossings = dm.max_crossings;
                row.overshoot = dm.overshoot_ratio;
                row.converged = dm.converged;
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
    };

    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (std::uint64_t i = 0; i < total; ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::uint64_t> next{0};
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    std::uint64_t i = next.fetch_add(1);
                    if (i >= total) return;
                    work(i);
                }
            });
        for (auto& th : pool) th.join();
    }

    for (const auto& row : res.rows) {
        if (!row.error.empty()) continue;
        if (row.stable) res.any_stable = true;
        else res.any_unstable = true;
    }
    return res;
}

}  // namespace steadycert

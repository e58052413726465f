#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "steadycert/interval.hpp"
#include "steadycert/polynomial.hpp"
#include "steadycert/realroots.hpp"
#include "steadycert/unipoly.hpp"

namespace steadycert {

/// Named rational parameter values with a floating mirror.
class ParameterSet {
public:
    ParameterSet() = default;
    explicit ParameterSet(std::map<std::string, Rational> values) : v_(std::move(values)) {}

    static ParameterSet sbg(const Rational& s, const Rational& b, const Rational& g) {
        return ParameterSet({{"s", s}, {"b", b}, {"g", g}});
    }
    /// Parses "s=0.3,b=4,g=3/5".
    static ParameterSet parse(const std::string& spec);

    bool has(const std::string& k) const { return v_.count(k) > 0; }
    const Rational& get(const std::string& k) const;
    double get_d(const std::string& k) const { return get(k).to_double(); }
    long get_int(const std::string& k) const;
    void set(const std::string& k, Rational r) { v_[k] = std::move(r); }
    const std::map<std::string, Rational>& values() const { return v_; }

private:
    std::map<std::string, Rational> v_;
};

/// Numerator/denominator pair; denominators of all registered models are
/// strictly positive on the closed positive orthant.
struct RatExpr {
    Polynomial num, den;
};

/// One ODE model: symbolic right-hand sides over [params..., states...],
/// cleared-numerator stationarity polynomials, declared symmetry pairs, and a
/// plain-double evaluator for simulation.
struct ModelDef {
    std::string id;
    int dim = 0;
    std::vector<std::string> params;  // context order
    std::vector<std::string> states;
    ContextPtr ctx;                   // params ++ states
    std::vector<RatExpr> rhs;
    std::vector<Polynomial> stationarity;          // cleared numerators, full system
    std::vector<Polynomial> stationarity_reduced;  // 6D models: 3-var reduced system over params ++ {x1,x3,x5}
    ContextPtr reduced_ctx;                        // context of the reduced system (empty if none)
    std::vector<std::pair<int, int>> symmetry_pairs;  // state-index pairs with identical nonlinear terms
    int hill_n = 1;
    double default_t_end = 40.0;

    std::function<void(const std::vector<double>& prm, const double* x, double* dx)> rhs_d;

    /// Model-specific positivity/shape validation; throws DomainError.
    void validate(const ParameterSet& p) const;
    std::vector<double> param_doubles(const ParameterSet& p) const;
};

/// Registry. Hill exponent n only matters for goodwin/elowitz.
const ModelDef& get_model(const std::string& id, int hill_n = 1);
std::vector<std::string> model_ids();

/// Exact RHS evaluation; state must keep every denominator positive.
std::vector<Rational> rhs_eval(const ModelDef& m, const ParameterSet& p,
                               const std::vector<Rational>& state);
std::vector<double> rhs_eval_d(const ModelDef& m, const ParameterSet& p,
                               const std::vector<double>& state);

const std::vector<Polynomial>& stationarity_numerators(const ModelDef& m);

/// Entrywise derivative of the RHS rational functions.
std::vector<std::vector<RatExpr>> jacobian_symbolic(const ModelDef& m);
std::vector<std::vector<Rational>> jacobian(const ModelDef& m, const ParameterSet& p,
                                            const std::vector<Rational>& state);
std::vector<std::vector<double>> jacobian_d(const ModelDef& m, const ParameterSet& p,
                                            const std::vector<double>& state);
std::vector<std::vector<RatInterval>> jacobian_interval(const ModelDef& m, const ParameterSet& p,
                                                        const std::vector<RatInterval>& state);

/// Monic char poly det(lambda I - J), exact, via principal-minor sums
/// (division-free).
UniPoly char_poly(const ModelDef& m, const ParameterSet& p, const std::vector<Rational>& state);
/// Interval enclosure of the char poly coefficients at an interval state.
std::vector<RatInterval> char_poly_interval(const ModelDef& m, const ParameterSet& p,
                                            const std::vector<RatInterval>& state);

/// Division-free determinant (cofactor expansion), usable with Rational,
/// double and RatInterval entries.
template <typename T>
T det_cofactor(const std::vector<std::vector<T>>& a);

/// Exact char poly of an explicit rational matrix.
UniPoly char_poly_matrix(const std::vector<std::vector<Rational>>& J);
std::vector<RatInterval> char_poly_matrix_interval(const std::vector<std::vector<RatInterval>>& J);

/// A coordinate of a steady state: squarefree defining polynomial plus an
/// isolating interval (exact rational value when available).
struct AlgebraicValue {
    UniPoly defining;
    IsolatingInterval iv;
    std::optional<Rational> exact;
    double approx = 0.0;
};

struct SteadyState {
    std::string model;
    std::vector<AlgebraicValue> coords;
    bool positive = false;
};

/// The univariate polynomial whose positive root is the symmetric steady
/// state coordinate (rep3d: g x^2 + (g-s) x - (s+b); 6D models:
/// 2g x^2 + (g-2s-b) x - s; goodwin/elowitz: the scalar fixed-point equation).
UniPoly symmetric_state_polynomial(const ModelDef& m, const ParameterSet& p);

/// Both symmetric steady states for rep3d/fwd6d/bwd6d (positive one first,
/// non-positive one flagged); the unique positive fixed point for
/// goodwin/elowitz.
std::vector<SteadyState> closed_form_steady_states(const ModelDef& m, const ParameterSet& p);

/// The positive steady state expressed through a single algebraic number t:
/// state_i = multipliers[i] * t, where t is the isolated positive root of sf.
/// Covers every registered model (goodwin's coordinates are rational multiples
/// of its z-coordinate; the others are fully symmetric).
struct SymmetricProfile {
    UniPoly sf;
    IsolatingInterval iv;
    std::vector<Rational> multipliers;
};
SymmetricProfile positive_symmetric_profile(const ModelDef& m, const ParameterSet& p);

/// Double coordinates of the positive steady state.
std::vector<double> positive_steady_state_d(const ModelDef& m, const ParameterSet& p);

}  // namespace steadycert

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steadycert/algebraic.hpp"
#include "steadycert/json_io.hpp"
#include "steadycert/models.hpp"

namespace steadycert {

/// Triangular ("shape position") form of a zero-dimensional lex basis:
/// eliminant(last) = 0, var_i = backsub_i(last) for every earlier variable.
struct ShapeSystem {
    std::vector<std::string> vars;   // full variable order, last one carries the eliminant
    UniPoly eliminant;               // squarefree part
    std::vector<UniPoly> backsub;    // one per non-last variable
};

/// Detects shape position in a reduced lex basis; nullopt when the basis is
/// not triangular in that sense.
std::optional<ShapeSystem> shape_from_lex_basis(const GroebnerBasis& reduced_lex);

/// One real solution of a shape system.
struct ShapeSolution {
    AlgebraicNumber last;
    std::vector<int> coord_signs;    // sign per variable (var order)
    bool positive = false;           // all coordinates strictly positive
};
std::vector<ShapeSolution> enumerate_real_solutions(const ShapeSystem& sys);

/// Per-parameter-point certification outcome.
struct SampleResult {
    ParameterSet params;
    std::string error;               // nonempty when the pipeline failed
    int real_solutions = 0;
    int positive_solutions = 0;
    bool unique_positive = false;
    bool matches_closed_form = false;  // the positive solution is a root of the symmetric polynomial
    bool symmetric = false;            // all coordinates exactly equal
    IsolatingInterval positive_iv{};   // refined to width <= 1e-9
    // bwd6d cubic-branch pipeline:
    int j1_real_roots = 0;
    bool j1_positive_triple = false;
    bool crosschecked = false;
    bool crosscheck_ok = false;

    bool ok() const { return error.empty(); }
};

SampleResult certify_rep3d(const ParameterSet& p, const Budget& budget = Budget());
SampleResult certify_fwd6d(const ParameterSet& p, const Budget& budget = Budget());
SampleResult certify_bwd6d(const ParameterSet& p, const Budget& budget = Budget(),
                           bool gb_crosscheck = false, const RefIdealData* data = nullptr);

struct CertificationRun {
    std::string model;
    std::uint64_t seed = 0;
    int samples = 0;
    double range_lo = 0, range_hi = 0;
    int errors = 0;
    int expectation_failures = 0;   // samples whose certified structure deviated
    int crosschecks = 0, crosscheck_failures = 0;
    bool all_unique_positive = true;
    bool all_match_closed_form = true;
    bool all_symmetric = true;      // meaningful for rep3d/fwd6d
    bool j1_always_empty = true;    // meaningful for bwd6d
    std::vector<SampleResult> failures;  // only the deviating samples
    std::vector<SampleResult> results;   // every sample, in index order (when kept)
};

/// Seeded log-uniform sampling certification over [lo, hi]^3. Per-sample
/// records are kept in the report when keep_all is set.
CertificationRun run_certification(const std::string& model_id, int samples, double lo, double hi,
                                   std::uint64_t seed, int jobs = 1, int crosscheck_every = 0,
                                   const Budget& budget = Budget(), const std::string& data_dir = "",
                                   bool keep_all = false);

enum class DecompositionCheck { ComponentsOfI, ContainmentHG, QuotientHG };
DecompositionCheck decomposition_check_from_string(const std::string& s);

struct ContainmentResult {
    std::string name;                 // e.g. "I in I1"
    bool symbolic_attempted = false;
    bool symbolic_proved = false;
    int specializations = 0;
    int specialization_failures = 0;
    bool holds = false;
};

struct DecompositionReport {
    DecompositionCheck which;
    std::uint64_t seed = 0;
    std::vector<ContainmentResult> containments;
    // coverage (ComponentsOfI): every real solution of the specialized system
    // lies on some shipped component
    int coverage_points = 0;
    int coverage_failures = 0;
    // quotient check: reduced GB(H:G) = {1} at generic positive specializations
    int quotient_specializations = 0;
    int quotient_unit_count = 0;
    int component_unsat_count = 0;  // shipped difference components empty at those samples
    bool ok = false;
};

DecompositionReport verify_decompositions(DecompositionCheck which, std::uint64_t seed, int samples,
                                          const Budget& budget = Budget(),
                                          const std::string& data_dir = "");

struct AllwrightReport {
    ParameterSet params;
    bool decreasing_on_nonneg = false;   // derivative numerator negative, pole left of 0
    int derivative_samples = 0;          // sampled u >= 0, all with negative derivative sign
    bool fixed_points_match_quadratic = false;  // cleared fixed-point equation of the double
                                                // composition equals the steady-state quadratic
    double u1 = 0, u2 = 0;
    bool u1_is_positive_state = false;
    bool u2_negative = false;
    bool phi_fixes_u1 = false;
    bool ok = false;
};

/// Loop-map analysis for the 3D model: composes the per-gene steady-state
/// response map three times (a Moebius map), checks monotonicity exactly and
/// isolates the fixed points of the map and of its double composition.
AllwrightReport allwright_check(const ParameterSet& p);

/// Evaluates the composed loop map at a rational point (must avoid the pole).
Rational loop_map_eval(const ParameterSet& p, const Rational& u);

}  // namespace steadycert

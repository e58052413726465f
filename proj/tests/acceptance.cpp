// Acceptance suite: one pass/fail line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "steadycert/certify.hpp"
#include "steadycert/sampling.hpp"
#include "steadycert/simulate.hpp"

using namespace steadycert;

namespace {

int g_failed = 0;

struct Criterion {
    const char* name;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;

    explicit Criterion(const char* n) : name(n) {}
    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        } else if (!cond) {
            detail += "; " + what;
        }
    }
    ~Criterion() {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (ok) {
            std::printf("[PASS] %s (%.1fs)\n", name, secs);
        } else {
            std::printf("[FAIL] %s (%.1fs): %s\n", name, secs, detail.c_str());
            ++g_failed;
        }
        std::fflush(stdout);
    }
};

int jobs() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 4;
}

ParameterSet sample_range(Rng& rng, double lo, double hi) { return sample_sbg(rng, lo, hi); }

}  // namespace

// 1. exactly one certified positive steady state per model on 1000 seeded
//    samples, matching the closed forms to interval width 1e-9
static void criterion1() {
    Criterion c("criterion 1: unique positive steady state (1000 samples x 3 models)");
    for (const char* id : {"rep3d", "fwd6d", "bwd6d"}) {
        auto run = run_certification(id, 1000, 1e-3, 1e3, 42, jobs());
        c.require(run.errors == 0, std::string(id) + ": pipeline errors");
        c.require(run.expectation_failures == 0, std::string(id) + ": expectation failures");
        c.require(run.all_unique_positive, std::string(id) + ": uniqueness violated");
        c.require(run.all_match_closed_form, std::string(id) + ": closed-form mismatch");
    }
}

// 2. closed-form eigenvalues match numeric ones to 1e-9 relative on 100
//    samples per model, all real parts negative; the quadratic-factor
//    discriminant identity holds exactly at 20 rational specializations
static void criterion2() {
    Criterion c("criterion 2: stability and eigenvalue closed forms");
    Rng rng(4242);
    for (const char* id : {"rep3d", "fwd6d", "bwd6d"}) {
        const ModelDef& m = get_model(id);
        for (int t = 0; t < 100; ++t) {
            ParameterSet p = sample_range(rng, 1e-2, 1e2);
            auto cf = eigen_closed_form(m, p);
            auto nu = eigen_numeric(jacobian_d(m, p, positive_steady_state_d(m, p)));
            double scale = 0;
            for (auto e : cf) scale = std::max(scale, std::abs(e));
            for (std::size_t i = 0; i < cf.size(); ++i) {
                c.require(std::abs(cf[i] - nu[i]) <= 1e-9 * scale,
                          std::string(id) + ": eigenvalue mismatch beyond 1e-9");
                c.require(cf[i].real() < 0, std::string(id) + ": nonnegative real part");
            }
        }
    }
    // exact discriminant identity at 20 rational (b, g, f) specializations
    Rng rng2(99);
    int done = 0;
    while (done < 20) {
        Rational f(static_cast<long>(rng2.raw() % 40) + 1, static_cast<long>(rng2.raw() % 7) + 1);
        Rational g(static_cast<long>(rng2.raw() % 25) + 1, static_cast<long>(rng2.raw() % 7) + 1);
        Rational b(static_cast<long>(rng2.raw() % 25) + 1, static_cast<long>(rng2.raw() % 7) + 1);
        Rational s = f * (Rational(2) * g * f + g - b) / (Rational(2) * f + Rational(1));
        if (s.sign() <= 0) continue;
        ++done;
        Rational w2 = (Rational(1) + Rational(2) * f).pow(2);
        Rational A = w2 * w2;
        Rational Bc = w2 * (b + Rational(2) * g * w2);
        Rational C = g * g * w2 * w2 + b * g * w2 +
                     b * b * (Rational(1) + Rational(3) * f + Rational(3) * f * f);
        Rational disc = Bc * Bc - Rational(4) * A * C;
        c.require(disc == -Rational(3) * b * b * w2.pow(3), "discriminant identity failed");
    }
}

// 3. no Hopf witness on the 10x10x10 log grid; the critical Hurwitz
//    determinant stays positive at the steady state everywhere
static void criterion3() {
    Criterion c("criterion 3: Hopf exclusion on the 10x10x10 log grid");
    GridSpec grid = GridSpec::parse("s:1e-2:1e2:10,b:1e-2:1e2:10,g:1e-2:1e2:10", true);
    HopfScanReport rep = hopf_falsify(get_model("rep3d"), grid, 42);
    c.require(rep.points == 1000, "expected 1000 grid points");
    c.require(rep.witnesses == 0, "witness found");
    c.require(rep.critical_positive_everywhere, "critical determinant not positive somewhere");
    c.require(rep.min_critical_value > 0, "floating critical minimum not positive");
}

// 4. reference-decomposition containments and the quotient structure
static void criterion4() {
    Criterion c("criterion 4: decomposition verification");
    auto ri = verify_decompositions(DecompositionCheck::ComponentsOfI, 7, 20);
    c.require(ri.ok, "components-of-I check failed");
    for (const auto& cr : ri.containments)
        c.require(cr.holds && cr.specialization_failures == 0, cr.name + " failed");
    auto rj = verify_decompositions(DecompositionCheck::ContainmentHG, 7, 20);
    c.require(rj.ok, "H-in-G check failed");
    auto rq = verify_decompositions(DecompositionCheck::QuotientHG, 7, 5);
    c.require(rq.ok, "quotient check failed");
    c.require(rq.quotient_unit_count == 5, "quotient not <1> at some specialization");
    c.require(rq.component_unsat_count == 5, "a shipped difference component was satisfiable");
}

// 5. the cubic-branch pipeline finds no positive triple on 1000 samples and
//    the direct-basis enumeration agrees on 50 of them
static void criterion5() {
    Criterion c("criterion 5: cubic-branch emptiness with direct crosschecks");
    auto run = run_certification("bwd6d", 1000, 1e-3, 1e3, 42, jobs(), 20);
    c.require(run.errors == 0, "pipeline errors");
    c.require(run.j1_always_empty, "a positive triple appeared on the cubic branch");
    c.require(run.crosschecks == 50, "expected 50 crosschecks, got " +
                                         std::to_string(run.crosschecks));
    c.require(run.crosscheck_failures == 0, "direct-basis crosscheck disagreed");
    c.require(run.expectation_failures == 0, "expectation failures");
}

// 6. figure reproductions with the stated limits and the exact pair-decay law
static void criterion6() {
    Criterion c("criterion 6: figure reproduction");
    {
        const ModelDef& m = get_model("rep3d");
        ParameterSet p = ParameterSet::parse("s=0.3,b=4,g=0.6");
        Trajectory tr = integrate(m, p, {1, 2, 2}, 40);
        for (int i = 0; i < 3; ++i)
            c.require(std::abs(tr.back()[static_cast<std::size_t>(i)] - 2.438711) < 1e-3,
                      "3D endpoint off");
        auto dm = damping_metrics(m, p, tr, positive_steady_state_d(m, p));
        c.require(dm.damped_oscillation, "3D run not classified as damped oscillation");
        c.require(dm.max_crossings >= 2, "3D run missing repeated crossings");
        c.require(dm.terminal_residual < 1e-6, "3D terminal residual too large");
    }
    {
        const ModelDef& m = get_model("bwd6d");
        ParameterSet p = ParameterSet::parse("s=1,b=10,g=0.2");
        Trajectory tr = integrate(m, p, {25, 23, 25, 30.5, 21, 30}, 60);
        for (int i = 0; i < 6; ++i)
            c.require(std::abs(tr.back()[static_cast<std::size_t>(i)] - 29.58450) < 1e-3,
                      "6D endpoint off");
        auto dm = damping_metrics(m, p, tr, positive_steady_state_d(m, p));
        c.require(dm.damped_oscillation, "6D run not classified as damped oscillation");
        auto pd = pairwise_decay_check(m, p, tr);
        c.require(pd.ok && pd.max_rel_err <= 1e-6, "pairwise decay law beyond 1e-6");
    }
}

// 7. algebra-kernel oracles
static void criterion7() {
    Criterion c("criterion 7: algebra-kernel oracle suite");
    auto ctx = make_context({"x", "y"});
    auto P = [&](const char* s) { return Polynomial::parse(ctx, s, TermOrder::lex()); };

    // worked division example
    DivisionResult d = normal_form(P("x^2*y + x*y^2 + y^2"),
                                   std::vector<Polynomial>{P("x*y - 1"), P("y^2 - 1")},
                                   TermOrder::lex());
    c.require(d.remainder.equals(P("x + y + 1")), "division remainder wrong");

    // reduced-basis uniqueness under generator permutation
    std::vector<Polynomial> gens{P("x^2 + y^2 - 1"), P("x - y")};
    GroebnerBasis a = groebner(Ideal(ctx, gens), TermOrder::lex());
    std::swap(gens[0], gens[1]);
    GroebnerBasis b = groebner(Ideal(ctx, gens), TermOrder::lex());
    c.require(a.basis.size() == b.basis.size(), "permutation changed basis size");
    for (std::size_t i = 0; i < a.basis.size(); ++i)
        c.require(a.basis[i].equals(b.basis[i]), "permutation changed the reduced basis");

    // S-pair criterion on returned bases
    for (const auto& gbasis : {a, b})
        for (std::size_t i = 0; i < gbasis.basis.size(); ++i)
            for (std::size_t j = i + 1; j < gbasis.basis.size(); ++j) {
                Polynomial S = s_polynomial(gbasis.basis[i], gbasis.basis[j], gbasis.order);
                if (!S.is_zero())
                    c.require(normal_form(S, gbasis.basis, gbasis.order).remainder.is_zero(),
                              "S-pair does not reduce to zero");
            }

    // membership order independence on a nontrivial example
    Ideal I(ctx, {P("x^2 + y^2 - 1"), P("x*y - 2")});
    Polynomial probe = P("x^3*y + x - y");
    c.require(member(probe, I, TermOrder::lex()) == member(probe, I, TermOrder::degrevlex()),
              "membership depends on the order");

    // quotient and intersection identities
    c.require(ideal_equal(quotient(Ideal(ctx, {P("x^2*y")}), Ideal(ctx, {P("x")})),
                          Ideal(ctx, {P("x*y")})),
              "<x^2 y> : <x> != <xy>");
    c.require(ideal_equal(intersect(Ideal(ctx, {P("x")}), Ideal(ctx, {P("y")})),
                          Ideal(ctx, {P("x*y")})),
              "<x> cap <y> != <xy>");

    // radical membership
    c.require(radical_member(P("x"), Ideal(ctx, {P("x^2")})), "x not in sqrt<x^2>");
    c.require(!radical_member(P("1"), Ideal(ctx, {P("x")})), "1 in sqrt<x>");
}

// 8. loop-map fixed points on 100 samples
static void criterion8() {
    Criterion c("criterion 8: loop-map fixed points and monotonicity");
    Rng rng(8);
    for (int k = 0; k < 100; ++k) {
        ParameterSet p = sample_range(rng, 1e-2, 1e2);
        auto rep = allwright_check(p);
        c.require(rep.ok, "loop-map analysis failed at a sample");
        c.require(rep.fixed_points_match_quadratic,
                  "double-composition fixed points differ from the steady-state quadratic");
        c.require(rep.u2_negative, "second fixed point not negative");
        c.require(rep.derivative_samples == 25, "a sampled derivative sign was not negative");
        // u1 equals the positive steady state to 1e-9
        double B = positive_steady_state_d(get_model("rep3d"), p)[0];
        c.require(std::abs(rep.u1 - B) <= 1e-9 * std::max(1.0, std::abs(B)),
                  "u1 differs from the positive coordinate");
    }
}

// 9. the measured |Re|/|Im| ratio at s=g=0.1, b=100 is below one while the
//    point remains asymptotically stable
static void criterion9() {
    Criterion c("criterion 9: small-real-part regime is reported");
    ParameterSet p = ParameterSet::parse("s=0.1,b=100,g=0.1");
    auto rep = classify(get_model("rep3d"), p);
    c.require(rep.complex_pair.has_value(), "no complex pair reported");
    if (rep.complex_pair) {
        c.require(std::abs(rep.complex_pair->abs_re - 0.0531) < 5e-4, "|Re| off");
        c.require(std::abs(rep.complex_pair->abs_im - 0.0813) < 5e-4, "|Im| off");
        c.require(rep.complex_pair->ratio < 1.0, "ratio not below one");
        c.require(rep.abs_re_lt_abs_im, "report does not flag |Re| < |Im|");
    }
    c.require(rep.verdict == Verdict::AsymptoticallyStable, "point not stable");

    // exact-arithmetic confirmation of the same sign decision
    Rational s(1, 10), b(100), g(1, 10);
    Rational gs2 = (g + s) * (g + s);
    Rational lhs = Rational(2) * b * g - gs2;
    c.require(lhs.sign() > 0 && lhs * lhs > Rational(9) * gs2 * (Rational(4) * b * g + gs2),
              "exact ratio comparison failed");
}

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (g_failed == 0) std::printf("all acceptance criteria passed\n");
    else std::printf("%d acceptance criteria FAILED\n", g_failed);
    return g_failed == 0 ? 0 : 1;
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "steadycert/certify.hpp"
#include "steadycert/sampling.hpp"

using namespace steadycert;

TEST_CASE("data files carry the expected bytes and structure") {
    std::string dir = resolve_data_dir();
    CHECK(fnv1a_file(dir + "/appendixC_I.json") == 0x9a0ad8dfa23372d5ull);
    CHECK(fnv1a_file(dir + "/J1_h123.json") == 0x0ff91d9be4c5319dull);
    CHECK(fnv1a_file(dir + "/HG.json") == 0x7b8963e7afaf2f1bull);
    CHECK(fnv1a_file(dir + "/quotient_components.json") == 0xe16ae12879696963ull);

    RefIdealData d = load_ideal_data();
    CHECK(d.ctx->names() == std::vector<std::string>{"s", "b", "g", "x1", "x3", "x5"});
    CHECK(d.get("I").generators.size() == 3);
    CHECK(d.get("I1").generators.size() == 3);
    CHECK(d.get("I2").generators.size() == 11);
    CHECK(d.get("I3").generators.size() == 3);
    CHECK(d.get("J1").generators.size() == 3);
    CHECK(d.get("H").generators.size() == 3);
    CHECK(d.get("G").generators.size() == 11);
    CHECK(d.quotient_components.size() == 5);

    // the stationarity ideal in the data equals the model's reduced system
    const ModelDef& bwd = get_model("bwd6d");
    for (int i = 0; i < 3; ++i) {
        Polynomial from_model = bwd.stationarity_reduced[static_cast<std::size_t>(i)].embed(
            d.ctx, TermOrder::degrevlex());
        CHECK(from_model.equals(d.get("I").generators[static_cast<std::size_t>(i)]));
    }

    // J2's quadratic generator is the symmetric-state polynomial
    ParameterSet p = ParameterSet::parse("s=1,b=10,g=0.2");
    Polynomial j2q = d.get("J2").generators[0].substitute(
        {{"s", p.get("s")}, {"b", p.get("b")}, {"g", p.get("g")}});
    UniPoly q = collapse_to_unipoly(j2q, {"x5"});
    CHECK(q.monic() == symmetric_state_polynomial(bwd, p).monic());
}

TEST_CASE("shape detection and enumeration on a toy system") {
    auto ctx = make_context({"x", "y"});
    // x = y^2, y^3 = y  ->  solutions (0,0), (1,1), (1,-1)
    std::vector<Polynomial> gens{Polynomial::parse(ctx, "x - y^2", TermOrder::lex()),
                                 Polynomial::parse(ctx, "y^3 - y", TermOrder::lex())};
    GroebnerBasis gb = groebner(Ideal(ctx, gens), TermOrder::lex());
    auto shape = shape_from_lex_basis(gb);
    REQUIRE(shape.has_value());
    auto sols = enumerate_real_solutions(*shape);
    CHECK(sols.size() == 3);
    int positive = 0;
    for (const auto& s : sols) positive += s.positive ? 1 : 0;
    CHECK(positive == 1);  // only (1,1)
}

TEST_CASE("certify rep3d") {
    SUBCASE("figure parameters") {
        auto r = certify_rep3d(ParameterSet::parse("s=0.3,b=4,g=0.6"));
        REQUIRE(r.ok());
        CHECK(r.unique_positive);
        CHECK(r.positive_solutions == 1);
        CHECK(r.matches_closed_form);
        CHECK(r.symmetric);
        CHECK(r.positive_iv.width() <= Rational(1, 1000000000L));
        double mid = r.positive_iv.mid_d();
        CHECK(mid == doctest::Approx(2.438710967).epsilon(1e-8));
    }
    SUBCASE("unit parameters give sqrt(2)") {
        auto r = certify_rep3d(ParameterSet::sbg(Rational(1), Rational(1), Rational(1)));
        REQUIRE(r.ok());
        CHECK(r.unique_positive);
        CHECK(r.positive_iv.mid_d() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
    }
    SUBCASE("degenerate request") {
        CHECK(!certify_rep3d(ParameterSet::parse("s=0,b=4,g=0.6")).ok());
    }
}

TEST_CASE("certify fwd6d") {
    auto r = certify_fwd6d(ParameterSet::parse("s=1,b=10,g=0.2"));
    REQUIRE(r.ok());
    CHECK(r.unique_positive);
    CHECK(r.symmetric);
    CHECK(r.matches_closed_form);
    CHECK(r.positive_iv.mid_d() == doctest::Approx(29.5845036991).epsilon(1e-9));
    CHECK(r.real_solutions >= 2);  // at least F and H are real

    auto r1 = certify_fwd6d(ParameterSet::sbg(Rational(1), Rational(1), Rational(1)));
    REQUIRE(r1.ok());
    CHECK(r1.positive_iv.mid_d() == doctest::Approx((std::sqrt(12.0) + 2) / 4).epsilon(1e-9));
}

TEST_CASE("certify bwd6d") {
    RefIdealData data = load_ideal_data();
    auto r = certify_bwd6d(ParameterSet::parse("s=1,b=10,g=0.2"), Budget(), true, &data);
    REQUIRE(r.ok());
    CHECK(!r.j1_positive_triple);
    CHECK(r.unique_positive);
    CHECK(r.j1_real_roots >= 1);
    CHECK(r.positive_iv.mid_d() == doctest::Approx(29.5845036991).epsilon(1e-9));
    CHECK(r.crosschecked);
    CHECK(r.crosscheck_ok);

    auto r1 = certify_bwd6d(ParameterSet::sbg(Rational(1), Rational(1), Rational(1)), Budget(), true, &data);
    REQUIRE(r1.ok());
    CHECK(r1.unique_positive);
    CHECK(r1.crosscheck_ok);

    // cubic leading coefficient at the figure parameters: 2sg^3+bg^3+g^4 = 0.0976
    Rational s(1), b(10), g(1, 5);
    Rational lead = Rational(2) * s * g.pow(3) + b * g.pow(3) + g.pow(4);
    CHECK(lead == Rational(61, 625));
    CHECK(lead.to_double() == doctest::Approx(0.0976));
}

TEST_CASE("seeded certification runs") {
    auto run = run_certification("rep3d", 25, 1e-3, 1e3, 42, 2);
    CHECK(run.errors == 0);
    CHECK(run.expectation_failures == 0);
    CHECK(run.all_unique_positive);
    CHECK(run.all_match_closed_form);
    CHECK(run.all_symmetric);

    auto runb = run_certification("bwd6d", 25, 1e-3, 1e3, 42, 2, 5);
    CHECK(runb.errors == 0);
    CHECK(runb.expectation_failures == 0);
    CHECK(runb.j1_always_empty);
    CHECK(runb.crosschecks == 5);
    CHECK(runb.crosscheck_failures == 0);

    // determinism: same seed, same aggregate
    auto run2 = run_certification("rep3d", 25, 1e-3, 1e3, 42, 1);
    CHECK(run2.expectation_failures == run.expectation_failures);
    CHECK(run2.errors == run.errors);
}

TEST_CASE("decomposition verification: components of I") {
    auto rep = verify_decompositions(DecompositionCheck::ComponentsOfI, 7, 20);
    CHECK(rep.ok);
    REQUIRE(rep.containments.size() == 3);
    for (const auto& c : rep.containments) {
        CHECK(c.holds);
        CHECK(c.symbolic_proved);  // the shipped component bases are small enough
    }
    CHECK(rep.coverage_points > 0);
    CHECK(rep.coverage_failures == 0);
}

TEST_CASE("decomposition verification: H in G") {
    auto rep = verify_decompositions(DecompositionCheck::ContainmentHG, 7, 20);
    CHECK(rep.ok);
    REQUIRE(rep.containments.size() == 2);
    CHECK(rep.containments[0].holds);
    CHECK(rep.containments[0].symbolic_proved);
    CHECK(rep.containments[1].holds);  // I in J1 at specializations

    // membership is order-independent: verify h_i in G under lex too, at one specialization
    RefIdealData data = load_ideal_data();
    std::map<std::string, Rational> vals{{"s", Rational(1)}, {"b", Rational(2)}, {"g", Rational(3)}};
    std::vector<Polynomial> gs;
    for (const auto& q : data.get("G").generators) gs.push_back(q.substitute(vals));
    Ideal G(gs[0].context(), gs);
    GroebnerBasis lexgb = groebner(G, TermOrder::lex());
    GroebnerBasis drlgb = groebner(G, TermOrder::degrevlex());
    for (const auto& h : data.get("H").generators) {
        Polynomial hs = h.substitute(vals);
        CHECK(member(hs, lexgb));
        CHECK(member(hs, drlgb));
    }
}

TEST_CASE("decomposition verification: quotient H:G = <1> at positive specializations") {
    auto rep = verify_decompositions(DecompositionCheck::QuotientHG, 7, 5);
    CHECK(rep.ok);
    CHECK(rep.quotient_specializations == 5);
    CHECK(rep.quotient_unit_count == 5);
    CHECK(rep.component_unsat_count == 5);

    // the worked specialization (s,b,g) = (1,2,3)
    RefIdealData data = load_ideal_data();
    std::map<std::string, Rational> vals{{"s", Rational(1)}, {"b", Rational(2)}, {"g", Rational(3)}};
    std::vector<Polynomial> hs, gs;
    for (const auto& h : data.get("H").generators) hs.push_back(h.substitute(vals));
    for (const auto& q : data.get("G").generators) gs.push_back(q.substitute(vals));
    Ideal H(hs[0].context(), hs), G(gs[0].context(), gs);
    CHECK(is_unit_ideal(quotient(H, G)));
    // oracle: each shipped difference component is unsatisfiable at (1,2,3)
    for (const auto& comp : data.quotient_components) {
        bool unsat = false;
        for (const auto& gen : comp.generators) {
            Polynomial spec = gen.substitute(vals);
            if (spec.is_constant() && !spec.is_zero()) unsat = true;
        }
        CHECK(unsat);
    }
}

TEST_CASE("loop-map analysis") {
    SUBCASE("figure parameters") {
        ParameterSet p = ParameterSet::parse("s=0.3,b=4,g=0.6");
        auto rep = allwright_check(p);
        CHECK(rep.ok);
        CHECK(rep.decreasing_on_nonneg);
        CHECK(rep.fixed_points_match_quadratic);
        CHECK(rep.phi_fixes_u1);
        CHECK(rep.u1 == doctest::Approx(2.438710967).epsilon(1e-9));
        CHECK(rep.u2 < 0);

        // the composed map itself: phi(u1) = u1 within the refined interval
        auto r3 = certify_rep3d(p);
        Rational mid = (r3.positive_iv.lo + r3.positive_iv.hi) / Rational(2);
        Rational moved = loop_map_eval(p, mid);
        CHECK(std::abs(moved.to_double() - mid.to_double()) < 1e-8);
    }
    SUBCASE("sampled parameters") {
        Rng rng(3);
        for (int k = 0; k < 30; ++k) {
            ParameterSet p = sample_sbg(rng, 1e-2, 1e2);
            auto rep = allwright_check(p);
            CHECK(rep.ok);
            CHECK(rep.u2_negative);
        }
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "steadycert/models.hpp"

using namespace steadycert;

namespace {

// independent oracle: multivariate Newton on the double RHS
std::vector<double> newton_steady_state(const ModelDef& m, const ParameterSet& p,
                                        std::vector<double> x, int iters = 80) {
    auto prm = m.param_doubles(p);
    int n = m.dim;
    for (int it = 0; it < iters; ++it) {
        std::vector<double> f(n);
        m.rhs_d(prm, x.data(), f.data());
        auto J = jacobian_d(m, p, x);
        Eigen::MatrixXd A(n, n);
        Eigen::VectorXd b(n);
        for (int i = 0; i < n; ++i) {
            b(i) = -f[i];
            for (int j = 0; j < n; ++j) A(i, j) = J[i][j];
        }
        Eigen::VectorXd dx = A.partialPivLu().solve(b);
        for (int i = 0; i < n; ++i) x[i] += dx(i);
    }
    return x;
}

double residual_norm(const ModelDef& m, const ParameterSet& p, const std::vector<double>& x) {
    auto f = rhs_eval_d(m, p, x);
    double r = 0;
    for (double v : f) r += v * v;
    return std::sqrt(r);
}

ParameterSet rand_positive_sbg(std::mt19937_64& rng) {
    auto draw = [&] {
        double e = -2.0 + 4.0 * (static_cast<double>(rng() >> 11) * 0x1p-53);
        return Rational::from_double(std::pow(10.0, e));
    };
    return ParameterSet::sbg(draw(), draw(), draw());
}

}  // namespace

TEST_CASE("rhs evaluation examples") {
    const ModelDef& m = get_model("rep3d");
    ParameterSet p = ParameterSet::parse("s=0.3,b=4,g=0.6");

    // state (1,2,2): first component 0.3 + 4/3 - 0.6 = 31/30
    auto v = rhs_eval(m, p, {Rational(1), Rational(2), Rational(2)});
    CHECK(v[0] == Rational(31, 30));

    // at the positive steady state the RHS vanishes (floating residual)
    auto B = positive_steady_state_d(m, p);
    CHECK(residual_norm(m, p, B) < 1e-12);

    const ModelDef& fwd = get_model("fwd6d");
    ParameterSet pf = ParameterSet::parse("s=1,b=10,g=0.2");
    auto F = positive_steady_state_d(fwd, pf);
    CHECK(residual_norm(fwd, pf, F) < 1e-12);
    for (double c : F) CHECK(c == doctest::Approx(29.584503699).epsilon(1e-9));

    CHECK_THROWS_AS(rhs_eval(m, p, {Rational(-2), Rational(1), Rational(1)}), DomainError);
    CHECK_THROWS_AS(rhs_eval(m, ParameterSet::parse("s=0,b=4,g=0.6"),
                             {Rational(1), Rational(1), Rational(1)}),
                    DomainError);
}

TEST_CASE("stationarity numerators match the cleared systems") {
    const ModelDef& rep = get_model("rep3d");
    CHECK(rep.stationarity[0].equals(
        Polynomial::parse(rep.ctx, "s + s*z + b - g*x - g*x*z", TermOrder::degrevlex())));

    const ModelDef& fwd = get_model("fwd6d");
    auto rc = fwd.reduced_ctx;
    CHECK(fwd.stationarity_reduced[0].equals(
        Polynomial::parse(rc, "s + b*x1 - g*x1 + s*x1 - g*x1^2 + s*x5 - g*x1*x5")));
    CHECK(fwd.stationarity_reduced[1].equals(
        Polynomial::parse(rc, "s + s*x1 + b*x3 - g*x3 + s*x3 - g*x1*x3 - g*x3^2")));
    CHECK(fwd.stationarity_reduced[2].equals(
        Polynomial::parse(rc, "s + s*x3 + b*x5 - g*x5 + s*x5 - g*x3*x5 - g*x5^2")));

    const ModelDef& bwd = get_model("bwd6d");
    auto bc = bwd.reduced_ctx;
    CHECK(bwd.stationarity_reduced[0].equals(
        Polynomial::parse(bc, "s - g*x1 + b*x3 + s*x3 - g*x1*x3 + s*x5 - g*x1*x5")));
    CHECK(bwd.stationarity_reduced[1].equals(
        Polynomial::parse(bc, "s + s*x1 - g*x3 - g*x1*x3 + b*x5 + s*x5 - g*x3*x5")));
    CHECK(bwd.stationarity_reduced[2].equals(
        Polynomial::parse(bc, "s + b*x1 + s*x1 + s*x3 - g*x5 - g*x1*x5 - g*x3*x5")));
}

TEST_CASE("closed-form steady states") {
    const ModelDef& rep = get_model("rep3d");
    ParameterSet p = ParameterSet::parse("s=0.3,b=4,g=0.6");
    auto states = closed_form_steady_states(rep, p);
    REQUIRE(states.size() == 2);
    CHECK(states[0].positive);
    CHECK(!states[1].positive);
    CHECK(states[0].coords[0].approx == doctest::Approx(2.438710967).epsilon(1e-9));

    // Newton oracle agrees
    auto nb = newton_steady_state(rep, p, {2.0, 2.0, 2.0});
    CHECK(nb[0] == doctest::Approx(states[0].coords[0].approx).epsilon(1e-10));

    // s=b=g=1: positive coordinate is sqrt(2) (stationarity residual certifies it)
    ParameterSet p1 = ParameterSet::sbg(Rational(1), Rational(1), Rational(1));
    auto st1 = closed_form_steady_states(rep, p1);
    CHECK(st1[0].coords[0].approx == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(residual_norm(rep, p1, {st1[0].coords[0].approx, st1[0].coords[0].approx,
                                  st1[0].coords[0].approx}) < 1e-12);

    const ModelDef& fwd = get_model("fwd6d");
    ParameterSet pf = ParameterSet::parse("s=1,b=10,g=0.2");
    auto fst = closed_form_steady_states(fwd, pf);
    CHECK(fst[0].coords[0].approx == doctest::Approx(29.5845036991).epsilon(1e-9));
    CHECK(fst[1].coords[0].approx == doctest::Approx(-0.0845036991).epsilon(1e-7));
    CHECK(!fst[1].positive);

    auto nf = newton_steady_state(fwd, pf, std::vector<double>(6, 25.0));
    CHECK(nf[0] == doctest::Approx(29.5845036991).epsilon(1e-9));

    // s=b=g=1: f = (sqrt(12)+2)/4
    auto f1 = closed_form_steady_states(fwd, p1);
    CHECK(f1[0].coords[0].approx == doctest::Approx((std::sqrt(12.0) + 2) / 4).epsilon(1e-12));
}

TEST_CASE("steady-state signs and residuals on random parameters") {
    std::mt19937_64 rng(2024);
    for (const char* id : {"rep3d", "fwd6d", "bwd6d"}) {
        const ModelDef& m = get_model(id);
        for (int trial = 0; trial < 250; ++trial) {
            ParameterSet p = rand_positive_sbg(rng);
            auto states = closed_form_steady_states(m, p);
            REQUIRE(states.size() == 2);
            CHECK(states[0].positive);
            CHECK(!states[1].positive);
            std::vector<double> x(static_cast<std::size_t>(m.dim), states[0].coords[0].approx);
            double scale = std::max(1.0, std::abs(states[0].coords[0].approx));
            CHECK(residual_norm(m, p, x) / scale < 1e-10);
            // exact residual: the symmetric-coordinate polynomial divides the
            // collapsed stationarity numerators
            UniPoly q = symmetric_state_polynomial(m, p);
            const auto& sys = m.dim == 3 ? m.stationarity : m.stationarity_reduced;
            for (const auto& f : sys) {
                Polynomial spec = f.substitute(
                    {{"s", p.get("s")}, {"b", p.get("b")}, {"g", p.get("g")}});
                UniPoly collapsed = collapse_to_unipoly(spec, spec.context()->names());
                CHECK((collapsed % q).is_zero());
            }
        }
    }
}

TEST_CASE("exact stationarity membership at rational steady states") {
    // parameters built so the discriminant is a perfect square: u = 13/10,
    // g+s = 1/2 -> b = (u^2-(g+s)^2)/(4g)
    Rational g(3, 10), s(1, 5), u(13, 10);
    Rational b = (u * u - Rational(1, 4)) / (Rational(4) * g);
    ParameterSet p = ParameterSet::sbg(s, b, g);
    const ModelDef& rep = get_model("rep3d");
    auto states = closed_form_steady_states(rep, p);
    REQUIRE(states[0].coords[0].exact.has_value());
    Rational B = *states[0].coords[0].exact;
    CHECK(B == (s + u - g) / (Rational(2) * g));
    auto zero = rhs_eval(rep, p, {B, B, B});
    for (const auto& v : zero) CHECK(v.is_zero());
}

TEST_CASE("jacobian structure") {
    const ModelDef& rep = get_model("rep3d");
    ParameterSet p = ParameterSet::parse("s=0.3,b=4,g=0.6");
    auto states = closed_form_steady_states(rep, p);
    double Bd = states[0].coords[0].approx;
    auto J = jacobian_d(rep, p, {Bd, Bd, Bd});

    double g = 0.6, b = 4.0;
    double c = -b / ((1 + Bd) * (1 + Bd));
    // circulant: -g on the diagonal, c on the cyclic shift positions
    // (dx/dz, dy/dx, dz/dy), zero elsewhere
    for (int i = 0; i < 3; ++i) {
        CHECK(J[i][i] == doctest::Approx(-g));
        int dep = (i + 2) % 3;
        for (int j = 0; j < 3; ++j) {
            if (j == i) continue;
            if (j == dep) CHECK(J[i][j] == doctest::Approx(c));
            else CHECK(J[i][j] == doctest::Approx(0.0));
        }
    }

    // bwd6d: diagonal is -g for every state variable
    const ModelDef& bwd = get_model("bwd6d");
    ParameterSet pb = ParameterSet::parse("s=1,b=10,g=0.2");
    auto F = positive_steady_state_d(bwd, pb);
    auto Jb = jacobian_d(bwd, pb, F);
    for (int i = 0; i < 6; ++i) CHECK(Jb[i][i] == doctest::Approx(-0.2));
}

TEST_CASE("char poly basics") {
    const ModelDef& rep = get_model("rep3d");
    ParameterSet p = ParameterSet::sbg(Rational(1, 2), Rational(2), Rational(1));
    std::vector<Rational> state{Rational(1), Rational(2), Rational(3)};
    UniPoly cp = char_poly(rep, p, state);
    CHECK(cp.degree() == 3);
    CHECK(cp.leading() == Rational(1));
    // p(0) = (-1)^dim det J
    auto J = jacobian(rep, p, state);
    Rational det = det_cofactor(J);
    CHECK(cp.eval<Rational>(Rational(0)) == -det);
}

TEST_CASE("bwd6d char poly equals the factored form") {
    // rational parameterization: pick rational (b, g, f) with s > 0, so the
    // steady state F = (f,...,f) is exactly rational
    auto factored = [](const Rational& b, const Rational& g, const Rational& f) {
        Rational w = Rational(1) + Rational(2) * f;  // 1+2f
        Rational w2 = w * w, w4 = w2 * w2;
        UniPoly lin({g * w2 - b, w2});
        UniPoly quad({g * g * w4 + b * g * w2 +
                          b * b * (Rational(1) + Rational(3) * f + Rational(3) * f * f),
                      w2 * (b + Rational(2) * g * w2), w4});
        UniPoly cubic = UniPoly({g, Rational(1)}).pow(3);  // (g+u)^3
        UniPoly all = cubic * lin * quad;
        return all.scaled((w2 * w4).inv());  // divide by (1+2f)^6
    };

    std::mt19937_64 rng(99);
    const ModelDef& bwd = get_model("bwd6d");
    int done = 0;
    while (done < 20) {
        Rational f(static_cast<long>(rng() % 50) + 1, static_cast<long>(rng() % 9) + 1);
        Rational g(static_cast<long>(rng() % 30) + 1, static_cast<long>(rng() % 9) + 1);
        Rational b(static_cast<long>(rng() % 30) + 1, static_cast<long>(rng() % 9) + 1);
        // s from the defining quadratic 2g f^2 + (g-2s-b) f - s = 0
        Rational s = f * (Rational(2) * g * f + g - b) / (Rational(2) * f + Rational(1));
        if (s.sign() <= 0) continue;
        ++done;
        ParameterSet p = ParameterSet::sbg(s, b, g);
        std::vector<Rational> F(6, f);
        UniPoly cp = char_poly(bwd, p, F);
        UniPoly expect = factored(b, g, f);
        CHECK(cp == expect);
    }
}

TEST_CASE("pairwise difference law is a polynomial identity") {
    for (const char* id : {"fwd6d", "bwd6d"}) {
        const ModelDef& m = get_model(id);
        Polynomial g = Polynomial::variable(m.ctx, "g", TermOrder::degrevlex());
        for (auto [i, j] : m.symmetry_pairs) {
            auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
            CHECK(m.rhs[si].den.equals(m.rhs[sj].den));
            Polynomial xi = Polynomial::variable(m.ctx, m.states[si], TermOrder::degrevlex());
            Polynomial xj = Polynomial::variable(m.ctx, m.states[sj], TermOrder::degrevlex());
            Polynomial lhs = m.rhs[si].num - m.rhs[sj].num;
            Polynomial rhs = (-g) * (xi - xj) * m.rhs[si].den;
            CHECK(lhs.equals(rhs));
        }
    }
}

TEST_CASE("elowitz with n=1 reduces to the 3D fixed-point equation with unit decay") {
    Rational s(3, 10), b(4);
    const ModelDef& elo = get_model("elowitz", 1);
    ParameterSet pe(std::map<std::string, Rational>{
        {"alpha0", s}, {"alpha", b}, {"beta", Rational(1)}});
    UniPoly fixed_elowitz = symmetric_state_polynomial(elo, pe);

    const ModelDef& rep = get_model("rep3d");
    ParameterSet pr = ParameterSet::sbg(s, b, Rational(1));
    UniPoly fixed_rep = symmetric_state_polynomial(rep, pr);
    CHECK(fixed_elowitz.monic() == fixed_rep.monic());
}

TEST_CASE("goodwin and elowitz fixed points") {
    const ModelDef& gw = get_model("goodwin", 2);
    ParameterSet pg(std::map<std::string, Rational>{
        {"k1", Rational(1)}, {"k2", Rational(1)}, {"k3", Rational(1)}, {"k4", Rational(1)},
        {"k5", Rational(1)}, {"k6", Rational(1)}, {"k7", Rational(1)}});
    auto st = closed_form_steady_states(gw, pg);
    REQUIRE(st.size() == 1);
    std::vector<double> x{st[0].coords[0].approx, st[0].coords[1].approx, st[0].coords[2].approx};
    CHECK(residual_norm(gw, pg, x) < 1e-10);

    const ModelDef& elo = get_model("elowitz", 2);
    ParameterSet pe(std::map<std::string, Rational>{
        {"alpha0", Rational(0)}, {"alpha", Rational(100)}, {"beta", Rational(1)}});
    auto se = closed_form_steady_states(elo, pe);
    REQUIRE(se.size() == 1);
    std::vector<double> xe(6, se[0].coords[0].approx);
    CHECK(residual_norm(elo, pe, xe) < 1e-10);
}

TEST_CASE("symbolic vs hand-coded double RHS agree") {
    std::mt19937_64 rng(31);
    auto rnd = [&] { return 0.1 + 3.0 * (static_cast<double>(rng() >> 11) * 0x1p-53); };
    for (const char* id : {"rep3d", "fwd6d", "bwd6d"}) {
        const ModelDef& m = get_model(id);
        for (int t = 0; t < 50; ++t) {
            ParameterSet p = ParameterSet::sbg(Rational::from_double(rnd()),
                                               Rational::from_double(rnd()),
                                               Rational::from_double(rnd()));
            std::vector<double> x;
            std::vector<Rational> xr;
            for (int i = 0; i < m.dim; ++i) {
                double v = rnd();
                x.push_back(v);
                xr.push_back(Rational::from_double(v));
            }
            auto fast = rhs_eval_d(m, p, x);
            auto exact = rhs_eval(m, p, xr);
            for (int i = 0; i < m.dim; ++i)
                CHECK(fast[static_cast<std::size_t>(i)] ==
                      doctest::Approx(exact[static_cast<std::size_t>(i)].to_double()).epsilon(1e-12));
        }
    }
}

TEST_CASE("reduced systems are the full numerators under the pair identification") {
    // x2 = x1, x4 = x3, x6 = x5; rows 0, 2, 4 represent the pairs
    for (const char* id : {"fwd6d", "bwd6d"}) {
        const ModelDef& m = get_model(id);
        auto rctx = m.reduced_ctx;
        auto identify = [&](const Polynomial& full) {
            // s b g x1 x2 x3 x4 x5 x6  ->  s b g x1 x1 x3 x3 x5 x5
            static const std::size_t map9[9] = {0, 1, 2, 3, 3, 4, 4, 5, 5};
            std::vector<Term> terms;
            for (const auto& tm : full.terms()) {
                Monomial mono(6);
                for (std::size_t i = 0; i < 9; ++i) mono[map9[i]] += tm.mono[i];
                terms.push_back({tm.coeff, std::move(mono)});
            }
            return Polynomial(rctx, TermOrder::degrevlex(), std::move(terms));
        };
        for (int k = 0; k < 3; ++k)
            CHECK(identify(m.stationarity[static_cast<std::size_t>(2 * k)])
                      .equals(m.stationarity_reduced[static_cast<std::size_t>(k)]));
    }
}

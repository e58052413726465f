#include "steadycert/stability.hpp"

#include <Eigen/Dense>

#include "steadycert/groebner.hpp"
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace steadycert {

namespace {

// Hurwitz matrix H[i][j] = a_{2(j+1)-(i+1)} (1-based), zero out of range.
template <typename T>
std::vector<std::vector<T>> hurwitz_matrix(const std::vector<T>& a) {
    std::size_t n = a.size() - 1;
    std::vector<std::vector<T>> H(n, std::vector<T>(n, T(0)));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
            long k = static_cast<long>(2 * j) - static_cast<long>(i);
            if (k >= 0 && k <= static_cast<long>(n)) H[i - 1][j - 1] = a[static_cast<std::size_t>(k)];
        }
    return H;
}

template <typename T>
std::vector<T> hurwitz_generic(const std::vector<T>& a) {
    std::size_t n = a.size() - 1;
    auto H = hurwitz_matrix(a);
    std::vector<T> deltas;
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<T>> sub(k, std::vector<T>(k, T(0)));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub[i][j] = H[i][j];
        deltas.push_back(det_cofactor(sub));
    }
    return deltas;
}

}  // namespace

std::vector<Rational> hurwitz_determinants(std::vector<Rational> coeffs, bool normalize) {
    if (coeffs.size() < 2) throw DomainError("need degree >= 1 for Hurwitz determinants");
    if (!coeffs[0].is_one()) {
        if (!normalize) throw DomainError("non-monic coefficients (pass normalize=true)");
        if (coeffs[0].sign() <= 0) throw DomainError("leading coefficient must be positive");
        Rational inv = coeffs[0].inv();
        for (auto& c : coeffs) c *= inv;
    }
    return hurwitz_generic<Rational>(coeffs);
}

std::vector<RatInterval> hurwitz_determinants_interval(const std::vector<RatInterval>& coeffs) {
    if (coeffs.size() < 2) throw DomainError("need degree >= 1 for Hurwitz determinants");
    return hurwitz_generic<RatInterval>(coeffs);
}

std::vector<std::complex<double>> eigen_numeric(const std::vector<std::vector<double>>& J) {
    const std::size_t n = J.size();
    Eigen::MatrixXd A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) A(static_cast<long>(i), static_cast<long>(j)) = J[i][j];
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw DomainError("eigenvalue iteration failed to converge");
    std::vector<std::complex<double>> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = es.eigenvalues()(static_cast<long>(i));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return out;
}

std::vector<std::complex<double>> eigen_closed_form(const ModelDef& m, const ParameterSet& p) {
    m.validate(p);
    double s = p.get_d("s"), b = p.get_d("b"), g = p.get_d("g");
    std::vector<std::complex<double>> ev;
    if (m.id == "rep3d") {
        double u = std::sqrt(4 * b * g + (g + s) * (g + s));
        double d = g + s + u;
        ev.emplace_back(-2 * g * u / d, 0.0);
        double re = -g * (3 * g + 3 * s + u) / (2 * d);
        double im = std::sqrt(3.0) * g * (u - g - s) / (2 * d);
        ev.emplace_back(re, im);
        ev.emplace_back(re, -im);
    } else if (m.id == "fwd6d" || m.id == "bwd6d") {
        double R = std::sqrt((b - g + 2 * s) * (b - g + 2 * s) + 8 * g * s);
        double f = (R + b - g + 2 * s) / (4 * g);
        double w2 = (1 + 2 * f) * (1 + 2 * f);
        ev.assign(3, {-g, 0.0});
        ev.emplace_back(-g + b / w2, 0.0);
        if (m.id == "fwd6d") {
            double re = -g + b * (2 + 3 * f) / (2 * w2);
            double im = std::sqrt(3.0) * b * f / (2 * w2);
            ev.emplace_back(re, im);
            ev.emplace_back(re, -im);
        } else {
            double re = -g - b / (2 * w2);
            double im = std::sqrt(3.0) * b / (2 * (1 + 2 * f));
            ev.emplace_back(re, im);
            ev.emplace_back(re, -im);
        }
    } else {
        throw DomainError("no closed-form eigenvalues for model " + m.id);
    }
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b2) {
        if (a.real() != b2.real()) return a.real() < b2.real();
        return a.imag() < b2.imag();
    });
    return ev;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::AsymptoticallyStable: return "asymptotically-stable";
        case Verdict::Unstable: return "unstable";
        case Verdict::Marginal: return "marginal";
    }
    return "?";
}

StabilityReport classify(const ModelDef& m, const ParameterSet& p) {
    m.validate(p);
    StabilityReport rep;
    rep.model = m.id;

    SymmetricProfile prof = positive_symmetric_profile(m, p);
    AlgebraicNumber root(prof.sf, prof.iv);
    root.refine_to(Rational(1, 1000000));

    // exact Hurwitz signs by interval refinement over the algebraic coordinate
    std::size_t n = static_cast<std::size_t>(m.dim);
    std::vector<int> dsigns(n, 0);
    int an_sign = 0;
    for (int rounds = 0; rounds < 300; ++rounds) {
        RatInterval t = root.enclosure();
        std::vector<RatInterval> state;
        state.reserve(n);
        for (const auto& c : prof.multipliers) state.push_back(t * c);
        auto cp = char_poly_interval(m, p, state);  // ascending
        std::vector<RatInterval> desc(cp.rbegin(), cp.rend());
        auto deltas = hurwitz_determinants_interval(desc);
        bool all = true;
        for (std::size_t i = 0; i < n; ++i) {
            auto s = deltas[i].sign();
            if (s.has_value()) dsigns[i] = *s;
            else { all = false; break; }
        }
        auto sa = cp[0].sign();
        if (sa.has_value()) an_sign = *sa;
        else all = false;
        if (all) break;
        root.refine_to(root.enclosure().width() * Rational(1, 16));
    }
    rep.hurwitz_signs = dsigns;
    rep.a_n_sign = an_sign;

    // floating mirror
    double td = root.to_double();
    std::vector<double> xd;
    for (const auto& c : prof.multipliers) xd.push_back(td * c.to_double());
    rep.steady_state = xd;
    std::vector<Rational> xr;
    for (const auto& c : prof.multipliers)
        xr.push_back(Rational::from_double(td) * c);
    auto Jd = jacobian_d(m, p, xd);
    rep.eigenvalues = eigen_numeric(Jd);
    if (m.id == "rep3d" || m.id == "fwd6d" || m.id == "bwd6d")
        rep.eigenvalues_closed = eigen_closed_form(m, p);

    {
        bool exact_state = root.is_rational();
        if (exact_state) {
            xr.clear();
            for (const auto& c : prof.multipliers) xr.push_back(root.interval().lo * c);
        }
        auto Jq = jacobian(m, p, xr);
        UniPoly cp = char_poly_matrix(Jq);
        for (std::size_t k = 0; k <= n; ++k)
            rep.char_coeffs.push_back(cp.coeff(n - k).to_double());
        if (exact_state)
            for (std::size_t k = 0; k <= n; ++k)
                rep.char_coeffs_exact.push_back(cp.coeff(n - k).str());
        std::vector<Rational> desc;
        for (std::size_t k = 0; k <= n; ++k) desc.push_back(cp.coeff(n - k));
        auto deltas = hurwitz_determinants(desc);
        for (const auto& d : deltas) rep.hurwitz.push_back(d.to_double());
        rep.a_n = cp.coeff(0).to_double();
    }

    // verdict from the numeric spectrum, 1e-9-scaled marginal band
    double max_re = -1e300, scale = 0;
    for (const auto& ev : rep.eigenvalues) {
        max_re = std::max(max_re, ev.real());
        scale = std::max(scale, std::abs(ev));
    }
    double band = 1e-9 * std::max(scale, 1.0);
    if (max_re > band) rep.verdict = Verdict::Unstable;
    else if (max_re < -band) rep.verdict = Verdict::AsymptoticallyStable;
    else rep.verdict = Verdict::Marginal;

    // dominant complex pair
    double best_im = 0;
    for (const auto& ev : rep.eigenvalues) {
        if (ev.imag() > 1e-12 * std::max(scale, 1.0) && ev.imag() > best_im) {
            best_im = ev.imag();
            ComplexPairInfo info;
            info.abs_re = std::abs(ev.real());
            info.abs_im = std::abs(ev.imag());
            info.ratio = info.abs_re / info.abs_im;
            rep.complex_pair = info;
        }
    }
    if (rep.complex_pair) rep.abs_re_lt_abs_im = rep.complex_pair->abs_re < rep.complex_pair->abs_im;
    return rep;
}

// ---------------------------------------------------------------------------
// Hopf-candidate formula construction

namespace {

// Rational functions with denominators kept as powers of a fixed factor list
// (the model's RHS denominators). Cancellation is exact single-divisor
// division, so the cleared formula polynomials come out in lowest terms
// without needing multivariate gcd.
struct FRF {
    Polynomial num;
    std::vector<unsigned> den;  // power per factor
};

class FRFRing {
public:
    FRFRing(ContextPtr ctx, std::vector<Polynomial> factors)
        : ctx_(std::move(ctx)), factors_(std::move(factors)) {}

    FRF zero() const { return {Polynomial::zero(ctx_, TermOrder::degrevlex()), pow0()}; }
    FRF from_poly(const Polynomial& p) const { return {p.with_order(TermOrder::degrevlex()), pow0()}; }
    FRF quot(const Polynomial& num, std::vector<unsigned> den) const {
        FRF r{num.with_order(TermOrder::degrevlex()), std::move(den)};
        cancel(r);
        return r;
    }

    FRF add(const FRF& a, const FRF& b) const {
        std::vector<unsigned> common(factors_.size());
        for (std::size_t i = 0; i < common.size(); ++i) common[i] = std::max(a.den[i], b.den[i]);
        Polynomial na = scale_up(a, common), nb = scale_up(b, common);
        FRF r{na + nb, common};
        cancel(r);
        return r;
    }
    FRF sub(const FRF& a, const FRF& b) const { return add(a, neg(b)); }
    FRF neg(const FRF& a) const { return {-a.num, a.den}; }
    FRF mul(const FRF& a, const FRF& b) const {
        std::vector<unsigned> den(factors_.size());
        for (std::size_t i = 0; i < den.size(); ++i) den[i] = a.den[i] + b.den[i];
        FRF r{a.num * b.num, std::move(den)};
        cancel(r);
        return r;
    }

    Polynomial den_poly(const FRF& a) const {
        Polynomial d = Polynomial::constant(ctx_, 1, TermOrder::degrevlex());
        for (std::size_t i = 0; i < factors_.size(); ++i)
            if (a.den[i]) d = d * factors_[i].pow(a.den[i]);
        return d;
    }

private:
    std::vector<unsigned> pow0() const { return std::vector<unsigned>(factors_.size(), 0); }

    Polynomial scale_up(const FRF& a, const std::vector<unsigned>& target) const {
        Polynomial p = a.num;
        for (std::size_t i = 0; i < factors_.size(); ++i)
            if (target[i] > a.den[i]) p = p * factors_[i].pow(target[i] - a.den[i]);
        return p;
    }

    void cancel(FRF& a) const {
        if (a.num.is_zero()) {
            std::fill(a.den.begin(), a.den.end(), 0u);
            return;
        }
        std::vector<Polynomial> single(1, Polynomial());
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            while (a.den[i] > 0) {
                single[0] = factors_[i];
                DivisionResult d = normal_form(a.num, single, TermOrder::degrevlex());
                if (!d.remainder.is_zero()) break;
                a.num = d.quotients[0];
                --a.den[i];
            }
        }
    }

    ContextPtr ctx_;
    std::vector<Polynomial> factors_;
};

FRF det_frf(const FRFRing& R, const std::vector<std::vector<FRF>>& a) {
    std::size_t k = a.size();
    if (k == 1) return a[0][0];
    FRF acc = R.zero();
    std::vector<std::vector<FRF>> sub(k - 1);
    for (std::size_t c = 0; c < k; ++c) {
        for (std::size_t i = 1; i < k; ++i) {
            sub[i - 1].clear();
            for (std::size_t j = 0; j < k; ++j)
                if (j != c) sub[i - 1].push_back(a[i][j]);
        }
        FRF term = R.mul(a[0][c], det_frf(R, sub));
        acc = (c % 2 == 0) ? R.add(acc, term) : R.sub(acc, term);
    }
    return acc;
}

}  // namespace

HopfFormula hopf_formula_build(const ModelDef& m) {
    HopfFormula F;
    F.ctx = m.ctx;
    F.param_vars = m.params;
    F.state_vars = m.states;
    F.stationarity = m.stationarity;

    // distinct nontrivial denominators become the factor basis
    std::vector<Polynomial> factors;
    for (const auto& r : m.rhs) {
        if (r.den.is_constant()) continue;
        bool seen = false;
        for (const auto& f : factors) seen = seen || f.equals(r.den);
        if (!seen) factors.push_back(r.den.with_order(TermOrder::degrevlex()));
    }
    F.denominators = factors;
    FRFRing R(m.ctx, factors);

    auto factor_index = [&](const Polynomial& d) {
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (factors[i].equals(d)) return i;
        throw DomainError("jacobian denominator outside the factor basis");
    };

    // Jacobian entries as factored rational functions
    auto Jsym = jacobian_symbolic(m);
    std::size_t n = static_cast<std::size_t>(m.dim);
    std::vector<std::vector<FRF>> J(n, std::vector<FRF>(n, R.zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<unsigned> den(factors.size(), 0);
            if (!Jsym[i][j].den.is_constant()) {
                // dens are squares of the RHS denominators by construction
                den[factor_index(m.rhs[i].den)] = 2;
                J[i][j] = R.quot(Jsym[i][j].num, den);
            } else {
                Rational c = Jsym[i][j].den.is_zero() ? Rational(1)
                                                      : Jsym[i][j].den.leading_coeff();
                J[i][j] = R.from_poly(Jsym[i][j].num.scaled(c.inv()));
            }
        }

    // char poly coefficients a_k via principal minors
    std::vector<FRF> a(n + 1, R.zero());
    a[0] = R.from_poly(Polynomial::constant(m.ctx, 1, TermOrder::degrevlex()));
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i)) idx.push_back(i);
        std::size_t k = idx.size();
        std::vector<std::vector<FRF>> sub(k, std::vector<FRF>(k, R.zero()));
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) sub[r][c] = J[idx[r]][idx[c]];
        FRF minor = det_frf(R, sub);
        if (k % 2) a[k] = R.sub(a[k], minor);
        else a[k] = R.add(a[k], minor);
    }

    // a_n > 0 (constant char-poly coefficient = (-1)^n det J)
    F.positive_num.push_back(a[n].num);
    F.positive_den.push_back(R.den_poly(a[n]));

    if (n >= 2) {
        std::vector<std::vector<FRF>> H(n, std::vector<FRF>(n, R.zero()));
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; j <= n; ++j) {
                long kk = static_cast<long>(2 * j) - static_cast<long>(i);
                if (kk >= 0 && kk <= static_cast<long>(n))
                    H[i - 1][j - 1] = a[static_cast<std::size_t>(kk)];
            }
        for (std::size_t k = 1; k <= n - 1; ++k) {
            std::vector<std::vector<FRF>> sub(k, std::vector<FRF>(k, R.zero()));
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub[i][j] = H[i][j];
            FRF delta = det_frf(R, sub);
            if (k == n - 1) {
                F.critical_num = delta.num;
                F.critical_den = R.den_poly(delta);
            } else {
                F.positive_num.push_back(delta.num);
                F.positive_den.push_back(R.den_poly(delta));
            }
        }
    }
    return F;
}

// ---------------------------------------------------------------------------
// grid falsification

GridSpec GridSpec::parse(const std::string& text, bool log_scale) {
    GridSpec spec;
    spec.log_scale = log_scale;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        std::stringstream ps(part);
        std::string name, lo, hi, count;
        if (!std::getline(ps, name, ':') || !std::getline(ps, lo, ':') ||
            !std::getline(ps, hi, ':') || !std::getline(ps, count, ':'))
            throw DomainError("grid axis must be name:lo:hi:count, got " + part);
        GridAxis ax;
        ax.name = name;
        ax.lo = std::stod(lo);
        ax.hi = std::stod(hi);
        ax.count = std::stoi(count);
        if (ax.count < 1 || ax.lo <= 0 || ax.hi < ax.lo)
            throw DomainError("bad grid axis: " + part);
        spec.axes.push_back(ax);
    }
    if (spec.axes.empty()) throw DomainError("empty grid spec");
    return spec;
}

std::uint64_t GridSpec::total_points() const {
    std::uint64_t n = 1;
    for (const auto& ax : axes) n *= static_cast<std::uint64_t>(ax.count);
    return n;
}

std::vector<double> GridSpec::point(std::uint64_t index) const {
    std::vector<double> out(axes.size());
    for (std::size_t i = axes.size(); i-- > 0;) {
        const auto& ax = axes[i];
        std::uint64_t k = index % static_cast<std::uint64_t>(ax.count);
        index /= static_cast<std::uint64_t>(ax.count);
        double t = ax.count == 1 ? 0.0 : static_cast<double>(k) / (ax.count - 1);
        out[i] = log_scale ? ax.lo * std::pow(ax.hi / ax.lo, t) : ax.lo + t * (ax.hi - ax.lo);
    }
    return out;
}

namespace {

void hopf_point(const ModelDef& m, const HopfFormula& F, const ParameterSet& p,
                const std::vector<std::string>& axis_names, HopfScanReport& rep) {
    SymmetricProfile prof = positive_symmetric_profile(m, p);
    AlgebraicNumber root(prof.sf, prof.iv);

    // evaluate a formula polynomial at the steady state as a univariate
    // polynomial in the algebraic coordinate
    auto at_state = [&](const Polynomial& poly) {
        std::map<std::string, Rational> sub;
        for (const auto& [k, v] : p.values())
            if (poly.context()->index_of(k)) sub[k] = v;
        Polynomial spec = poly.substitute(sub);
        std::vector<UniPoly> args;
        for (std::size_t i = 0; i < prof.multipliers.size(); ++i)
            args.push_back(UniPoly({Rational(0), prof.multipliers[i]}));
        // spec's context is the state variables (params substituted away)
        return eval_at_unipolys(spec, args, prof.sf);
    };

    bool positives_ok = true;
    for (const auto& q : F.positive_num)
        if (root.sign_of(at_state(q)) <= 0) { positives_ok = false; break; }

    HopfScanPoint pt;
    for (const auto& ax : axis_names) pt.params.push_back(p.get(ax));

    if (F.critical_num) {
        UniPoly crit = at_state(*F.critical_num);
        pt.critical_sign = root.sign_of(crit);
        if (pt.critical_sign <= 0) rep.critical_positive_everywhere = false;
        // floating value of the cleared critical polynomial, normalized by
        // its (positive) denominator
        double cn = crit.eval_d(root.to_double());
        double cd = at_state(*F.critical_den).eval_d(root.to_double());
        double val = cn / cd;
        rep.min_critical_value = std::min(rep.min_critical_value, val);
        pt.witness = positives_ok && pt.critical_sign == 0;
    } else {
        pt.critical_sign = 1;  // dimension too low: no Hopf condition can hold
        pt.witness = false;
    }
    if (pt.witness) {
        ++rep.witnesses;
        rep.witness_points.push_back(pt);
    }
}

}  // namespace

HopfScanReport hopf_falsify(const ModelDef& m, const GridSpec& grid, std::uint64_t seed,
                            const ParameterSet& base) {
    HopfFormula F = hopf_formula_build(m);
    HopfScanReport rep;
    rep.model = m.id;
    rep.seed = seed;
    rep.points = grid.total_points();
    rep.min_critical_value = std::numeric_limits<double>::infinity();

    std::vector<std::string> axis_names;
    for (const auto& ax : grid.axes) axis_names.push_back(ax.name);
    for (std::uint64_t idx = 0; idx < rep.points; ++idx) {
        auto vals = grid.point(idx);
        std::map<std::string, Rational> pv = base.values();
        for (std::size_t i = 0; i < grid.axes.size(); ++i)
            pv[grid.axes[i].name] = Rational::from_double(vals[i]);
        hopf_point(m, F, ParameterSet(pv), axis_names, rep);
    }
    return rep;
}

HopfScanReport hopf_falsify_sampled(const ModelDef& m, int samples, double lo, double hi,
                                    std::uint64_t seed, const ParameterSet& base) {
    HopfFormula F = hopf_formula_build(m);
    HopfScanReport rep;
    rep.model = m.id;
    rep.seed = seed;
    rep.points = static_cast<std::uint64_t>(samples);
    rep.min_critical_value = std::numeric_limits<double>::infinity();

    std::vector<std::string> axis_names = m.params;
    std::mt19937_64 eng(seed);
    auto draw = [&] {
        double u = static_cast<double>(eng() >> 11) * 0x1p-53;
        double e = std::log10(lo) + u * (std::log10(hi) - std::log10(lo));
        return Rational::from_double(std::pow(10.0, e));
    };
    for (int k = 0; k < samples; ++k) {
        std::map<std::string, Rational> pv = base.values();
        for (const auto& name : m.params)
            if (!pv.count(name)) pv[name] = draw();
        hopf_point(m, F, ParameterSet(pv), axis_names, rep);
    }
    return rep;
}

}  // namespace steadycert

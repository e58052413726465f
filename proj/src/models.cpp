#include "steadycert/models.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

namespace steadycert {

const Rational& ParameterSet::get(const std::string& k) const {
    auto it = v_.find(k);
    if (it == v_.end()) throw DomainError("missing parameter: " + k);
    return it->second;
}

long ParameterSet::get_int(const std::string& k) const {
    const Rational& r = get(k);
    if (!r.is_integer()) throw DomainError("parameter " + k + " must be an integer");
    return r.num().get_si();
}

ParameterSet ParameterSet::parse(const std::string& spec) {
    std::map<std::string, Rational> vals;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw DomainError("bad parameter entry: " + item);
        std::string key = item.substr(0, eq);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        while (!key.empty() && key.front() == ' ') key.erase(key.begin());
        vals[key] = Rational::parse(item.substr(eq + 1));
    }
    if (vals.empty()) throw DomainError("empty parameter list");
    return ParameterSet(std::move(vals));
}

void ModelDef::validate(const ParameterSet& p) const {
    auto positive = [&](const std::string& k) {
        if (p.get(k).sign() <= 0) throw DomainError("parameter " + k + " must be positive");
    };
    if (id == "rep3d" || id == "fwd6d" || id == "bwd6d") {
        positive("s");
        positive("b");
        positive("g");
    } else if (id == "goodwin") {
        for (int i = 1; i <= 7; ++i) positive("k" + std::to_string(i));
    } else if (id == "elowitz") {
        positive("alpha");
        positive("beta");
        if (p.get("alpha0").sign() < 0) throw DomainError("parameter alpha0 must be nonnegative");
    }
    if (hill_n < 1) throw DomainError("Hill exponent must be >= 1");
}

std::vector<double> ModelDef::param_doubles(const ParameterSet& p) const {
    std::vector<double> out;
    out.reserve(params.size());
    for (const auto& k : params) out.push_back(p.get_d(k));
    return out;
}

namespace {

Polynomial PP(const ContextPtr& ctx, const std::string& s) {
    return Polynomial::parse(ctx, s, TermOrder::degrevlex());
}

ModelDef build_rep3d() {
    ModelDef m;
    m.id = "rep3d";
    m.dim = 3;
    m.params = {"s", "b", "g"};
    m.states = {"x", "y", "z"};
    m.ctx = make_context({"s", "b", "g", "x", "y", "z"});
    m.default_t_end = 40.0;
    auto& c = m.ctx;
    m.rhs = {
        {PP(c, "(s - g*x)*(1 + z) + b"), PP(c, "1 + z")},
        {PP(c, "(s - g*y)*(1 + x) + b"), PP(c, "1 + x")},
        {PP(c, "(s - g*z)*(1 + y) + b"), PP(c, "1 + y")},
    };
    for (const auto& r : m.rhs) m.stationarity.push_back(r.num);
    m.rhs_d = [](const std::vector<double>& prm, const double* x, double* dx) {
        double s = prm[0], b = prm[1], g = prm[2];
        dx[0] = s + b / (1 + x[2]) - g * x[0];
        dx[1] = s + b / (1 + x[0]) - g * x[1];
        dx[2] = s + b / (1 + x[1]) - g * x[2];
    };
    return m;
}

ModelDef build_fwd6d() {
    ModelDef m;
    m.id = "fwd6d";
    m.dim = 6;
    m.params = {"s", "b", "g"};
    m.states = {"x1", "x2", "x3", "x4", "x5", "x6"};
    m.ctx = make_context({"s", "b", "g", "x1", "x2", "x3", "x4", "x5", "x6"});
    m.default_t_end = 60.0;
    auto& c = m.ctx;
    // activators drive the next repressor: rows (1,2), (3,4), (5,6) share a term
    m.rhs = {
        {PP(c, "(s - g*x1)*(1 + x2 + x5) + b*x2"), PP(c, "1 + x2 + x5")},
        {PP(c, "(s - g*x2)*(1 + x2 + x5) + b*x2"), PP(c, "1 + x2 + x5")},
        {PP(c, "(s - g*x3)*(1 + x4 + x1) + b*x4"), PP(c, "1 + x4 + x1")},
        {PP(c, "(s - g*x4)*(1 + x4 + x1) + b*x4"), PP(c, "1 + x4 + x1")},
        {PP(c, "(s - g*x5)*(1 + x6 + x3) + b*x6"), PP(c, "1 + x6 + x3")},
        {PP(c, "(s - g*x6)*(1 + x6 + x3) + b*x6"), PP(c, "1 + x6 + x3")},
    };
    for (const auto& r : m.rhs) m.stationarity.push_back(r.num);
    m.symmetry_pairs = {{0, 1}, {2, 3}, {4, 5}};
    m.reduced_ctx = make_context({"s", "b", "g", "x1", "x3", "x5"});
    auto& rc = m.reduced_ctx;
    m.stationarity_reduced = {
        PP(rc, "s + b*x1 - g*x1 + s*x1 - g*x1^2 + s*x5 - g*x1*x5"),
        PP(rc, "s + s*x1 + b*x3 - g*x3 + s*x3 - g*x1*x3 - g*x3^2"),
        PP(rc, "s + s*x3 + b*x5 - g*x5 + s*x5 - g*x3*x5 - g*x5^2"),
    };
    m.rhs_d = [](const std::vector<double>& prm, const double* x, double* dx) {
        double s = prm[0], b = prm[1], g = prm[2];
        double t1 = b * x[1] / (1 + x[1] + x[4]);
        double t2 = b * x[3] / (1 + x[3] + x[0]);
        double t3 = b * x[5] / (1 + x[5] + x[2]);
        dx[0] = s - g * x[0] + t1;
        dx[1] = s - g * x[1] + t1;
        dx[2] = s - g * x[2] + t2;
        dx[3] = s - g * x[3] + t2;
        dx[4] = s - g * x[4] + t3;
        dx[5] = s - g * x[5] + t3;
    };
    return m;
}

ModelDef build_bwd6d() {
    ModelDef m;
    m.id = "bwd6d";
    m.dim = 6;
    m.params = {"s", "b", "g"};
    m.states = {"x1", "x2", "x3", "x4", "x5", "x6"};
    m.ctx = make_context({"s", "b", "g", "x1", "x2", "x3", "x4", "x5", "x6"});
    m.default_t_end = 60.0;
    auto& c = m.ctx;
    // activators drive the previous repressor
    m.rhs = {
        {PP(c, "(s - g*x1)*(1 + x4 + x5) + b*x4"), PP(c, "1 + x4 + x5")},
        {PP(c, "(s - g*x2)*(1 + x4 + x5) + b*x4"), PP(c, "1 + x4 + x5")},
        {PP(c, "(s - g*x3)*(1 + x6 + x1) + b*x6"), PP(c, "1 + x6 + x1")},
        {PP(c, "(s - g*x4)*(1 + x6 + x1) + b*x6"), PP(c, "1 + x6 + x1")},
        {PP(c, "(s - g*x5)*(1 + x2 + x3) + b*x2"), PP(c, "1 + x2 + x3")},
        {PP(c, "(s - g*x6)*(1 + x2 + x3) + b*x2"), PP(c, "1 + x2 + x3")},
    };
    for (const auto& r : m.rhs) m.stationarity.push_back(r.num);
    m.symmetry_pairs = {{0, 1}, {2, 3}, {4, 5}};
    m.reduced_ctx = make_context({"s", "b", "g", "x1", "x3", "x5"});
    auto& rc = m.reduced_ctx;
    m.stationarity_reduced = {
        PP(rc, "s - g*x1 + b*x3 + s*x3 - g*x1*x3 + s*x5 - g*x1*x5"),
        PP(rc, "s + s*x1 - g*x3 - g*x1*x3 + b*x5 + s*x5 - g*x3*x5"),
        PP(rc, "s + b*x1 + s*x1 + s*x3 - g*x5 - g*x1*x5 - g*x3*x5"),
    };
    m.rhs_d = [](const std::vector<double>& prm, const double* x, double* dx) {
        double s = prm[0], b = prm[1], g = prm[2];
        double tA = b * x[3] / (1 + x[3] + x[4]);
        double tB = b * x[5] / (1 + x[0] + x[5]);
        double tC = b * x[1] / (1 + x[1] + x[2]);
        dx[0] = s - g * x[0] + tA;
        dx[1] = s - g * x[1] + tA;
        dx[2] = s - g * x[2] + tB;
        dx[3] = s - g * x[3] + tB;
        dx[4] = s - g * x[4] + tC;
        dx[5] = s - g * x[5] + tC;
    };
    return m;
}

ModelDef build_goodwin(int n) {
    ModelDef m;
    m.id = "goodwin";
    m.dim = 3;
    m.hill_n = n;
    m.params = {"k1", "k2", "k3", "k4", "k5", "k6", "k7"};
    m.states = {"x", "y", "z"};
    m.ctx = make_context({"k1", "k2", "k3", "k4", "k5", "k6", "k7", "x", "y", "z"});
    m.default_t_end = 100.0;
    auto& c = m.ctx;
    std::string zn = "z^" + std::to_string(n);
    m.rhs = {
        {PP(c, "k1 - k3*x*(k2 + " + zn + ")"), PP(c, "k2 + " + zn)},
        {PP(c, "k4*x - k5*y"), PP(c, "1")},
        {PP(c, "k6*y - k7*z"), PP(c, "1")},
    };
    for (const auto& r : m.rhs) m.stationarity.push_back(r.num);
    m.rhs_d = [n](const std::vector<double>& prm, const double* x, double* dx) {
        double k1 = prm[0], k2 = prm[1], k3 = prm[2], k4 = prm[3], k5 = prm[4], k6 = prm[5], k7 = prm[6];
        dx[0] = k1 / (k2 + std::pow(x[2], n)) - k3 * x[0];
        dx[1] = k4 * x[0] - k5 * x[1];
        dx[2] = k6 * x[1] - k7 * x[2];
    };
    return m;
}

ModelDef build_elowitz(int n) {
    ModelDef m;
    m.id = "elowitz";
    m.dim = 6;
    m.hill_n = n;
    m.params = {"alpha0", "alpha", "beta"};
    m.states = {"x1", "y1", "x2", "y2", "x3", "y3"};
    m.ctx = make_context({"alpha0", "alpha", "beta", "x1", "y1", "x2", "y2", "x3", "y3"});
    m.default_t_end = 100.0;
    auto& c = m.ctx;
    // y_{i-1} represses x_i, indices mod 3
    const char* prev[3] = {"y3", "y1", "y2"};
    for (int i = 0; i < 3; ++i) {
        std::string yn = std::string(prev[i]) + "^" + std::to_string(n);
        std::string xi = "x" + std::to_string(i + 1);
        std::string yi = "y" + std::to_string(i + 1);
        m.rhs.push_back({PP(c, "(alpha0 - " + xi + ")*(1 + " + yn + ") + alpha"), PP(c, "1 + " + yn)});
        m.rhs.push_back({PP(c, "beta*" + xi + " - beta*" + yi), PP(c, "1")});
    }
    for (const auto& r : m.rhs) m.stationarity.push_back(r.num);
    m.rhs_d = [n](const std::vector<double>& prm, const double* x, double* dx) {
        double a0 = prm[0], a = prm[1], beta = prm[2];
        // states: x1 y1 x2 y2 x3 y3; y of the previous gene gates each x
        int prev_y[3] = {5, 1, 3};
        for (int i = 0; i < 3; ++i) {
            double rep = 1 + std::pow(x[prev_y[i]], n);
            dx[2 * i] = a0 + a / rep - x[2 * i];
            dx[2 * i + 1] = beta * (x[2 * i] - x[2 * i + 1]);
        }
    };
    return m;
}

std::mutex registry_mutex;
std::map<std::string, ModelDef> registry;

}  // namespace

const ModelDef& get_model(const std::string& id, int hill_n) {
    std::scoped_lock lock(registry_mutex);
    bool hill = (id == "goodwin" || id == "elowitz");
    std::string key = hill ? id + "#" + std::to_string(hill_n) : id;
    auto it = registry.find(key);
    if (it != registry.end()) return it->second;
    ModelDef m;
    if (id == "rep3d") m = build_rep3d();
    else if (id == "fwd6d") m = build_fwd6d();
    else if (id == "bwd6d") m = build_bwd6d();
    else if (id == "goodwin") m = build_goodwin(hill_n);
    else if (id == "elowitz") m = build_elowitz(hill_n);
    else throw DomainError("unknown model: " + id);
    return registry.emplace(key, std::move(m)).first->second;
}

std::vector<std::string> model_ids() { return {"rep3d", "fwd6d", "bwd6d", "goodwin", "elowitz"}; }

namespace {

template <typename T>
std::vector<T> full_point(const ModelDef& m, const ParameterSet& p, const std::vector<T>& state) {
    if (static_cast<int>(state.size()) != m.dim) throw ContextError("state dimension mismatch");
    std::vector<T> pt;
    pt.reserve(m.params.size() + state.size());
    for (const auto& k : m.params) {
        const Rational& r = p.get(k);
        if constexpr (std::is_same_v<T, double>) pt.push_back(r.to_double());
        else pt.push_back(T(r));
    }
    for (const auto& s : state) pt.push_back(s);
    return pt;
}

}  // namespace

std::vector<Rational> rhs_eval(const ModelDef& m, const ParameterSet& p,
                               const std::vector<Rational>& state) {
    m.validate(p);
    auto pt = full_point(m, p, state);
    std::vector<Rational> out;
    out.reserve(m.rhs.size());
    for (const auto& r : m.rhs) {
        Rational den = r.den.evaluate<Rational>(pt);
        if (den.sign() <= 0) throw DomainError("denominator not positive at evaluation point");
        out.push_back(r.num.evaluate<Rational>(pt) / den);
    }
    return out;
}

std::vector<double> rhs_eval_d(const ModelDef& m, const ParameterSet& p,
                               const std::vector<double>& state) {
    std::vector<double> out(static_cast<std::size_t>(m.dim));
    m.rhs_d(m.param_doubles(p), state.data(), out.data());
    return out;
}

const std::vector<Polynomial>& stationarity_numerators(const ModelDef& m) { return m.stationarity; }

std::vector<std::vector<RatExpr>> jacobian_symbolic(const ModelDef& m) {
    std::size_t nparams = m.params.size();
    std::vector<std::vector<RatExpr>> J(m.rhs.size());
    for (std::size_t i = 0; i < m.rhs.size(); ++i) {
        for (int j = 0; j < m.dim; ++j) {
            std::size_t var = nparams + static_cast<std::size_t>(j);
            // d(n/d) = (n' d - n d') / d^2
            Polynomial np = m.rhs[i].num.derivative(var);
            Polynomial dp = m.rhs[i].den.derivative(var);
            J[i].push_back({np * m.rhs[i].den - m.rhs[i].num * dp, m.rhs[i].den * m.rhs[i].den});
        }
    }
    return J;
}

namespace {

template <typename T>
std::vector<std::vector<T>> jacobian_eval(const ModelDef& m, const ParameterSet& p,
                                          const std::vector<T>& state) {
    auto Jsym = jacobian_symbolic(m);
    auto pt = full_point(m, p, state);
    std::vector<std::vector<T>> J(Jsym.size());
    for (std::size_t i = 0; i < Jsym.size(); ++i)
        for (auto& e : Jsym[i]) {
            T den = e.den.evaluate<T>(pt);
            J[i].push_back(e.num.evaluate<T>(pt) / den);
        }
    return J;
}

}  // namespace

std::vector<std::vector<Rational>> jacobian(const ModelDef& m, const ParameterSet& p,
                                            const std::vector<Rational>& state) {
    return jacobian_eval<Rational>(m, p, state);
}

std::vector<std::vector<double>> jacobian_d(const ModelDef& m, const ParameterSet& p,
                                            const std::vector<double>& state) {
    return jacobian_eval<double>(m, p, state);
}

std::vector<std::vector<RatInterval>> jacobian_interval(const ModelDef& m, const ParameterSet& p,
                                                        const std::vector<RatInterval>& state) {
    return jacobian_eval<RatInterval>(m, p, state);
}

template <typename T>
T det_cofactor(const std::vector<std::vector<T>>& a) {
    std::size_t n = a.size();
    std::vector<std::size_t> cols(n);
    for (std::size_t i = 0; i < n; ++i) cols[i] = i;

    struct Rec {
        const std::vector<std::vector<T>>& m;
        T run(std::size_t row, std::vector<std::size_t>& cols) {
            if (cols.size() == 1) return m[row][cols[0]];
            T acc = T(0);
            for (std::size_t k = 0; k < cols.size(); ++k) {
                std::size_t c = cols[k];
                std::vector<std::size_t> rest;
                rest.reserve(cols.size() - 1);
                for (std::size_t t = 0; t < cols.size(); ++t)
                    if (t != k) rest.push_back(cols[t]);
                T sub = run(row + 1, rest);
                T term = m[row][c] * sub;
                acc = (k % 2 == 0) ? acc + term : acc - term;
            }
            return acc;
        }
    } rec{a};
    return rec.run(0, cols);
}

template Rational det_cofactor<Rational>(const std::vector<std::vector<Rational>>&);
template double det_cofactor<double>(const std::vector<std::vector<double>>&);
template RatInterval det_cofactor<RatInterval>(const std::vector<std::vector<RatInterval>>&);

namespace {

// char poly via sums of principal minors: det(tI - J) = sum_k (-1)^k S_k t^(n-k)
template <typename T>
std::vector<T> char_poly_generic(const std::vector<std::vector<T>>& J) {
    std::size_t n = J.size();
    std::vector<T> coeff(n + 1, T(0));  // ascending
    coeff[n] = T(1);
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i)) idx.push_back(i);
        std::size_t k = idx.size();
        std::vector<std::vector<T>> sub(k, std::vector<T>(k, T(0)));
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) sub[r][c] = J[idx[r]][idx[c]];
        T minor = det_cofactor(sub);
        std::size_t pos = n - k;
        if (k % 2) coeff[pos] = coeff[pos] - minor;
        else coeff[pos] = coeff[pos] + minor;
    }
    return coeff;
}

}  // namespace

UniPoly char_poly_matrix(const std::vector<std::vector<Rational>>& J) {
    return UniPoly(char_poly_generic<Rational>(J));
}

std::vector<RatInterval> char_poly_matrix_interval(const std::vector<std::vector<RatInterval>>& J) {
    return char_poly_generic<RatInterval>(J);
}

UniPoly char_poly(const ModelDef& m, const ParameterSet& p, const std::vector<Rational>& state) {
    return char_poly_matrix(jacobian(m, p, state));
}

std::vector<RatInterval> char_poly_interval(const ModelDef& m, const ParameterSet& p,
                                            const std::vector<RatInterval>& state) {
    return char_poly_matrix_interval(jacobian_interval(m, p, state));
}

UniPoly symmetric_state_polynomial(const ModelDef& m, const ParameterSet& p) {
    m.validate(p);
    if (m.id == "rep3d") {
        Rational s = p.get("s"), b = p.get("b"), g = p.get("g");
        return UniPoly({-(s + b), g - s, g});
    }
    if (m.id == "fwd6d" || m.id == "bwd6d") {
        Rational s = p.get("s"), b = p.get("b"), g = p.get("g");
        return UniPoly({-s, g - Rational(2) * s - b, Rational(2) * g});
    }
    if (m.id == "elowitz") {
        // v = alpha0 + alpha/(1+v^n), cleared
        Rational a0 = p.get("alpha0"), a = p.get("alpha");
        UniPoly v = UniPoly::x();
        UniPoly hill = UniPoly::constant(1) + v.pow(static_cast<unsigned>(m.hill_n));
        return v * hill - hill.scaled(a0) - UniPoly::constant(a);
    }
    if (m.id == "goodwin") {
        // z-coordinate equation: k3 k5 k7 z^(n+1) + k2 k3 k5 k7 z - k1 k4 k6 = 0
        Rational k1 = p.get("k1"), k2 = p.get("k2"), k3 = p.get("k3"), k4 = p.get("k4"),
                 k5 = p.get("k5"), k6 = p.get("k6"), k7 = p.get("k7");
        UniPoly z = UniPoly::x();
        return z.pow(static_cast<unsigned>(m.hill_n + 1)).scaled(k3 * k5 * k7) +
               z.scaled(k2 * k3 * k5 * k7) - UniPoly::constant(k1 * k4 * k6);
    }
    throw DomainError("no scalar fixed-point equation for model " + m.id);
}

namespace {

// sign of the single root isolated by iv
int root_sign(const UniPoly& sf, IsolatingInterval iv) {
    if (iv.is_exact()) return iv.lo.sign();
    for (;;) {
        if (iv.lo.sign() >= 0) return iv.hi.sign() == 0 ? 0 : 1;
        if (iv.hi.sign() <= 0) return -1;
        if (sf.eval<Rational>(Rational(0)).is_zero()) return 0;  // 0 is the isolated root
        iv = refine(iv, sf, iv.width() / Rational(2));
    }
}

AlgebraicValue make_value(const UniPoly& sf, const IsolatingInterval& iv, double approx) {
    AlgebraicValue v;
    v.defining = sf;
    v.iv = iv;
    if (iv.is_exact()) v.exact = iv.lo;
    v.approx = approx;
    return v;
}

// roots of f(y/c) cleared: maps roots r of f to c*r
UniPoly var_scale(const UniPoly& f, const Rational& c) {
    std::vector<Rational> out(f.coeffs().size());
    int d = f.degree();
    for (int i = 0; i <= d; ++i)
        out[static_cast<std::size_t>(i)] =
            f.coeff(static_cast<std::size_t>(i)) * c.pow(d - i);
    return UniPoly(std::move(out));
}

}  // namespace

std::vector<SteadyState> closed_form_steady_states(const ModelDef& m, const ParameterSet& p) {
    m.validate(p);
    UniPoly q = symmetric_state_polynomial(m, p);
    UniPoly sf = squarefree_part(q).monic();
    auto roots = isolate_roots(sf);
    std::vector<SteadyState> out;

    if (m.id == "rep3d" || m.id == "fwd6d" || m.id == "bwd6d") {
        if (roots.size() != 2) throw DomainError("expected two symmetric steady states");
        double s = p.get_d("s"), b = p.get_d("b"), g = p.get_d("g");
        double pos_cf, neg_cf;
        if (m.id == "rep3d") {
            double u = std::sqrt(4 * b * g + (g + s) * (g + s));
            pos_cf = (s + u - g) / (2 * g);
            neg_cf = (s - g - u) / (2 * g);
        } else {
            double R = std::sqrt((b - g + 2 * s) * (b - g + 2 * s) + 8 * g * s);
            pos_cf = (R + b - g + 2 * s) / (4 * g);
            neg_cf = (b - g + 2 * s - R) / (4 * g);
        }
        // isolate_roots returns increasing order: roots[0] negative, roots[1] positive
        int s0 = root_sign(sf, roots[0]);
        int s1 = root_sign(sf, roots[1]);
        if (!(s0 < 0 && s1 > 0)) throw DomainError("symmetric roots do not split by sign");
        roots[0] = refine(roots[0], sf, Rational(1, 1000000000000L));
        roots[1] = refine(roots[1], sf, Rational(1, 1000000000000L));
        SteadyState pos{m.id, {}, true}, neg{m.id, {}, false};
        for (int i = 0; i < m.dim; ++i) {
            pos.coords.push_back(make_value(sf, roots[1], pos_cf));
            neg.coords.push_back(make_value(sf, roots[0], neg_cf));
        }
        out.push_back(std::move(pos));
        out.push_back(std::move(neg));
        return out;
    }

    // goodwin / elowitz: unique positive fixed point
    std::vector<IsolatingInterval> positive;
    for (const auto& iv : roots)
        if (root_sign(sf, iv) > 0) positive.push_back(iv);
    if (positive.size() != 1) throw DomainError("expected a unique positive fixed point");
    IsolatingInterval iv = refine(positive[0], sf, Rational(1, 1000000000000L));
    double v = iv.mid_d();

    SteadyState st{m.id, {}, true};
    if (m.id == "elowitz") {
        for (int i = 0; i < m.dim; ++i) st.coords.push_back(make_value(sf, iv, v));
    } else {
        // goodwin: z from the scalar equation, y = (k7/k6) z, x = (k5/k4) y
        Rational cy = p.get("k7") / p.get("k6");
        Rational cx = cy * p.get("k5") / p.get("k4");
        UniPoly sfy = var_scale(sf, cy).monic();
        UniPoly sfx = var_scale(sf, cx).monic();
        IsolatingInterval ivy{iv.lo * cy, iv.hi * cy};
        IsolatingInterval ivx{iv.lo * cx, iv.hi * cx};
        st.coords.push_back(make_value(sfx, ivx, v * cx.to_double()));
        st.coords.push_back(make_value(sfy, ivy, v * cy.to_double()));
        st.coords.push_back(make_value(sf, iv, v));
    }
    out.push_back(std::move(st));
    return out;
}

SymmetricProfile positive_symmetric_profile(const ModelDef& m, const ParameterSet& p) {
    m.validate(p);
    UniPoly sf = squarefree_part(symmetric_state_polynomial(m, p)).monic();
    std::vector<IsolatingInterval> pos;
    for (const auto& iv : isolate_roots(sf))
        if (root_sign(sf, iv) > 0) pos.push_back(iv);
    if (pos.size() != 1) throw DomainError("expected a unique positive symmetric root");
    SymmetricProfile prof;
    prof.sf = sf;
    prof.iv = pos[0];
    prof.multipliers.assign(static_cast<std::size_t>(m.dim), Rational(1));
    if (m.id == "goodwin") {
        Rational cy = p.get("k7") / p.get("k6");
        Rational cx = cy * p.get("k5") / p.get("k4");
        prof.multipliers = {cx, cy, Rational(1)};
    }
    return prof;
}

std::vector<double> positive_steady_state_d(const ModelDef& m, const ParameterSet& p) {
    auto states = closed_form_steady_states(m, p);
    for (const auto& st : states)
        if (st.positive) {
            std::vector<double> x;
            for (const auto& c : st.coords) x.push_back(c.approx);
            return x;
        }
    throw DomainError("no positive steady state");
}

}  // namespace steadycert

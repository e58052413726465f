#include "steadycert/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "steadycert/certify.hpp"
#include "steadycert/json_io.hpp"
#include "steadycert/simulate.hpp"
#include "steadycert/version.hpp"

namespace steadycert {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitExpectation = 2;

struct Common {
    std::string model;
    std::string params_inline;
    std::string params_file;
    std::string out;
    std::string data_dir;
    std::uint64_t seed = 0;
    int jobs = 0;
    int hill_n = 1;
    std::uint64_t budget_pairs = 500000;
    double budget_secs = 300.0;

    Budget budget() const { return {budget_pairs, budget_secs}; }
};

void add_common(CLI::App* cmd, Common& c, bool with_model = true) {
    if (with_model) cmd->add_option("--model", c.model, "model id")->required();
    cmd->add_option("--params", c.params_inline, "inline parameters, e.g. s=0.3,b=4,g=0.6");
    cmd->add_option("--params-file", c.params_file, "JSON file {\"model\":...,\"params\":{...}}")
        ->excludes("--params");
    cmd->add_option("--out", c.out, "output file (stdout when omitted)");
    cmd->add_option("--seed", c.seed, "64-bit seed, recorded in the report");
    cmd->add_option("--jobs", c.jobs, "worker threads (0 = auto where parallel)");
    cmd->add_option("--n", c.hill_n, "Hill exponent for goodwin/elowitz");
    cmd->add_option("--budget-pairs", c.budget_pairs, "Groebner pair cap");
    cmd->add_option("--budget-secs", c.budget_secs, "wall-clock budget in seconds");
    cmd->add_option("--data-dir", c.data_dir, "directory with the shipped ideal data");
}

ParameterSet load_params(const Common& c) {
    if (!c.params_file.empty()) {
        Json j = read_json_file(c.params_file);
        std::map<std::string, Rational> vals;
        for (auto& [k, v] : j["params"].items())
            vals[k] = v.is_string() ? Rational::parse(v.get<std::string>())
                                    : Rational::from_double(v.get<double>());
        return ParameterSet(vals);
    }
    if (!c.params_inline.empty()) return ParameterSet::parse(c.params_inline);
    throw DomainError("parameters required (--params or --params-file)");
}

int hill_from(const Common& c, const ParameterSet* p) {
    if (p && p->has("n")) return static_cast<int>(p->get_int("n"));
    return c.hill_n;
}

Json envelope(const std::string& command, const Common& c) {
    Json j;
    j["schema"] = 1;
    j["tool"] = "steadycert";
    j["version"] = kVersion;
    j["command"] = command;
    j["seed"] = c.seed;
    j["budgets"] = Json{{"pairs", c.budget_pairs}, {"wall_secs", c.budget_secs}};
    return j;
}

void emit(const Common& c, const Json& j) {
    if (c.out.empty()) {
        std::cout << j.dump(1) << "\n";
    } else {
        write_json_file(c.out, j);
    }
}

void emit_text(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(c.out);
        if (!f) throw DomainError("cannot write " + c.out);
        f << text;
    }
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json params_json(const ParameterSet& p) {
    Json j;
    for (const auto& [k, v] : p.values()) j[k] = v.str();
    return j;
}

int auto_jobs(const Common& c) {
    if (c.jobs > 0) return c.jobs;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 4;
}

// ---------------------------------------------------------------------- cmds

int cmd_steady_states(const Common& c) {
    ParameterSet p = load_params(c);
    const ModelDef& m = get_model(c.model, hill_from(c, &p));
    auto states = closed_form_steady_states(m, p);
    Json j = envelope("steady-states", c);
    j["input"] = Json{{"model", m.id}, {"params", params_json(p)}};
    Json out = Json::array();
    for (const auto& st : states) {
        Json js;
        js["positive"] = st.positive;
        Json coords = Json::array();
        for (const auto& cv : st.coords) {
            Json cj;
            cj["value"] = cv.approx;
            cj["interval"] = Json::array({cv.iv.lo.str(), cv.iv.hi.str()});
            if (cv.exact) cj["exact"] = cv.exact->str();
            cj["defining"] = poly_to_json(to_polynomial(cv.defining, make_context({"t"})));
            cj["defining_str"] = cv.defining.str("t");
            coords.push_back(std::move(cj));
        }
        js["coordinates"] = std::move(coords);
        out.push_back(std::move(js));
    }
    j["states"] = std::move(out);
    emit(c, j);
    return kExitOk;
}

int cmd_stability(const Common& c) {
    ParameterSet p = load_params(c);
    const ModelDef& m = get_model(c.model, hill_from(c, &p));
    StabilityReport rep = classify(m, p);
    Json j = envelope("stability", c);
    j["input"] = Json{{"model", m.id}, {"params", params_json(p)}};
    j["steady_state"] = rep.steady_state;
    j["char_coeffs"] = rep.char_coeffs;
    if (!rep.char_coeffs_exact.empty()) j["char_coeffs_exact"] = rep.char_coeffs_exact;
    j["hurwitz"] = rep.hurwitz;
    j["hurwitz_signs"] = rep.hurwitz_signs;
    j["a_n"] = rep.a_n;
    j["a_n_sign"] = rep.a_n_sign;
    Json evs = Json::array();
    for (auto e : rep.eigenvalues) evs.push_back(Json::array({e.real(), e.imag()}));
    j["eigenvalues"] = std::move(evs);
    Json evc = Json::array();
    for (auto e : rep.eigenvalues_closed) evc.push_back(Json::array({e.real(), e.imag()}));
    j["eigenvalues_closed_form"] = std::move(evc);
    j["verdict"] = verdict_name(rep.verdict);
    if (rep.complex_pair) {
        j["complex_pair"] = Json{{"abs_re", rep.complex_pair->abs_re},
                                 {"abs_im", rep.complex_pair->abs_im},
                                 {"ratio_re_over_im", rep.complex_pair->ratio},
                                 {"abs_re_lt_abs_im", rep.abs_re_lt_abs_im}};
    }
    emit(c, j);
    bool core_model = m.id == "rep3d" || m.id == "fwd6d" || m.id == "bwd6d";
    if (core_model && rep.verdict != Verdict::AsymptoticallyStable) return kExitExpectation;
    return kExitOk;
}

int cmd_hopf_scan(const Common& c, const std::string& grid_text, bool log_scale, int samples,
                  const std::string& range) {
    const ModelDef& m = get_model(c.model, c.hill_n);
    ParameterSet base;
    if (!c.params_inline.empty()) base = ParameterSet::parse(c.params_inline);
    HopfScanReport rep;
    if (!grid_text.empty()) {
        rep = hopf_falsify(m, GridSpec::parse(grid_text, log_scale), c.seed, base);
    } else {
        if (samples <= 0) throw DomainError("hopf-scan needs --grid or --samples");
        double lo = 1e-2, hi = 1e2;
        if (!range.empty()) {
            auto colon = range.find(':');
            if (colon == std::string::npos) throw DomainError("range must be lo:hi");
            lo = std::stod(range.substr(0, colon));
            hi = std::stod(range.substr(colon + 1));
        }
        rep = hopf_falsify_sampled(m, samples, lo, hi, c.seed, base);
    }
    Json j = envelope("hopf-scan", c);
    j["input"] = Json{{"model", m.id}, {"grid", grid_text}, {"log", log_scale},
                      {"samples", samples}, {"range", range}};
    j["points"] = rep.points;
    j["witnesses"] = rep.witnesses;
    j["critical_positive_everywhere"] = rep.critical_positive_everywhere;
    j["min_critical_value"] = rep.min_critical_value;
    Json ws = Json::array();
    for (const auto& w : rep.witness_points) {
        Json wj;
        Json pv = Json::array();
        for (const auto& r : w.params) pv.push_back(r.str());
        wj["params"] = std::move(pv);
        wj["critical_sign"] = w.critical_sign;
        ws.push_back(std::move(wj));
    }
    j["witness_list"] = std::move(ws);
    emit(c, j);
    return rep.witnesses == 0 ? kExitOk : kExitExpectation;
}

int cmd_certify(const Common& c, int samples, const std::string& range, int crosscheck_every) {
    double lo = 1e-3, hi = 1e3;
    if (!range.empty()) {
        auto colon = range.find(':');
        if (colon == std::string::npos) throw DomainError("range must be lo:hi");
        lo = std::stod(range.substr(0, colon));
        hi = std::stod(range.substr(colon + 1));
    }
    CertificationRun run = run_certification(c.model, samples, lo, hi, c.seed, auto_jobs(c),
                                             crosscheck_every, c.budget(), c.data_dir,
                                             /*keep_all=*/true);
    Json j = envelope("certify", c);
    j["input"] = Json{{"model", c.model}, {"samples", samples}, {"range", Json::array({lo, hi})},
                      {"crosscheck_every", crosscheck_every}};
    j["errors"] = run.errors;
    j["expectation_failures"] = run.expectation_failures;
    j["unique_positive"] = run.all_unique_positive;
    j["matches_closed_form"] = run.all_match_closed_form;
    j["symmetric"] = run.all_symmetric;
    j["cubic_branch_always_empty"] = run.j1_always_empty;
    j["crosschecks"] = run.crosschecks;
    j["crosscheck_failures"] = run.crosscheck_failures;
    Json fails = Json::array();
    for (const auto& f : run.failures) {
        Json fj;
        fj["params"] = params_json(f.params);
        fj["error"] = f.error;
        fj["positive_solutions"] = f.positive_solutions;
        fails.push_back(std::move(fj));
    }
    j["failures"] = std::move(fails);
    Json samples_j = Json::array();
    for (const auto& r : run.results) {
        Json sj;
        sj["params"] = params_json(r.params);
        sj["positive_solutions"] = r.positive_solutions;
        sj["interval"] = Json::array({r.positive_iv.lo.str(), r.positive_iv.hi.str()});
        sj["matches_closed_form"] = r.matches_closed_form;
        if (!r.error.empty()) sj["error"] = r.error;
        samples_j.push_back(std::move(sj));
    }
    j["samples_detail"] = std::move(samples_j);
    emit(c, j);
    bool ok = run.errors == 0 && run.expectation_failures == 0;
    return ok ? kExitOk : kExitExpectation;
}

int cmd_verify_decomposition(const Common& c, const std::string& which, int samples) {
    DecompositionReport rep =
        verify_decompositions(decomposition_check_from_string(which), c.seed, samples, c.budget(),
                              c.data_dir);
    Json j = envelope("verify-decomposition", c);
    j["input"] = Json{{"which", which}, {"samples", samples}};
    Json cons = Json::array();
    for (const auto& cr : rep.containments) {
        Json cj;
        cj["name"] = cr.name;
        cj["holds"] = cr.holds;
        cj["symbolic_proved"] = cr.symbolic_proved;
        cj["specializations"] = cr.specializations;
        cj["specialization_failures"] = cr.specialization_failures;
        cons.push_back(std::move(cj));
    }
    j["containments"] = std::move(cons);
    j["coverage_points"] = rep.coverage_points;
    j["coverage_failures"] = rep.coverage_failures;
    j["quotient_specializations"] = rep.quotient_specializations;
    j["quotient_unit_count"] = rep.quotient_unit_count;
    j["component_unsat_count"] = rep.component_unsat_count;
    j["ok"] = rep.ok;
    emit(c, j);
    return rep.ok ? kExitOk : kExitExpectation;
}

int cmd_simulate(const Common& c, const std::string& init, double t_end, double rel_tol,
                 double abs_tol) {
    ParameterSet p = load_params(c);
    const ModelDef& m = get_model(c.model, hill_from(c, &p));
    std::vector<double> x0;
    {
        std::stringstream ss(init);
        std::string item;
        while (std::getline(ss, item, ',')) x0.push_back(std::stod(item));
    }
    if (static_cast<int>(x0.size()) != m.dim)
        throw DomainError("--init needs " + std::to_string(m.dim) + " comma-separated values");
    if (t_end <= 0) t_end = m.default_t_end;
    IntegrateOptions opts;
    opts.rel_tol = rel_tol;
    opts.abs_tol = abs_tol;
    Trajectory tr = integrate(m, p, x0, t_end, opts);

    std::ostringstream csv;
    csv << "t";
    for (int i = 1; i <= m.dim; ++i) csv << ",x" << i;
    csv << "\n";
    for (std::size_t k = 0; k < tr.t.size(); ++k) {
        csv << fmt_double(tr.t[k]);
        for (double v : tr.x[k]) csv << "," << fmt_double(v);
        csv << "\n";
    }
    emit_text(c, csv.str());
    return kExitOk;
}

int cmd_sweep(const Common& c, const std::string& grid_text, bool log_scale, bool with_sim) {
    const ModelDef& m = get_model(c.model, c.hill_n);
    GridSpec grid = GridSpec::parse(grid_text, log_scale);
    ParameterSet base;
    if (!c.params_inline.empty()) base = ParameterSet::parse(c.params_inline);
    SweepResult res = sweep(m, grid, base, with_sim, c.seed, auto_jobs(c));

    std::ostringstream csv;
    for (const auto& n : res.axes) csv << n << ",";
    csv << "verdict,max_re,crossings,overshoot,converged,error\n";
    for (const auto& row : res.rows) {
        for (double v : row.params) csv << fmt_double(v) << ",";
        csv << (row.error.empty() ? (row.stable ? "stable" : "unstable") : "error") << ","
            << fmt_double(row.max_re) << "," << row.crossings << "," << fmt_double(row.overshoot)
            << "," << (row.converged ? 1 : 0) << "," << row.error << "\n";
    }
    emit_text(c, csv.str());
    return kExitOk;
}

int cmd_groebner(const Common& c, const std::string& input, const std::string& order, bool reduce) {
    Json in = read_json_file(input);
    TermOrder ord = TermOrder::parse(order);
    Ideal ideal = ideal_from_json(in, ord);
    GroebnerBasis gb = buchberger(ideal, ord, c.budget());
    if (reduce) gb = reduce_basis(gb);
    Json j = envelope("groebner", c);
    j["input"] = Json{{"file", input}, {"order", order}, {"reduce", reduce}};
    j["vars"] = ideal.context->names();
    j["reduced"] = gb.reduced;
    Json basis = Json::array();
    for (const auto& g : gb.basis) basis.push_back(poly_to_json(g));
    j["basis"] = std::move(basis);
    emit(c, j);
    return kExitOk;
}

}  // namespace

int run_cli(std::vector<std::string> args) {
    CLI::App app{"steadycert: steady-state, stability and Hopf certification for repressilator models"};
    app.require_subcommand(1);

    // wall-clock budget default from the environment
    double env_budget = 300.0;
    if (const char* e = std::getenv("STEADYCERT_BUDGET_SECS")) env_budget = std::atof(e);

    Common c_ss, c_st, c_hs, c_ce, c_vd, c_si, c_sw, c_gb;
    for (Common* c : {&c_ss, &c_st, &c_hs, &c_ce, &c_vd, &c_si, &c_sw, &c_gb})
        c->budget_secs = env_budget;

    auto* ss = app.add_subcommand("steady-states", "closed-form steady states");
    add_common(ss, c_ss);

    auto* st = app.add_subcommand("stability", "stability report at the positive steady state");
    add_common(st, c_st);

    auto* hs = app.add_subcommand("hopf-scan", "Hopf-candidate falsification over a parameter grid");
    std::string hs_grid, hs_range;
    bool hs_log = false;
    int hs_samples = 0;
    add_common(hs, c_hs);
    hs->add_option("--grid", hs_grid, "axes as name:lo:hi:count,...");
    hs->add_flag("--log", hs_log, "log-spaced grid");
    hs->add_option("--samples", hs_samples, "random log-uniform samples instead of a grid");
    hs->add_option("--range", hs_range, "sampling range lo:hi (with --samples)");

    auto* ce = app.add_subcommand("certify", "seeded steady-state certification");
    int ce_samples = 100, ce_cross = 0;
    std::string ce_range = "1e-3:1e3";
    add_common(ce, c_ce);
    ce->add_option("--samples", ce_samples, "number of sampled parameter points");
    ce->add_option("--range", ce_range, "sampling range lo:hi");
    ce->add_option("--crosscheck-every", ce_cross, "direct-basis crosscheck stride (bwd6d)");

    auto* vd = app.add_subcommand("verify-decomposition", "reference-decomposition checks");
    std::string vd_which;
    int vd_samples = 20;
    add_common(vd, c_vd, false);
    vd->add_option("--which", vd_which, "I, J or quotient")->required();
    vd->add_option("--samples", vd_samples, "specialization count");

    auto* si = app.add_subcommand("simulate", "adaptive integration, CSV trajectory");
    std::string si_init;
    double si_tend = 0, si_rel = 1e-8, si_abs = 1e-10;
    add_common(si, c_si);
    si->add_option("--init", si_init, "initial state, comma separated")->required();
    si->add_option("--t-end", si_tend, "integration horizon (model default when omitted)");
    si->add_option("--rel-tol", si_rel, "relative tolerance");
    si->add_option("--abs-tol", si_abs, "absolute tolerance");

    auto* sw = app.add_subcommand("sweep", "stability/oscillation map over a grid");
    std::string sw_grid;
    bool sw_log = false, sw_nosim = false;
    add_common(sw, c_sw);
    sw->add_option("--grid", sw_grid, "axes as name:lo:hi:count,...")->required();
    sw->add_flag("--log", sw_log, "log-spaced grid");
    sw->add_flag("--no-simulate", sw_nosim, "skip trajectory classification");

    auto* gb = app.add_subcommand("groebner", "Groebner basis of an ideal file");
    std::string gb_input, gb_order = "degrevlex";
    bool gb_reduce = false;
    add_common(gb, c_gb, false);
    gb->add_option("--input", gb_input, "ideal JSON file")->required();
    gb->add_option("--order", gb_order, "lex or degrevlex");
    gb->add_flag("--reduce", gb_reduce, "return the unique reduced basis");

    std::vector<const char*> argv;
    argv.push_back("steadycert");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return kExitOk;
        }
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (ss->parsed()) return cmd_steady_states(c_ss);
        if (st->parsed()) return cmd_stability(c_st);
        if (hs->parsed()) return cmd_hopf_scan(c_hs, hs_grid, hs_log, hs_samples, hs_range);
        if (ce->parsed()) return cmd_certify(c_ce, ce_samples, ce_range, ce_cross);
        if (vd->parsed()) return cmd_verify_decomposition(c_vd, vd_which, vd_samples);
        if (si->parsed()) return cmd_simulate(c_si, si_init, si_tend, si_rel, si_abs);
        if (sw->parsed()) return cmd_sweep(c_sw, sw_grid, sw_log, !sw_nosim);
        if (gb->parsed()) return cmd_groebner(c_gb, gb_input, gb_order, gb_reduce);
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace steadycert

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "steadycert/cli.hpp"
#include "steadycert/json_io.hpp"

using namespace steadycert;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TmpFile {
    std::string path;
    explicit TmpFile(const std::string& name) : path("/tmp/steadycert_test_" + name) {}
    ~TmpFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("polynomial json round trip") {
    auto ctx = make_context({"x1", "x3", "x5"});
    Polynomial p = Polynomial::parse(ctx, "2*x1^2*x5 - 3/7*x3 + 1", TermOrder::degrevlex());
    Json j = poly_to_json(p);
    CHECK(j["vars"] == Json::array({"x1", "x3", "x5"}));
    Polynomial q = poly_from_json(j);
    CHECK(p.equals(q));

    // coefficients serialize as decimal strings with explicit denominators
    bool found = false;
    for (const auto& t : j["terms"])
        if (t["c"] == "-3/7") found = true;
    CHECK(found);

    CHECK_THROWS(poly_from_json(Json{{"vars", Json::array({"x"})},
                                     {"terms", Json::array({Json{{"c", "1"}, {"e", Json::array({1, 2})}}})}}));
}

TEST_CASE("ideal json round trip") {
    auto ctx = make_context({"x", "y"});
    Ideal I(ctx, {Polynomial::parse(ctx, "x^2*y"), Polynomial::parse(ctx, "x - y")});
    Json j = ideal_to_json(I);
    Ideal I2 = ideal_from_json(j);
    CHECK(ideal_equal(I, I2));
}

TEST_CASE("cli steady-states emits the closed form") {
    TmpFile out("states.json");
    int rc = run_cli({"steady-states", "--model", "rep3d", "--params", "s=0.3,b=4,g=0.6",
                      "--out", out.path});
    CHECK(rc == 0);
    Json j = Json::parse(slurp(out.path));
    CHECK(j["schema"] == 1);
    REQUIRE(j["states"].size() == 2);
    CHECK(j["states"][0]["positive"] == true);
    CHECK(j["states"][1]["positive"] == false);
    double v = j["states"][0]["coordinates"][0]["value"].get<double>();
    CHECK(v == doctest::Approx(2.438711).epsilon(1e-6));
    CHECK(j["states"][0]["coordinates"].size() == 3);
}

TEST_CASE("cli stability report") {
    TmpFile out("stab.json");
    int rc = run_cli({"stability", "--model", "bwd6d", "--params", "s=1,b=10,g=0.2",
                      "--out", out.path});
    CHECK(rc == 0);
    Json j = Json::parse(slurp(out.path));
    CHECK(j["verdict"] == "asymptotically-stable");
    CHECK(j["complex_pair"]["abs_re_lt_abs_im"] == false);
    CHECK(j["hurwitz"].size() == 6);
    CHECK(j["eigenvalues"].size() == 6);

    // the measured small-real-part point
    TmpFile out2("stab2.json");
    rc = run_cli({"stability", "--model", "rep3d", "--params", "s=0.1,b=100,g=0.1",
                  "--out", out2.path});
    CHECK(rc == 0);
    Json j2 = Json::parse(slurp(out2.path));
    CHECK(j2["complex_pair"]["abs_re_lt_abs_im"] == true);
    CHECK(j2["complex_pair"]["ratio_re_over_im"].get<double>() < 1.0);
    CHECK(j2["verdict"] == "asymptotically-stable");
}

TEST_CASE("cli hopf-scan is deterministic byte-for-byte") {
    TmpFile a("scan_a.json"), b("scan_b.json");
    std::vector<std::string> args{"hopf-scan", "--model", "rep3d", "--grid",
                                  "s:1e-1:10:3,b:1e-1:10:3,g:1e-1:10:3", "--log", "--seed", "42"};
    auto run = [&](const std::string& out) {
        auto cp = args;
        cp.push_back("--out");
        cp.push_back(out);
        return run_cli(cp);
    };
    CHECK(run(a.path) == 0);
    CHECK(run(b.path) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
    Json j = Json::parse(slurp(a.path));
    CHECK(j["witnesses"] == 0);
    CHECK(j["points"] == 27);
    CHECK(j["seed"] == 42);
}

TEST_CASE("cli hopf-scan random sample mode") {
    TmpFile out("scan_r.json");
    int rc = run_cli({"hopf-scan", "--model", "rep3d", "--samples", "20", "--range", "1e-1:10",
                      "--seed", "5", "--out", out.path});
    CHECK(rc == 0);
    Json j = Json::parse(slurp(out.path));
    CHECK(j["points"] == 20);
    CHECK(j["witnesses"] == 0);
    CHECK(j["critical_positive_everywhere"] == true);
    // needs either a grid or a sample count
    CHECK(run_cli({"hopf-scan", "--model", "rep3d", "--seed", "5"}) == 1);
}

TEST_CASE("cli exit code 2 when certification cannot be established") {
    TmpFile out("cert_budget.json");
    // a one-pair budget makes every sample fail with an explicit resource
    // error; the run completes but the expectation is not established
    int rc = run_cli({"certify", "--model", "fwd6d", "--samples", "3", "--seed", "1",
                      "--budget-pairs", "1", "--jobs", "1", "--out", out.path});
    CHECK(rc == 2);
    Json j = Json::parse(slurp(out.path));
    CHECK(j["errors"] == 3);
    CHECK(j["failures"][0]["error"].get<std::string>().find("budget") == 0);
}

TEST_CASE("cli certify small run") {
    TmpFile out("cert.json");
    int rc = run_cli({"certify", "--model", "bwd6d", "--samples", "10", "--seed", "1",
                      "--jobs", "2", "--out", out.path});
    CHECK(rc == 0);
    Json j = Json::parse(slurp(out.path));
    CHECK(j["unique_positive"] == true);
    CHECK(j["cubic_branch_always_empty"] == true);
    CHECK(j["expectation_failures"] == 0);
    CHECK(j["seed"] == 1);
}

TEST_CASE("cli verify-decomposition") {
    TmpFile out("dec.json");
    int rc = run_cli({"verify-decomposition", "--which", "J", "--seed", "7", "--out", out.path});
    CHECK(rc == 0);
    Json j = Json::parse(slurp(out.path));
    CHECK(j["ok"] == true);
    CHECK(j["containments"][0]["name"] == "H in G");
    CHECK(j["containments"][0]["holds"] == true);
}

TEST_CASE("cli simulate csv") {
    TmpFile out("traj.csv");
    int rc = run_cli({"simulate", "--model", "rep3d", "--params", "s=0.3,b=4,g=0.6",
                      "--init", "1,2,2", "--t-end", "40", "--out", out.path});
    CHECK(rc == 0);
    std::string csv = slurp(out.path);
    CHECK(csv.rfind("t,x1,x2,x3\n", 0) == 0);
    // last row approaches the steady state
    auto last_nl = csv.find_last_of('\n', csv.size() - 2);
    std::string last = csv.substr(last_nl + 1);
    std::stringstream ss(last);
    std::string cell;
    std::getline(ss, cell, ',');
    CHECK(std::stod(cell) == doctest::Approx(40.0));
    std::getline(ss, cell, ',');
    CHECK(std::stod(cell) == doctest::Approx(2.438711).epsilon(1e-3));

    // usage error: missing --init
    CHECK(run_cli({"simulate", "--model", "rep3d", "--params", "s=0.3,b=4,g=0.6"}) == 1);
    // wrong arity
    CHECK(run_cli({"simulate", "--model", "rep3d", "--params", "s=0.3,b=4,g=0.6",
                   "--init", "1,2"}) == 1);
}

TEST_CASE("cli sweep csv") {
    TmpFile out("sweep.csv");
    int rc = run_cli({"sweep", "--model", "rep3d", "--grid", "s:0.2:0.4:2,b:3:5:2,g:0.5:0.7:2",
                      "--seed", "3", "--jobs", "2", "--out", out.path});
    CHECK(rc == 0);
    std::string csv = slurp(out.path);
    CHECK(csv.rfind("s,b,g,verdict,max_re,crossings,overshoot,converged,error\n", 0) == 0);
    CHECK(csv.find("unstable") == std::string::npos);
    int lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 9);  // header + 8 grid points
}

TEST_CASE("cli groebner") {
    TmpFile in("ideal.json"), out("basis.json");
    {
        auto ctx = make_context({"x", "y"});
        Ideal I(ctx, {Polynomial::parse(ctx, "x^2 + y^2 - 1"), Polynomial::parse(ctx, "x - y")});
        write_json_file(in.path, ideal_to_json(I));
    }
    int rc = run_cli({"groebner", "--input", in.path, "--order", "lex", "--reduce",
                      "--out", out.path});
    CHECK(rc == 0);
    Json j = Json::parse(slurp(out.path));
    CHECK(j["reduced"] == true);
    REQUIRE(j["basis"].size() == 2);
    auto ctx = make_context({"x", "y"});
    Polynomial g0 = poly_from_json(j["basis"][0], TermOrder::lex());
    Polynomial g1 = poly_from_json(j["basis"][1], TermOrder::lex());
    CHECK(g0.equals(Polynomial::parse(ctx, "x - y", TermOrder::lex())));
    CHECK(g1.equals(Polynomial::parse(ctx, "y^2 - 1/2", TermOrder::lex())));

    CHECK(run_cli({"groebner", "--input", "/nonexistent.json"}) == 1);
    CHECK(run_cli({"nonsense-subcommand"}) == 1);
}

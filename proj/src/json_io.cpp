#include "steadycert/json_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

namespace steadycert {

Json poly_to_json(const Polynomial& p) {
    Json j;
    j["vars"] = p.context()->names();
    Json terms = Json::array();
    for (const auto& t : p.terms()) {
        Json jt;
        jt["c"] = t.coeff.str();
        jt["e"] = t.mono.exponents();
        terms.push_back(std::move(jt));
    }
    j["terms"] = std::move(terms);
    return j;
}

Polynomial poly_from_json(const Json& j, TermOrder ord) {
    if (!j.contains("vars") || !j.contains("terms")) throw DomainError("polynomial JSON needs vars/terms");
    std::vector<std::string> vars = j["vars"].get<std::vector<std::string>>();
    ContextPtr ctx = make_context(vars);
    std::vector<Term> terms;
    for (const auto& jt : j["terms"]) {
        Rational c = Rational::parse(jt["c"].get<std::string>());
        std::vector<std::uint32_t> e = jt["e"].get<std::vector<std::uint32_t>>();
        if (e.size() != vars.size()) throw DomainError("exponent arity does not match vars");
        terms.push_back({std::move(c), Monomial(std::move(e))});
    }
    return Polynomial(ctx, ord, std::move(terms));
}

Json ideal_to_json(const Ideal& ideal) {
    Json j;
    j["vars"] = ideal.context->names();
    Json gens = Json::array();
    for (const auto& g : ideal.generators) gens.push_back(poly_to_json(g));
    j["generators"] = std::move(gens);
    return j;
}

Ideal ideal_from_json(const Json& j, TermOrder ord) {
    if (!j.contains("vars") || !j.contains("generators")) throw DomainError("ideal JSON needs vars/generators");
    std::vector<std::string> vars = j["vars"].get<std::vector<std::string>>();
    ContextPtr ctx = make_context(vars);
    std::vector<Polynomial> gens;
    for (const auto& jp : j["generators"]) {
        Polynomial p = poly_from_json(jp, ord);
        if (!(*p.context() == *ctx)) throw DomainError("generator vars differ from ideal vars");
        gens.push_back(p.embed(ctx, ord));
    }
    return Ideal(ctx, std::move(gens));
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot write " + path);
    out << j.dump(1) << "\n";
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open " + path);
    std::uint64_t h = 0xcbf29ce484222325ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

const Ideal& RefIdealData::get(const std::string& name) const {
    auto it = ideals.find(name);
    if (it == ideals.end()) throw DomainError("unknown data ideal: " + name);
    return it->second;
}

std::string resolve_data_dir(const std::string& explicit_dir) {
    namespace fs = std::filesystem;
    auto ok = [](const std::string& d) {
        return !d.empty() && fs::exists(fs::path(d) / "appendixC_I.json");
    };
    if (!explicit_dir.empty()) {
        if (!ok(explicit_dir)) throw DomainError("data directory has no appendixC_I.json: " + explicit_dir);
        return explicit_dir;
    }
    if (const char* env = std::getenv("STEADYCERT_DATA_DIR"); env && ok(env)) return env;
    if (ok("data")) return "data";
#ifdef STEADYCERT_SOURCE_DATA_DIR
    if (ok(STEADYCERT_SOURCE_DATA_DIR)) return STEADYCERT_SOURCE_DATA_DIR;
#endif
    throw DomainError("cannot locate the data directory (set STEADYCERT_DATA_DIR)");
}

RefIdealData load_ideal_data(const std::string& data_dir) {
    namespace fs = std::filesystem;
    fs::path dir = resolve_data_dir(data_dir);
    RefIdealData d;

    Json app = read_json_file((dir / "appendixC_I.json").string());
    for (const char* k : {"I", "I1", "I2", "I3"}) d.ideals.emplace(k, ideal_from_json(app[k]));
    Json j1 = read_json_file((dir / "J1_h123.json").string());
    d.ideals.emplace("J1", ideal_from_json(j1["J1"]));
    d.ideals.emplace("J2", ideal_from_json(j1["J2"]));
    Json hg = read_json_file((dir / "HG.json").string());
    d.ideals.emplace("H", ideal_from_json(hg["H"]));
    d.ideals.emplace("G", ideal_from_json(hg["G"]));
    Json qc = read_json_file((dir / "quotient_components.json").string());
    for (const auto& c : qc["components"]) d.quotient_components.push_back(ideal_from_json(c));

    d.ctx = d.get("I").context;
    for (const auto& [k, ideal] : d.ideals)
        if (!same_context(ideal.context, d.ctx))
            throw DomainError("data ideal " + k + " has a mismatched context");
    return d;
}

}  // namespace steadycert

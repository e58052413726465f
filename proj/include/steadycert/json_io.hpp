#pragma once

#include <json.hpp>
#include <map>
#include <string>

#include "steadycert/groebner.hpp"

namespace steadycert {

using Json = nlohmann::ordered_json;

/// {"vars": [...], "terms": [{"c": "num/den", "e": [...]}]}
Json poly_to_json(const Polynomial& p);
Polynomial poly_from_json(const Json& j, TermOrder ord = TermOrder::degrevlex());

/// {"vars": [...], "generators": [Polynomial...]}
Json ideal_to_json(const Ideal& ideal);
Ideal ideal_from_json(const Json& j, TermOrder ord = TermOrder::degrevlex());

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// FNV-1a 64-bit over the raw file bytes; guards the shipped data files
/// against transcription drift.
std::uint64_t fnv1a_file(const std::string& path);

/// The ideal data shipped under data/: the stationarity ideal and its three
/// components, the parametric components J1/J2, the containment pair H/G, and
/// the five quotient components. Context is (s, b, g, x1, x3, x5).
struct RefIdealData {
    ContextPtr ctx;
    std::map<std::string, Ideal> ideals;              // I, I1, I2, I3, J1, J2, H, G
    std::vector<Ideal> quotient_components;

    const Ideal& get(const std::string& name) const;
};

/// Search order: explicit argument, STEADYCERT_DATA_DIR env var, ./data,
/// the build-time source directory.
std::string resolve_data_dir(const std::string& explicit_dir = "");
RefIdealData load_ideal_data(const std::string& data_dir = "");

}  // namespace steadycert

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "levygap/bounds.hpp"
#include "levygap/quad.hpp"
#include "levygap/simulate.hpp"
#include "levygap/speed.hpp"
#include "levygap/symbol.hpp"

namespace levygap::cli {

/// A fully validated run description. Built from a single JSON document;
/// unknown keys anywhere in the document are rejected (ConfigError), so a
/// typo never silently falls back to a default.
struct RunConfig {
    RunConfig(symbol::CharacteristicExponent s, speed::SpeedFunction a)
        : psi(std::move(s)), speed(std::move(a)) {}

    std::string name = "custom";
    symbol::CharacteristicExponent psi;
    speed::SpeedFunction speed;
    quad::QuadratureConfig quad;
    bounds::GridSpec grid;
    bool fit_scaling = true;
    bool use_closed_form = true;

    bool has_sim = false;
    sim::SimConfig sim;
    std::string observable = "sgn_min1";
    double return_eps = 0.05;
    double return_x0 = 1.0;
    bool dump_paths = false;

    nlohmann::ordered_json raw;  // the normalized document (provenance, hashing)
};

/// Parses and validates the JSON document. Throws ConfigError on any schema
/// violation: unknown key, wrong type, missing parameter, out-of-range value.
RunConfig parse_config(const nlohmann::ordered_json& doc);

/// Reads the file and delegates to parse_config. Throws ConfigError when the
/// file is missing or not valid JSON.
RunConfig load_config_file(const std::string& path);

/// Shipped configurations: "stable", "brownian-exp", "stable-mixture",
/// "cauchy-brownian". All use a = e^{|x|} and identical simulation defaults.
nlohmann::ordered_json preset_config(const std::string& name);
std::vector<std::string> preset_names();

/// FNV-1a hash of the normalized document, as a fixed-width hex string.
std::string config_hash(const nlohmann::ordered_json& doc);

}  // namespace levygap::cli

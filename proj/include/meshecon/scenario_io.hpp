#pragma once

// Scenario definition files: a single JSON format with an explicit
// schema_version, accepting either a symmetric shorthand block or fully
// expanded matrices. Unknown fields are rejected by name. Serialization
// always emits the expanded canonical form.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "meshecon/calibration.hpp"
#include "meshecon/equilibrium.hpp"
#include "meshecon/model.hpp"

namespace meshecon {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioFile {
    int schema_version = 1;
    Scenario scenario;
    SolverOptions solver;  // file overrides applied over the defaults
    std::optional<DollarConfig> dollar_config;
};

/// Parses and validates scenario JSON. `origin` names the source in error
/// messages (a path, or "<inline>").
ScenarioFile parse_scenario_json(const std::string& text,
                                 const std::string& origin);

ScenarioFile load_scenario_file(const std::filesystem::path& path);

/// Canonical expanded-form serialization; parsing it back yields a Scenario
/// that compares equal field-by-field.
std::string serialize_scenario(const ScenarioFile& file);

/// FNV-1a 64-bit digest of a byte string, as 16 hex characters. Used to tag
/// reports with the identity of their input.
std::string content_digest(const std::string& bytes);

}  // namespace meshecon

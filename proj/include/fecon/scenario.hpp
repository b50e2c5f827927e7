#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace fecon::scenario {

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SectionStatus {
    std::string name;
    bool ok;
    std::string detail; // error message when !ok
};

struct RunReport {
    std::string scenario;
    std::vector<SectionStatus> sections;
    std::vector<std::string> files; // every produced file, listed once
    std::vector<std::string> warnings;
    double wall_seconds = 0.0;

    bool ok() const;
};

struct ScenarioDoc {
    std::string name;
    nlohmann::json root;
};

struct BuiltinScenario {
    const char* name;
    const char* description;
    const char* text;
};

// Bundled scenarios, runnable by name.
std::span<const BuiltinScenario> builtin_scenarios();
const BuiltinScenario* find_builtin(const std::string& name);

// Parses a scenario document and checks its top-level shape. `origin` names
// the source in error messages.
ScenarioDoc parse_scenario(const std::string& text, const std::string& origin);

// Loads a bundled scenario by name, or a scenario file by path.
ScenarioDoc load_scenario(const std::string& name_or_path);

// Applies a dotted-path override, e.g. "exchange.rho_star=2.5". The value is
// parsed as JSON when possible and kept as a string otherwise.
void apply_override(nlohmann::json& root, const std::string& assignment);

// Runs every section of the scenario, writing CSV artifacts under out_dir.
// Sections run in name order; identical inputs produce byte-identical files.
RunReport run(const ScenarioDoc& doc, const std::string& out_dir);

} // namespace fecon::scenario

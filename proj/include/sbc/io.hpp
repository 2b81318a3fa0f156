// io.hpp — scenario configs, result tables, CSV/JSON emission
#pragma once

#include "sbc/bloch.hpp"
#include "sbc/equilibration.hpp"
#include "sbc/spectral.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace sbc::io {

// Thrown for malformed configs; the CLI maps it to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ScenarioConfig {
    std::string command;

    int model = 1; // 1 composite, 2 RWA composite
    std::string scheme = "composite"; // composite | rwa | split | dephasing
    spectral::BathSpec bath;
    spectral::BathSpec bath2;
    bool has_bath2 = false;
    double f1 = 0.0, f2 = 0.0, f3 = 0.0;
    double omega0 = 1.0;

    // sweep block (steady / max-coherence / equilibration / strong-coupling)
    std::string sweep_variable; // temperature | cutoff | ohmicity; empty = single point
    std::vector<double> sweep_values;
    bool optimize_f2 = false;

    // trajectory block
    double t_end = 0.0; // 0 = automatic horizon
    int points = 400;
    bool has_v0 = false;
    BlochVector v0;
    bool random_v0 = false;
    bool flag_steady = false;

    // equilibration route and strong-coupling model
    std::string route = "perturbative"; // perturbative | strong
    equilibration::StrongCouplingModel strong;
};

// Parses and validates a scenario for `command`, rejecting unknown keys.
// Accepts either a bare config object or a result sidecar (whose embedded
// config and command are unwrapped), so outputs can be re-run directly.
ScenarioConfig parse_scenario(const nlohmann::json& j, const std::string& command);

nlohmann::json load_json_file(const std::string& path);

// Resolved config serialized back out (defaults filled in).
nlohmann::json resolved_json(const ScenarioConfig& c);

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::string command;
    nlohmann::json config; // resolved scenario
};

// CSV with '#'-prefixed metadata (version, command, resolved config, columns).
// Deliberately excludes wall time so identical runs are byte-identical.
std::string format_csv(const ResultTable& table);
void write_csv(const ResultTable& table, const std::string& path);

// JSON sidecar carrying command, resolved config, and timing metadata.
nlohmann::json sidecar_json(const ResultTable& table, double wall_seconds);
void write_sidecar(const ResultTable& table, const std::string& path, double wall_seconds);

} // namespace sbc::io

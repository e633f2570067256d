#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace nclab {

struct ScenarioOptions {
    int dim = 2;
    int max_len = 4;  // GNS truncation depth
    int cap = 8;      // series degree cap
    double tol = 1e-9;
    std::uint64_t seed = 0;
};

struct CheckRecord {
    std::string name;
    double value = 0;
    double tolerance = 0;
    bool pass = false;
};

struct ScenarioReport {
    std::string name;
    ScenarioOptions options;
    std::vector<CheckRecord> checks;
    bool all_pass = false;
    double wall_ms = 0;
    nlohmann::ordered_json diagnostics;  // optional extras, null when absent
};

std::vector<std::string> scenario_names();

/// Runs a named scenario; UnknownScenario for anything not listed. Reports
/// are deterministic functions of (name, options).
ScenarioReport run_scenario(const std::string& name, const ScenarioOptions& opts);

/// Canonical JSON serialization. Wall time varies between runs, so it is
/// only included on request and stays out of the canonical report.
nlohmann::ordered_json to_json(const ScenarioReport& report, bool include_timing = false);

}  // namespace nclab

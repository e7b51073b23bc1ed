#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bergman/report.hpp"
#include "bergman/toml_lite.hpp"

namespace bergman {

// Inputs shared by every scenario runner.  Values resolved by the CLI:
// command-line flags beat config-file keys beat built-in defaults.
struct ScenarioContext {
  TomlTable config;
  uint64_t seed = 20240901;
  int n_override = 0;       // 0 = take the scenario's config/default
  int degree_override = 0;  // 0 = take the scenario's config/default
};

struct ScenarioInfo {
  std::string name;
  std::string summary;
};

// The fixed scenario catalog, in execution order of "all".
const std::vector<ScenarioInfo>& scenario_catalog();
bool is_scenario(const std::string& name);

// Runs one scenario and returns its report (wall_seconds filled in).
// Invalid configuration throws std::invalid_argument naming the violated
// constraint; the runner itself never exits the process.
ExperimentReport run_scenario(const std::string& name, const ScenarioContext& ctx);

// Expands "all" to the whole catalog; otherwise a single run.
std::vector<ExperimentReport> run_scenarios(const std::string& name,
                                            const ScenarioContext& ctx);

// 0 when every report passed, 1 otherwise (exact-inequality violations or
// flagged non-convergence).
int reports_exit_status(const std::vector<ExperimentReport>& reports);

}  // namespace bergman

#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bergman/report.hpp"
#include "bergman/scenarios.hpp"
#include "bergman/toml_lite.hpp"

int main(int argc, char** argv) {
  CLI::App app{"bergmankit: weighted-ball operator experiments"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand(
      "run", "run one scenario (or \"all\") and write CSV/JSON reports");
  std::string scenario;
  std::string config_path;
  std::string out_dir;
  int64_t seed = -1;
  int n = 0;
  int degree = 0;
  run->add_option("--scenario", scenario, "scenario name, or \"all\"")->required();
  run->add_option("--config", config_path, "TOML config file");
  run->add_option("--seed", seed, "random seed (beats the config file)");
  run->add_option("--out", out_dir, "output directory (default: out)");
  run->add_option("--n", n, "ball dimension override");
  run->add_option("--degree", degree, "truncation degree override");

  CLI::App* list =
      app.add_subcommand("list-scenarios", "print the scenario catalog");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const bergman::ScenarioInfo& info : bergman::scenario_catalog()) {
      std::printf("%-20s %s\n", info.name.c_str(), info.summary.c_str());
    }
    return 0;
  }

  try {
    bergman::ScenarioContext ctx;
    if (!config_path.empty()) {
      ctx.config = bergman::TomlTable::parse_file(config_path);
    }
    ctx.seed = seed >= 0 ? static_cast<uint64_t>(seed)
                         : static_cast<uint64_t>(ctx.config.get_int("seed", 20240901));
    if (out_dir.empty()) out_dir = ctx.config.get_string("out", "out");
    ctx.n_override = n;
    ctx.degree_override = degree;

    std::vector<bergman::ExperimentReport> reports =
        bergman::run_scenarios(scenario, ctx);
    for (const bergman::ExperimentReport& rep : reports) {
      bergman::write_report_files(rep, out_dir);
      std::printf("%-20s %-4s violations=%d wall=%.2fs\n", rep.scenario.c_str(),
                  rep.passed ? "pass" : "FAIL", rep.violations, rep.wall_seconds);
    }
    return bergman::reports_exit_status(reports);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
}

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "simdeg/experiments.hpp"

namespace {

int list_scenarios() {
  for (const auto& s : simdeg::scenarios()) {
    std::string grid;
    for (double v : s.default_grid) grid += (grid.empty() ? "" : ",") + CLI::detail::to_string(v);
    std::cout << s.id << "\n  grid: " << s.grid_meaning << " (default " << grid << ")\n  group: "
              << (s.default_group.empty() ? "-" : s.default_group) << "\n";
  }
  return 0;
}

void print_summary(const simdeg::ExperimentConfig& cfg, const std::vector<simdeg::ResultRecord>& records) {
  int failed = 0, errors = 0, findings = 0;
  double seconds = 0.0;
  for (const auto& r : records) {
    seconds += r.seconds;
    if (!r.error.empty()) {
      ++errors;
      std::cerr << "point " << r.point << " sample " << r.sample << ": error: " << r.error << "\n";
      continue;
    }
    for (const auto& a : r.assertions) {
      if (a.pass) continue;
      (a.hard ? failed : findings)++;
      std::cerr << "point " << r.point << " sample " << r.sample << (a.hard ? ": FAIL " : ": finding ") << a.name
                << " (lhs " << a.lhs << ", rhs " << a.rhs << ")\n";
    }
  }
  std::printf("%s: %zu records, %d failed assertions, %d findings, %d errors, %.2fs compute\n", cfg.scenario.c_str(),
              records.size(), failed, findings, errors, seconds);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Similarity-degree experiments"};
  app.require_subcommand(1);
  auto* list = app.add_subcommand("list", "List scenarios");

  auto* run = app.add_subcommand("run", "Run a scenario");
  std::string config_path;
  std::map<std::string, std::string> flags;
  std::string scenario;
  run->add_option("scenario", scenario, "Scenario id (see `simdeg list`)");
  run->add_option("--config", config_path, "key = value config file; flags override it")->check(CLI::ExistingFile);
  for (const auto& [key, help] : std::vector<std::pair<std::string, std::string>>{
           {"group", "Group spec, e.g. cyclic:4, dihedral:3, sym:3, prod:cyclic:2,cyclic:2"},
           {"grid", "Comma-separated grid values"},
           {"samples", "Samples per grid point"},
           {"seed", "Base seed (u64)"},
           {"max-dim", "Representation dimension cap"},
           {"out", "Report path"},
           {"format", "Report format: csv or json"},
           {"jobs", "Worker threads"}}) {
    run->add_option("--" + key, flags[key], help);
  }

  CLI11_PARSE(app, argc, argv);
  if (*list) return list_scenarios();

  try {
    // Default grid goes in first so an explicit empty grid is still rejected.
    simdeg::ExperimentConfig base;
    base.scenario = scenario;
    if (base.scenario.empty() && !config_path.empty()) base.scenario = simdeg::load_config_file(config_path).scenario;
    for (const auto& s : simdeg::scenarios())
      if (s.id == base.scenario) base.grid = s.default_grid;

    simdeg::ExperimentConfig cfg = config_path.empty() ? base : simdeg::load_config_file(config_path, base);
    if (!scenario.empty()) cfg.scenario = scenario;
    for (const auto& [key, value] : flags) {
      if (run->count("--" + key) == 0) continue;
      simdeg::set_config_value(cfg, key == "max-dim" ? "max_dim" : key, value);
    }
    cfg.validate();

    const auto records = simdeg::run_scenario(cfg);
    print_summary(cfg, records);
    if (!cfg.out.empty()) {
      simdeg::write_report(records, cfg.out, cfg.format);
      std::printf("wrote %s\n", cfg.out.c_str());
    }
    return simdeg::all_hard_pass(records) ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "simdeg: " << e.what() << "\n";
    return 2;
  }
}

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace simdeg {

struct ExperimentConfig {
  std::string scenario;
  /// Empty means the scenario default.
  std::string group;
  std::vector<double> grid;
  int samples = 10;
  std::uint64_t seed = 0;
  /// Representation / matrix size cap.
  int max_dim = 2;
  std::string out;
  std::string format = "csv";
  int jobs = 1;

  /// Throws std::invalid_argument on unknown scenarios, empty grids,
  /// out-of-range grid values and caps beyond module limits.
  void validate() const;
};

/// Sets one key (scenario, group, grid, samples, seed, max_dim, out, format, jobs).
void set_config_value(ExperimentConfig& cfg, const std::string& key, const std::string& value);
/// key = value lines; `#` starts a comment; values may be quoted.
ExperimentConfig parse_config_text(const std::string& text, ExperimentConfig base = {});
ExperimentConfig load_config_file(const std::string& path, ExperimentConfig base = {});

/// One checked inequality lhs ≤ rhs. Soft assertions are findings and do not
/// affect the exit status.
struct Assertion {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
  double margin = 0.0;
  bool hard = true;

  bool operator==(const Assertion&) const = default;
};

struct ResultRecord {
  std::string scenario;
  int point = 0;
  int sample = 0;
  nlohmann::json inputs = nlohmann::json::object();
  std::map<std::string, double> measurements;
  std::vector<Assertion> assertions;
  double seconds = 0.0;
  /// Module error text; a record with an error counts as failed.
  std::string error;

  bool hard_pass() const;
  /// Equality ignoring wall time.
  bool same_result(const ResultRecord& o) const;
};

struct ScenarioInfo {
  std::string id;
  std::string grid_meaning;
  std::vector<double> default_grid;
  std::string default_group;
};

const std::vector<ScenarioInfo>& scenarios();

/// Runs every (grid point, sample) pair. Point i uses seed ^ i and sample s
/// draws from derive_seed(seed ^ i, s), so records do not depend on `jobs`.
/// Records come back sorted by (point, sample).
std::vector<ResultRecord> run_scenario(const ExperimentConfig& cfg);

bool all_hard_pass(const std::vector<ResultRecord>& records);

/// Non-finite reals are written as the strings "inf", "-inf" and "nan".
nlohmann::json to_json(const std::vector<ResultRecord>& records);
std::vector<ResultRecord> records_from_json(const nlohmann::json& j);
/// Fixed columns, then sorted in.*, m.* and a.<name>.{lhs,rhs,pass,margin,hard} columns.
std::string to_csv(const std::vector<ResultRecord>& records);
/// Writes to a temporary sibling and renames it into place.
void write_report(const std::vector<ResultRecord>& records, const std::string& path, const std::string& format);

}  // namespace simdeg

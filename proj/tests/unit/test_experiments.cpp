#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "simdeg/experiments.hpp"

using namespace simdeg;

namespace {

ExperimentConfig config(const std::string& scenario, std::vector<double> grid, int samples) {
  ExperimentConfig c;
  c.scenario = scenario;
  c.grid = std::move(grid);
  c.samples = samples;
  return c;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Config, Validation) {
  EXPECT_NO_THROW(config("dixmier-sweep", {1, 2}, 3).validate());
  EXPECT_THROW(config("dixmier-sweep", {}, 3).validate(), std::invalid_argument);
  EXPECT_THROW(config("no-such-scenario", {1}, 3).validate(), std::invalid_argument);
  EXPECT_THROW(config("dixmier-sweep", {0.5}, 3).validate(), std::invalid_argument);
  EXPECT_THROW(config("twirl-certificate", {2.5}, 3).validate(), std::invalid_argument);
  EXPECT_THROW(config("dixmier-sweep", {1}, 0).validate(), std::invalid_argument);
  ExperimentConfig big = config("dixmier-sweep", {1}, 1);
  big.group = "cyclic:30";
  EXPECT_THROW(big.validate(), std::invalid_argument);
  ExperimentConfig fmt = config("dixmier-sweep", {1}, 1);
  fmt.format = "xml";
  EXPECT_THROW(fmt.validate(), std::invalid_argument);
  ExperimentConfig tp = config("tensor-power", {1}, 1);
  tp.group = "sym:3";
  EXPECT_THROW(tp.validate(), std::invalid_argument);
  EXPECT_EQ(scenarios().size(), 10u);
}

TEST(Config, ParseTextAndOverride) {
  const std::string text =
      "# sweep\n"
      "scenario = dixmier-sweep\n"
      "group = \"dihedral:3\"   # quoted\n"
      "grid = 1, 2.5 ,4\n"
      "samples = 7\n"
      "seed = 123456789012\n"
      "\n"
      "format = json\n";
  ExperimentConfig c = parse_config_text(text);
  EXPECT_EQ(c.scenario, "dixmier-sweep");
  EXPECT_EQ(c.group, "dihedral:3");
  EXPECT_EQ(c.grid, (std::vector<double>{1, 2.5, 4}));
  EXPECT_EQ(c.samples, 7);
  EXPECT_EQ(c.seed, 123456789012u);
  EXPECT_EQ(c.format, "json");
  set_config_value(c, "samples", "3");
  EXPECT_EQ(c.samples, 3);
  EXPECT_THROW(parse_config_text("colour = red\n"), std::invalid_argument);
  EXPECT_THROW(parse_config_text("samples\n"), std::invalid_argument);
  EXPECT_THROW(parse_config_text("samples = many\n"), std::invalid_argument);
  EXPECT_THROW(load_config_file("/nonexistent/simdeg.cfg"), std::invalid_argument);
}

TEST(Run, DixmierExample) {
  const auto records = run_scenario(config("dixmier-sweep", {1, 2}, 10));
  ASSERT_EQ(records.size(), 20u);
  EXPECT_TRUE(all_hard_pass(records));
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(records[i].point, static_cast<int>(i / 10));
    EXPECT_EQ(records[i].sample, static_cast<int>(i % 10));
    EXPECT_EQ(records[i].assertions.size(), 2u);
    EXPECT_GT(records[i].measurements.at("pi_sup"), 0.0);
  }
}

TEST(Run, TwirlExample) {
  const auto records = run_scenario(config("twirl-certificate", {3}, 5));
  ASSERT_EQ(records.size(), 5u);
  for (const auto& r : records) {
    EXPECT_LE(r.measurements.at("residual"), 1e-10);
    EXPECT_TRUE(r.hard_pass());
  }
}

TEST(Run, EveryScenarioPassesOnDefaults) {
  for (const auto& s : scenarios()) {
    ExperimentConfig c = config(s.id, s.default_grid, 1);
    c.jobs = 4;
    const auto records = run_scenario(c);
    EXPECT_EQ(records.size(), s.default_grid.size()) << s.id;
    for (const auto& r : records) {
      EXPECT_TRUE(r.error.empty()) << s.id << ": " << r.error;
      EXPECT_TRUE(r.hard_pass()) << s.id << " point " << r.point;
      EXPECT_FALSE(r.assertions.empty()) << s.id;
    }
  }
}

TEST(Run, AconvFiniteIffDiameter) {
  ExperimentConfig c = config("aconv-gauge", {1, 2, 3, 4, 5}, 1);
  c.group = "cyclic:5";
  const auto records = run_scenario(c);
  for (const auto& r : records) {
    const int d = r.point + 1;
    EXPECT_EQ(r.measurements.at("diameter"), 4.0);
    EXPECT_EQ(std::isfinite(r.measurements.at("gauge")), d >= 4) << d;
  }
  EXPECT_TRUE(all_hard_pass(records));
}

TEST(Run, ModuleErrorsAreRecorded) {
  ExperimentConfig c = config("nuclear-upper", {1, 2}, 2);
  c.group = "sym:3";
  const auto records = run_scenario(c);
  ASSERT_EQ(records.size(), 4u);
  for (const auto& r : records) {
    EXPECT_FALSE(r.error.empty());
    EXPECT_FALSE(r.hard_pass());
  }
  EXPECT_FALSE(all_hard_pass(records));
}

TEST(Run, DeterministicAcrossRunsAndJobs) {
  for (const char* id : {"dixmier-sweep", "nuclear-upper", "bp-gauge"}) {
    ExperimentConfig c = config(id, {1, 2, 3}, 2);
    c.seed = 99;
    const auto a = run_scenario(c);
    c.jobs = 3;
    const auto b = run_scenario(c);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(a[i].same_result(b[i])) << id << " record " << i;
    c.seed = 100;
    const auto other = run_scenario(c);
    EXPECT_FALSE(a[0].same_result(other[0])) << id;
  }
}

TEST(Report, CsvShape) {
  const std::string empty = to_csv({});
  EXPECT_EQ(count_lines(empty), 1);
  EXPECT_EQ(empty.rfind("scenario,point,sample,seconds,error", 0), 0u);
  const auto records = run_scenario(config("row-inequality", {1, 2}, 3));
  const std::string csv = to_csv(records);
  EXPECT_EQ(count_lines(csv), static_cast<int>(records.size()) + 1);
  EXPECT_NE(csv.find("m.lhs"), std::string::npos);
  EXPECT_NE(csv.find("in.grid_value"), std::string::npos);
}

TEST(Report, CsvQuoting) {
  ResultRecord r;
  r.scenario = "x";
  r.error = "bad, \"quoted\"";
  const std::string csv = to_csv({r});
  EXPECT_NE(csv.find("\"bad, \"\"quoted\"\"\""), std::string::npos);
}

TEST(Report, JsonRoundTrip) {
  auto records = run_scenario(config("aconv-gauge", {1, 3}, 2));
  records[0].error = "example";
  const nlohmann::json j = to_json(records);
  EXPECT_EQ(j[0].at("measurements").at("gauge"), "inf");
  const auto back = records_from_json(nlohmann::json::parse(j.dump()));
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_TRUE(back[i].same_result(records[i]));
    EXPECT_EQ(back[i].seconds, records[i].seconds);
  }
  EXPECT_EQ(to_json(back), j);
  EXPECT_THROW(records_from_json(nlohmann::json::parse(R"([{"scenario": 1}])")), std::invalid_argument);
}

TEST(Report, AtomicWrite) {
  const auto dir = std::filesystem::temp_directory_path() / "simdeg_report_test";
  std::filesystem::create_directories(dir);
  const auto records = run_scenario(config("twirl-certificate", {2}, 2));
  const auto csv_path = dir / "out.csv", json_path = dir / "out.json";
  write_report(records, csv_path.string(), "csv");
  write_report(records, json_path.string(), "json");
  EXPECT_EQ(read_file(csv_path), to_csv(records));
  EXPECT_EQ(records_from_json(nlohmann::json::parse(read_file(json_path))).size(), 2u);
  EXPECT_FALSE(std::filesystem::exists(dir / "out.csv.tmp"));
  EXPECT_THROW(write_report(records, (dir / "missing" / "x.csv").string(), "csv"), std::runtime_error);
  EXPECT_THROW(write_report(records, csv_path.string(), "xml"), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

// Copyright 2026 The tightbounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = tightbounds::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tightbounds_cli_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Cli, TailJson) {
  const auto r = run({"bound", "tail", "--mu", "1", "--p", "2", "--s", "1", "--t", "0", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = ordered_json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["value"].get<double>(), 0.5);
  EXPECT_EQ(j["regime"], "Interior");
}

TEST(Cli, JsonRoundTripIsByteIdentical) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"bound", "max-op", "--p", "1.5", "--s", "0.7", "--t", "0.4", "--format", "json"},
           {"bound", "cond-exp", "--p", "2", "--t", "3", "--format", "json"},
           {"newsvendor", "solve", "--p", "2.5", "--s", "0.5", "--format", "json"},
           {"pricing", "solve", "--kind", "mad", "--delta", "1", "--format", "json"}}) {
    const auto r = run(args);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(ordered_json::parse(r.out).dump(2) + "\n", r.out);
  }
}

TEST(Cli, PricingMad) {
  const auto r = run({"pricing", "solve", "--kind", "mad", "--delta", "1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(ordered_json::parse(r.out)["ratio"].get<double>(), 9.0, 1e-12);
}

TEST(Cli, PowerOneAliasesMad) {
  const auto a = run({"bound", "tail", "--p", "1", "--s", "0.5", "--t", "0", "--format", "json"});
  const auto b = run({"bound", "tail", "--kind", "mad", "--s", "0.5", "--t", "0", "--format", "json"});
  ASSERT_EQ(a.code, 0);
  EXPECT_DOUBLE_EQ(ordered_json::parse(a.out)["value"].get<double>(), 0.75);
  EXPECT_EQ(ordered_json::parse(a.out)["value"], ordered_json::parse(b.out)["value"]);
}

TEST(Cli, DegenerateIsNotAnError) {
  const auto r = run({"bound", "cond-exp", "--mu", "1", "--p", "2", "--s", "1", "--t", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("DegenerateUnbounded"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({"bound", "tail", "--bogus", "1"}).code, 2);
  EXPECT_EQ(run({"bound", "tail", "--s", "-1"}).code, 2);
  EXPECT_EQ(run({"bound", "tail", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"pricing", "solve", "--kind", "mad", "--delta", "2.5"}).code, 2);
  const auto r = run({"bound", "tail", "--t", "abc"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, MissingTransitionIsAStatus) {
  const auto r = run({"pricing", "transition", "--p-grid", "2"});
  // NoTransition inside a table is reported as a status, not an error.
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("NoTransition"), std::string::npos);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args = {"verify", "--p", "1.5", "--s", "1", "--objective", "max-op",
                                         "--t", "1", "--grid", "500", "--samples", "5000",
                                         "--seed", "9", "--format", "json"};
  const auto a = run(args);
  const auto b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(ordered_json::parse(a.out)["sample"]["violation_count"], 0);
}

TEST(Cli, HelpListsFlagsWithDefaults) {
  const std::map<std::vector<std::string>, std::vector<std::string>> expected = {
      {{"bound", "tail"}, {"--mu", "--p", "--s", "--kind", "--t", "--generic", "--format", "--out"}},
      {{"bound", "cond-exp"}, {"--mu", "--t"}},
      {{"bound", "max-op"}, {"--mu", "--t"}},
      {{"newsvendor", "solve"}, {"--b", "--h", "--generic", "--s"}},
      {{"newsvendor", "sweep"}, {"--p-grid", "--s-grid", "--b", "--h"}},
      {{"newsvendor", "pbar-table"}, {"--ratios", "--p-grid", "--s"}},
      {{"pricing", "solve"}, {"--delta", "--kind", "--p"}},
      {{"pricing", "sweep"}, {"--delta-grid"}},
      {{"pricing", "transition"}, {"--p-grid"}},
      {{"verify"}, {"--objective", "--grid", "--samples", "--seed", "--tolerance"}},
      {{"figures", "fig1"}, {"--out-dir"}},
  };
  for (const auto& [cmd, flags] : expected) {
    auto args = cmd;
    args.push_back("--help");
    const auto r = run(args);
    EXPECT_EQ(r.code, 0);
    for (const auto& f : flags) EXPECT_NE(r.out.find(f), std::string::npos) << f;
  }
  const auto r = run({"bound", "tail", "--help"});
  EXPECT_NE(r.out.find("outcome units"), std::string::npos);
  EXPECT_NE(r.out.find("[1]"), std::string::npos);
}

TEST(Cli, OutFileAndIoError) {
  const auto dir = scratch_dir("out");
  fs::create_directories(dir);
  const auto path = dir / "tail.csv";
  const auto r = run({"bound", "tail", "--t", "0", "--format", "csv", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = read_csv(path);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0][0], "quantity");
  const auto bad = run({"bound", "tail", "--out", (dir / "missing" / "x.json").string()});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("missing"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Figures, Fig1CondExpConstantForUnitS) {
  const auto dir = scratch_dir("fig1");
  ASSERT_EQ(run({"figures", "fig1", "--out-dir", dir.string()}).code, 0);
  const auto rows = read_csv(dir / "fig1_cond_exp.csv");
  ASSERT_EQ(rows[0], (std::vector<std::string>{"p", "s", "value"}));
  int seen = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (std::stod(rows[i][1]) == 1.0) {
      EXPECT_NEAR(std::stod(rows[i][2]), 2.0, 1e-8) << rows[i][0];
      ++seen;
    }
  }
  EXPECT_EQ(seen, 41);
  EXPECT_TRUE(fs::exists(dir / "fig1_tail.csv"));
  EXPECT_TRUE(fs::exists(dir / "fig1_max_op.csv"));
  fs::remove_all(dir);
}

TEST(Figures, Table1) {
  const auto dir = scratch_dir("table1");
  ASSERT_EQ(run({"figures", "table1", "--out-dir", dir.string()}).code, 0);
  const auto rows = read_csv(dir / "table1.csv");
  const std::map<double, double> expected = {{10, 2.48}, {20, 1.96}, {40, 1.70}, {80, 1.54}};
  int seen = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto it = expected.find(std::stod(rows[i][0]));
    if (it == expected.end()) continue;
    EXPECT_NEAR(std::stod(rows[i][1]), it->second, 0.05) << rows[i][0];
    ++seen;
  }
  EXPECT_EQ(seen, 4);
  fs::remove_all(dir);
}

TEST(Figures, Fig4MadCrossing) {
  const auto dir = scratch_dir("fig4");
  ASSERT_EQ(run({"figures", "fig4", "--out-dir", dir.string()}).code, 0);
  const auto rows = read_csv(dir / "fig4_mad.csv");
  ASSERT_EQ(rows[0][5], "regime");
  double last_intersection = 0.0;
  double first_minimizer = 10.0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double delta = std::stod(rows[i][0]);
    if (rows[i][5] == "Intersection") last_intersection = std::max(last_intersection, delta);
    if (rows[i][5] == "Minimizer") first_minimizer = std::min(first_minimizer, delta);
  }
  const double crossing = 2.0 * (std::sqrt(5.0) - 2.0);
  EXPECT_LT(last_intersection, crossing);
  EXPECT_GT(first_minimizer, crossing);
  EXPECT_LE(first_minimizer - last_intersection, 0.02 + 1e-9);
  const auto var = read_csv(dir / "fig4_variance.csv");
  for (std::size_t i = 1; i < var.size(); ++i) EXPECT_EQ(var[i][5], "Intersection");
  fs::remove_all(dir);
}

// Copyright 2026 The Dichotomy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "dichotomy/io/csv.hpp"

namespace dichotomy::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

io::CsvTable parse(const std::string& text) {
  std::istringstream in(text);
  return io::read_csv(in);
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("dichotomy_cli_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

TEST(TaxRate, Asymptotic) {
  const auto r = invoke({"tax-rate", "--omega", "0.95", "--delta", "0.2"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto t = parse(r.out);
  EXPECT_NEAR(io::parse_real(t.rows[0].fields[t.column("tau_asymptotic")], 2), 0.24, 1e-15);
}

TEST(TaxRate, FiniteN) {
  const auto r = invoke({"tax-rate", "--omega", "0.9", "--delta", "0.1", "--n", "10000"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto t = parse(r.out);
  const auto& f = t.rows[0].fields;
  EXPECT_GT(io::parse_real(f[t.column("tau_corrected")], 2), io::parse_real(f[t.column("tau_asymptotic")], 2));
  EXPECT_EQ(f[t.column("valid")], "true");
}

TEST(TaxRate, UsageErrors) {
  EXPECT_EQ(invoke({"tax-rate", "--delta", "0.2"}).code, kUsage);
  EXPECT_EQ(invoke({"tax-rate", "--omega", "1.5", "--delta", "0.2"}).code, kUsage);
  EXPECT_EQ(invoke({"tax-rate", "--omega", "abc", "--delta", "0.2"}).code, kUsage);
  EXPECT_EQ(invoke({}).code, kUsage);
  EXPECT_EQ(invoke({"--help"}).code, kOk);
}

TEST(Series, MapsRowsAndOverrides) {
  std::string csv = "period,omega,delta\n";
  for (int m = 1; m <= 12; ++m) csv += "2024-" + std::to_string(m) + ",0." + std::to_string(90 + m % 5) + ",\n";
  csv += "2025-1,0.9,0.3\n";
  const auto path = temp_file("series.csv", csv);
  const auto r = invoke({"series", path, "--delta", "0.1", "--n", "1000"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto t = parse(r.out);
  ASSERT_EQ(t.rows.size(), 13u);
  EXPECT_EQ(t.rows[0].fields[0], "2024-1");
  EXPECT_EQ(t.rows[12].fields[t.column("delta")], "0.29999999999999999");
  EXPECT_EQ(t.rows[0].fields[t.column("delta")], "0.10000000000000001");
}

TEST(Series, RejectsRowsAndMalformedFiles) {
  const auto bad_row = temp_file("bad_row.csv", "period,omega\njan,0.9\nfeb,1.0\n");
  const auto r = invoke({"series", bad_row, "--delta", "0.1", "--n", "1000"});
  EXPECT_EQ(r.code, kData);
  EXPECT_NE(r.err.find("feb"), std::string::npos);
  EXPECT_EQ(parse(r.out).rows.size(), 1u);
  const auto malformed = temp_file("malformed.csv", "period,omega\njan,0.9,7\n");
  const auto m = invoke({"series", malformed, "--delta", "0.1", "--n", "1000"});
  EXPECT_EQ(m.code, kData);
  EXPECT_NE(m.err.find("line 2"), std::string::npos);
  EXPECT_EQ(invoke({"series", "/nonexistent/file.csv", "--delta", "0.1", "--n", "10"}).code, kData);
}

TEST(Dvalue, UnanimityExact) {
  const auto r = invoke({"dvalue", "--game", "unanimity:2", "--theta", "1", "--rho", "1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_NEAR(doc["gamma"][0].get<double>(), 1.0 / 3, 1e-15);
  EXPECT_NEAR(doc["lambda"][1].get<double>(), 1.0 / 6, 1e-15);
  EXPECT_NEAR(doc["aggregate_gamma"].get<double>(), doc["gamma"][0].get<double>() + doc["gamma"][1].get<double>(),
              1e-15);
  EXPECT_NEAR(doc["aggregate_formula"]["gamma"].get<double>(), 2.0 / 3, 1e-15);
}

TEST(Dvalue, MonteCarloIsReproducible) {
  const std::vector<std::string> args{"dvalue", "--game", "weighted:4:3,2,1,1", "--theta", "2", "--rho", "1",
                                      "--method", "mc", "--samples", "20000", "--seed", "7"};
  const auto a = invoke(args);
  ASSERT_EQ(a.code, kOk) << a.err;
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  EXPECT_EQ(a.out, invoke(args).out);
  EXPECT_EQ(a.out, invoke(threaded).out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["method"], "monte_carlo");
}

TEST(Dvalue, DenseFileAndErrors) {
  const auto path = temp_file("game.json", R"({"n": 2, "values": [0, 0, 0, 1]})");
  const auto r = invoke({"dvalue", "--game", path, "--theta", "1", "--rho", "1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NEAR(nlohmann::json::parse(r.out)["gamma"][0].get<double>(), 1.0 / 3, 1e-15);
  std::string weights = "1";
  for (int k = 1; k < 30; ++k) weights += ",1";
  EXPECT_EQ(invoke({"dvalue", "--game", "weighted:16:" + weights, "--theta", "1", "--rho", "1"}).code, kCapacity);
  EXPECT_EQ(invoke({"dvalue", "--game", "nosuch:3", "--theta", "1", "--rho", "1"}).code, kUsage);
  EXPECT_EQ(invoke({"dvalue", "--game", "majority:3", "--theta", "-1", "--rho", "1"}).code, kUsage);
}

TEST(Sweep, SinglePointAndSingularFlags) {
  const auto one = invoke({"sweep", "--n", "1000", "--omega-min", "0.5", "--omega-max", "0.5", "--tau-min", "0.7",
                           "--tau-max", "0.7", "--resolution", "1"});
  ASSERT_EQ(one.code, kOk) << one.err;
  EXPECT_EQ(parse(one.out).rows.size(), 1u);
  const auto grid = invoke({"sweep", "--omega-min", "0.5", "--omega-max", "0.9", "--resolution", "21"});
  ASSERT_EQ(grid.code, kOk) << grid.err;
  const auto t = parse(grid.out);
  EXPECT_EQ(t.rows.size(), 21u * 21u);
  std::size_t singular = 0;
  for (const auto& row : t.rows) singular += row.fields[t.column("singular")] == "true";
  EXPECT_EQ(singular, 21u);
  EXPECT_EQ(invoke({"sweep", "--omega-min", "0.9", "--omega-max", "0.5"}).code, kUsage);
  EXPECT_EQ(invoke({"sweep", "--resolution", "0"}).code, kUsage);
}

TEST(Verify, VarianceLimitPasses) {
  const auto r = invoke({"verify", "--theorem", "3", "--omega", "0.9", "--delta", "0.1", "--tau", "0.5"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto t = parse(r.out);
  EXPECT_NEAR(io::parse_real(t.rows.back().fields[t.column("target")], 0), 0.0279, 1e-12);
  EXPECT_NE(r.err.find("PASS"), std::string::npos);
}

TEST(Verify, GatesAndRejections) {
  EXPECT_EQ(invoke({"verify", "--theorem", "6"}).code, kOk);
  EXPECT_EQ(invoke({"verify", "--theorem", "3", "--offset", "2"}).code, kOk);
  EXPECT_EQ(invoke({"verify", "--theorem", "5", "--omega", "0.4", "--tau", "0.7"}).code, kUsage);
  EXPECT_EQ(invoke({"verify", "--theorem", "7"}).code, kUsage);
  EXPECT_EQ(invoke({"verify", "--theorem", "2", "--tau", "0.1"}).code, kUsage);
  // One n gives no error slope, so the slope gate fails.
  const auto fail = invoke({"verify", "--theorem", "3", "--n", "1000"});
  EXPECT_EQ(fail.code, kVerifyFailed);
  EXPECT_NE(fail.err.find("first failing gate"), std::string::npos);
}

TEST(Apps, Toll) {
  const auto r = invoke({"apps", "toll", "--g", "power:2", "--n", "100", "--omega", "0.4"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_DOUBLE_EQ(nlohmann::json::parse(r.out)["toll"].get<double>(), 3600);
  const auto path = temp_file("toll.json", R"({"n": 100, "omega": 0.5, "g": {"type": "table", "x": [0, 100], "y": [0, 20]}})");
  const auto s = invoke({"apps", "toll", "--scenario", path});
  ASSERT_EQ(s.code, kOk) << s.err;
  EXPECT_EQ(nlohmann::json::parse(s.out)["interpolation"], "piecewise_linear");
  EXPECT_EQ(invoke({"apps", "toll", "--g", "power:2"}).code, kUsage);
  EXPECT_EQ(invoke({"apps", "toll", "--scenario", temp_file("bad.json", "{")}).code, kData);
}

TEST(Apps, VotingAndInsurance) {
  const auto v = invoke({"apps", "voting", "--game", "majority:5", "--theta", "1", "--rho", "1"});
  ASSERT_EQ(v.code, kOk) << v.err;
  const auto power = nlohmann::json::parse(v.out)["power"];
  ASSERT_EQ(power.size(), 5u);
  for (const auto& p : power) EXPECT_NEAR(p.get<double>(), power[0].get<double>(), 1e-12);
  const auto i = invoke({"apps", "insurance", "--game", "additive:1,1", "--surcharge", "0.1"});
  ASSERT_EQ(i.code, kOk) << i.err;
  const auto doc = nlohmann::json::parse(i.out);
  EXPECT_NEAR(doc["premium"].get<double>(), 1.1 * doc["expected_cost"].get<double>() / 2, 1e-15);
  EXPECT_EQ(invoke({"apps", "voting", "--game", "additive:1,2"}).code, kUsage);
}

}  // namespace
}  // namespace dichotomy::cli

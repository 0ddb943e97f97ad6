// Copyright 2026 The igdiff Authors
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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli/commands.hpp"
#include "cli/grid.hpp"
#include "igdiff/errors.hpp"

namespace igdiff::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Row {
  double z = 0.0;
  std::string value;
  std::string log10;
};

std::vector<Row> parse_curve(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "z,value,log10_value");
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    rows.push_back({std::stod(line.substr(0, c1)), line.substr(c1 + 1, c2 - c1 - 1), line.substr(c2 + 1)});
  }
  return rows;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("igdiff_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Grid, ParsesInclusiveRange) {
  const Grid g = parse_grid("-3:3:0.01");
  EXPECT_EQ(g.count, 601u);
  EXPECT_EQ(g.decimals, 2);
  const std::vector<double> z = g.points();
  EXPECT_DOUBLE_EQ(z.front(), -3.0);
  EXPECT_NEAR(z.back(), 3.0, 1e-12);
  EXPECT_EQ(format_fixed(z[300], g.decimals), "0.00");
}

TEST(Grid, SingleValueAndErrors) {
  const Grid g = parse_grid("2.5");
  EXPECT_EQ(g.count, 1u);
  EXPECT_DOUBLE_EQ(g.points().front(), 2.5);
  EXPECT_THROW(parse_grid("1:0:0.1"), ConfigError);
  EXPECT_THROW(parse_grid("0:1:0"), ConfigError);
  EXPECT_THROW(parse_grid("a:b:c"), ConfigError);
  EXPECT_THROW(parse_grid("0:1"), ConfigError);
}

TEST(Grid, ExponentDecimals) {
  EXPECT_EQ(parse_grid("0:1e-3:1e-4").decimals, 4);
}

TEST(Grid, CoveringGridSpansInterval) {
  const Grid g = covering_grid(-1.234, 5.678);
  const std::vector<double> z = g.points();
  EXPECT_LE(z.front(), -1.234);
  EXPECT_GE(z.back(), 5.678 - 1e-12);
  EXPECT_LE(g.count, 260u);
}

TEST(Grid, NumberFormatting) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(1e-300), "1e-300");
  EXPECT_EQ(format_fixed(-0.0000001, 2), "0.00");
  EXPECT_EQ(format_fixed(1.005, 1), "1.0");
}

TEST(Fit, UseCaseOneValues) {
  const Outcome r = invoke({"--format", "json", "fit", "3", "3", "3", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["alpha"].get<double>(), 9.0 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(j["delta"].get<double>(), 2.0 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(j["beta"].get<double>(), 0.0, 1e-12);
  EXPECT_EQ(j["use_case_detected"].get<int>(), 1);
}

TEST(Fit, UseCaseTwoDetected) {
  const Outcome r = invoke({"--format", "json", "fit", "2", "2", "4", "4"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["use_case_detected"].get<int>(), 2);
  EXPECT_DOUBLE_EQ(j["c"].get<double>(), 1.0);
}

TEST(Fit, GenericRoundTrip) {
  const Outcome r = invoke({"--format", "json", "fit", "1", "1", "2", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["use_case_detected"].get<int>(), 0);
  EXPECT_LT(j["round_trip_max_rel_error"].get<double>(), 1e-9);
}

TEST(Fit, CsvFlattened) {
  const Outcome r = invoke({"fit", "3", "3", "3", "3"});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("name,value\n", 0), 0u);
  EXPECT_NE(r.out.find("\nuse_case_detected,1\n"), std::string::npos);
}

TEST(Fit, RejectsNonPositive) {
  EXPECT_EQ(invoke({"fit", "0", "1", "1", "1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"fit", "1", "1", "1"}).code, kExitUsage);
}

TEST(Curve, SymmetricExactDensity) {
  const Outcome r =
      invoke({"curve", "pdf", "exact", "--a1", "3", "--b1", "3", "--a2", "3", "--b2", "3", "--z", "-3:3:0.01"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::vector<Row> rows = parse_curve(r.out);
  ASSERT_EQ(rows.size(), 601u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double v = std::stod(rows[i].value);
    const double w = std::stod(rows[rows.size() - 1 - i].value);
    EXPECT_NEAR(v, w, 1e-8 * std::max(v, 1e-300)) << rows[i].z;
  }
}

TEST(Curve, AsymptoticPlateau) {
  const Outcome r = invoke({"curve", "tail", "asymptotic", "--a1", "30", "--b1", "30", "--a2", "30", "--b2", "30",
                            "--z", "0:0.01:0.001"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const Row& row : parse_curve(r.out)) {
    EXPECT_NEAR(std::stod(row.value) / 1.25e-162, 1.0, 0.01);
    EXPECT_NEAR(std::stod(row.log10), -161.90, 0.01) << row.z;
  }
}

TEST(Curve, SoaNeedsUseCaseOne) {
  EXPECT_EQ(invoke({"curve", "tail", "soa", "--a1", "1", "--b1", "1", "--a2", "2", "--b2", "3"}).code, kExitUsage);
  EXPECT_EQ(invoke({"curve", "tail", "soa", "--a1", "3", "--b1", "3", "--a2", "3", "--b2", "3"}).code, kExitOk);
  EXPECT_EQ(invoke({"curve", "pdf", "asymptotic", "--a1", "3", "--b1", "3", "--a2", "3", "--b2", "3"}).code,
            kExitUsage);
}

TEST(Curve, SoaUndefinedBelowZero) {
  const Outcome r =
      invoke({"curve", "tail", "soa", "--a1", "3", "--b1", "3", "--a2", "3", "--b2", "3", "--z", "-1:1:0.5"});
  ASSERT_EQ(r.code, kExitOk);
  const std::vector<Row> rows = parse_curve(r.out);
  EXPECT_EQ(rows[0].value, "0");
  EXPECT_EQ(rows[0].log10, "-inf");
  EXPECT_GT(std::stod(rows[4].value), 0.0);
}

TEST(Curve, ByteIdenticalReruns) {
  const fs::path dir = scratch_dir("rerun");
  const std::string file = (dir / "tail.csv").string();
  const std::vector<std::string> args{"--out", file, "curve", "tail", "exact", "--a1", "1", "--b1", "2",
                                      "--a2", "3", "--b2", "1"};
  ASSERT_EQ(invoke(args).code, kExitOk);
  const std::string first = slurp(file);
  const std::string first_manifest = slurp(file + ".manifest.json");
  ASSERT_EQ(invoke(args).code, kExitOk);
  EXPECT_EQ(slurp(file), first);
  EXPECT_EQ(slurp(file + ".manifest.json"), first_manifest);
  const auto m = nlohmann::json::parse(first_manifest);
  EXPECT_EQ(m["command"], "curve");
  EXPECT_EQ(m["outputs"][0]["bytes"].get<std::size_t>(), first.size());
  fs::remove_all(dir);
}

TEST(Sample, IndependentOfWorkers) {
  const std::vector<std::string> base{"--seed", "3", "sample", "diff", "--a1", "1", "--b1", "1", "--a2", "2", "--b2",
                                      "2", "--n", "10000"};
  std::vector<std::string> one = base;
  one.insert(one.begin(), {"--workers", "1"});
  std::vector<std::string> four = base;
  four.insert(four.begin(), {"--workers", "4"});
  const Outcome a = invoke(one);
  ASSERT_EQ(a.code, kExitOk) << a.err;
  EXPECT_EQ(a.out, invoke(four).out);
  EXPECT_NE(a.out, invoke({"--seed", "4", "sample", "diff", "--a1", "1", "--b1", "1", "--a2", "2", "--b2", "2",
                           "--n", "10000"})
                       .out);
}

TEST(Crossover, EqualPairsHalf) {
  const Outcome r = invoke({"crossover", "--a1", "3", "--b1", "3", "--a2", "3", "--b2", "3", "--t", "0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string header;
  std::string line;
  std::getline(in, header);
  std::getline(in, line);
  EXPECT_EQ(header, "t,exact,nig,asymptotic");
  EXPECT_NEAR(std::stod(line.substr(line.find(',') + 1)), 0.5, 1e-8);
}

TEST(Kl, ReportsBothDirections) {
  const Outcome r = invoke({"kl", "--a1", "3", "--b1", "3", "--a2", "3", "--b2", "3"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("kl_exact_nig,kl_nig_exact\n", 0), 0u);
}

TEST(Figure, SevenBundle) {
  const fs::path dir = scratch_dir("fig7");
  const Outcome r = invoke({"figure", "7", dir.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* method : {"exact", "asymptotic", "soa"}) {
    EXPECT_TRUE(fs::exists(dir / (std::string("fig7_tail_3_3_3_3_") + method + ".csv"))) << method;
  }
  const auto m = nlohmann::json::parse(slurp(dir / "fig7.manifest.json"));
  EXPECT_EQ(m["outputs"].size(), 3u);
  ASSERT_EQ(m["results"]["sets"].size(), 1u);
  EXPECT_GT(m["results"]["sets"][0]["kl_exact_nig"].get<double>(), 0.0);
  fs::remove_all(dir);
}

TEST(Figure, UseCaseOneSpecs) {
  for (int id : {1, 2}) {
    for (const FigureSet& s : figure_spec(id).sets) {
      EXPECT_EQ(s.p1.a(), s.p1.b());
      EXPECT_EQ(s.p1.a(), s.p2.a());
      EXPECT_EQ(s.p2.a(), s.p2.b());
    }
  }
  EXPECT_THROW(figure_spec(8), ConfigError);
  EXPECT_EQ(invoke({"figure", "0", "/tmp"}).code, kExitUsage);
}

TEST(Validate, TailConvergenceSuitePasses) {
  const Outcome r = invoke({"--seed", "7", "validate", "theorem1"});
  EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(Exit, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"nonsense"}).code, kExitUsage);
  EXPECT_EQ(invoke({"validate", "nothing"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--format", "xml", "fit", "1", "1", "1", "1"}).code, kExitUsage);
}

TEST(Binary, VersionAndExitCode) {
  const std::string cmd = std::string(IGDIFF_CLI_PATH) + " --version > /dev/null";
  EXPECT_EQ(std::system(cmd.c_str()), 0);
  const std::string bad = std::string(IGDIFF_CLI_PATH) + " fit 0 1 1 1 > /dev/null 2>&1";
  const int status = std::system(bad.c_str());
  EXPECT_EQ(WEXITSTATUS(status), kExitUsage);
}

}  // namespace
}  // namespace igdiff::cli

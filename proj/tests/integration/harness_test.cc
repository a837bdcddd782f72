//
// Copyright 2026 The dpglm Authors
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
//

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "absl/strings/str_split.h"
#include "dpglm/dataset_io.h"
#include "dpglm/harness/config.h"
#include "dpglm/harness/experiment.h"
#include "dpglm/harness/report.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace dpglm::harness {
namespace {

ExperimentConfig Config(const std::string& text) {
  absl::StatusOr<KeyValues> kv = ParseKeyValues(text);
  EXPECT_TRUE(kv.ok()) << kv.status();
  absl::StatusOr<ExperimentConfig> c = ParseExperimentConfig(*kv);
  EXPECT_TRUE(c.ok()) << c.status();
  return *c;
}

absl::StatusOr<ExperimentConfig> TryConfig(const std::string& text) {
  absl::StatusOr<KeyValues> kv = ParseKeyValues(text);
  if (!kv.ok()) return kv.status();
  return ParseExperimentConfig(*kv);
}

std::string TempDir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p.string();
}

TEST(ConfigTest, RejectsUnknownKeysAndBadCombinations) {
  EXPECT_FALSE(TryConfig("instance = regression\nbogus = 1\n").ok());
  const std::string base = "n = 64\nd = 2\nepsilon = 1\n";
  EXPECT_TRUE(TryConfig(base + "instance = regression\nalgorithm = noisy-gd\n"
                               "B = 1\n")
                  .ok());
  // Lipschitz instance with a smooth algorithm.
  EXPECT_FALSE(TryConfig(base + "instance = lipschitz-hard\n"
                                "algorithm = noisy-gd\nB = 1\n")
                   .ok());
  // Adaptive B with a fixed-B algorithm, and a fixed B with grid search.
  EXPECT_FALSE(TryConfig(base + "instance = regression\nalgorithm = noisy-gd\n"
                                "B = adaptive\n")
                   .ok());
  EXPECT_FALSE(TryConfig(base + "instance = regression\nalgorithm = flagship\n"
                                "B = 2\n")
                   .ok());
  EXPECT_FALSE(TryConfig(base + "instance = regression\n"
                                "algorithm = no-such-method\nB = 1\n")
                   .ok());
  EXPECT_TRUE(TryConfig(base + "instance = regression\n"
                               "algorithm = grid-search(noisy-gd)\n"
                               "B = adaptive\n")
                  .ok());
}

TEST(ConfigTest, IncludeResolvesRelativeAndIncluderWins) {
  const std::string dir = TempDir("dpglm_cfg_test");
  std::ofstream(dir + "/base.cfg") << "instance = regression\nn = 64\nd = 3\n"
                                      "epsilon = 1\nalgorithm = noisy-gd\nB = 1\n";
  std::ofstream(dir + "/top.cfg") << "include = base.cfg\nd = 5\n";
  auto kv = ReadKeyValuesFile(dir + "/top.cfg");
  ASSERT_TRUE(kv.ok()) << kv.status();
  auto c = ParseExperimentConfig(*kv);
  ASSERT_TRUE(c.ok()) << c.status();
  EXPECT_EQ(c->d_values, std::vector<int>{5});
  std::filesystem::remove_all(dir);
}

TEST(GenTest, RegressionFileShape) {
  const std::string dir = TempDir("dpglm_gen_test");
  ExperimentConfig c = Config(
      "instance = regression\nn = 100\nd = 10\nepsilon = 1\n"
      "algorithm = noisy-gd\nB = 1\nseeds = 3\n");
  auto paths = GenerateDatasets(c, dir + "/one.csv");
  ASSERT_TRUE(paths.ok()) << paths.status();
  ASSERT_EQ(paths->size(), 1u);
  auto text = ReadFileToString(paths->front());
  ASSERT_TRUE(text.ok());
  std::vector<std::string> lines =
      absl::StrSplit(*text, '\n', absl::SkipEmpty());
  ASSERT_EQ(lines.size(), 100u);
  for (const std::string& line : lines) {
    EXPECT_EQ(std::vector<std::string>(absl::StrSplit(line, ',')).size(), 11u);
  }
  // Same seed, byte-identical output.
  auto again = GenerateDatasets(c, dir + "/two.csv");
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(*ReadFileToString(again->front()), *text);
  std::filesystem::remove_all(dir);
}

TEST(GenTest, SmoothHardMetadataHasRealizedBias) {
  const std::string dir = TempDir("dpglm_gen_hard");
  ExperimentConfig c = Config(
      "instance = smooth-hard\nn = 30\nd = 4\nepsilon = 1\nd_prime = 4\n"
      "p_mass = 1\nb_bias = 0.3\nalgorithm = noisy-gd\nB = 1\n"
      "seed_count = 2\n");
  auto paths = GenerateDatasets(c, dir);
  ASSERT_TRUE(paths.ok()) << paths.status();
  ASSERT_EQ(paths->size(), 2u);
  auto ds = ReadDataset(paths->front());
  ASSERT_TRUE(ds.ok()) << ds.status();
  EXPECT_EQ(ds->second.generator, "smooth_hard");
  ASSERT_TRUE(ds->second.parameters.contains("b_realized"));
  // 7 points per coordinate, 5 positive: b = 3 / 7.
  EXPECT_DOUBLE_EQ(ds->second.parameters.at("b_realized"), 3.0 / 7.0);
  std::filesystem::remove_all(dir);
}

TEST(SweepTest, RowCountAndOrder) {
  ExperimentConfig c = Config(
      "instance = regression\nn = 128, 256, 512, 1024, 2048, 4096, 8192\n"
      "d = 3\nepsilon = 1\nalgorithm = noisy-gd-nonprivate\nB = 1\n"
      "seed_count = 10\nmax_gradient_evaluations = 1e12\n");
  EXPECT_EQ(EnumeratePoints(c).size(), 70u);
  auto rows = RunSweep(c);
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 70u);
  EXPECT_EQ(rows->front().n, 128);
  EXPECT_EQ(rows->back().n, 8192);
  for (const ResultRow& r : *rows) {
    EXPECT_TRUE(std::isfinite(r.excess_risk));
    EXPECT_GE(r.excess_risk, -1e-12);
  }
}

TEST(SweepTest, DeterministicAcrossRunsAndThreads) {
  const std::string text =
      "instance = regression\nn = 200, 400\nd = 3, 5\nepsilon = 0.5, 2\n"
      "algorithm = noisy-gd\nB = 1\nseed_count = 3\nrecord_runtime = false\n";
  ExperimentConfig one = Config(text + "threads = 1\n");
  ExperimentConfig four = Config(text + "threads = 4\n");
  auto a = RunSweep(one);
  auto b = RunSweep(one);
  auto c = RunSweep(four);
  ASSERT_TRUE(a.ok() && b.ok() && c.ok());
  EXPECT_EQ(FormatCsv(*a), FormatCsv(*b));
  EXPECT_EQ(FormatCsv(*a), FormatCsv(*c));
}

TEST(SweepTest, NoiselessRunIsReproducible) {
  ExperimentConfig c = Config(
      "instance = regression\nn = 300\nd = 4\nepsilon = 1\n"
      "algorithm = noisy-gd-nonprivate\nB = 2\nseed_count = 2\n"
      "record_runtime = false\n");
  auto a = RunSweep(c);
  auto b = RunSweep(c);
  ASSERT_TRUE(a.ok() && b.ok()) << a.status();
  EXPECT_EQ(FormatCsv(*a), FormatCsv(*b));
}

TEST(SweepTest, FlagshipReportsSelectedPowerOfTwo) {
  ExperimentConfig c = Config(
      "instance = regression\nw_star_norm = 2\nn = 2048\nd = 3\nepsilon = 1\n"
      "algorithm = flagship\nB = adaptive\nseed_count = 3\n");
  auto rows = RunSweep(c);
  ASSERT_TRUE(rows.ok()) << rows.status();
  for (const ResultRow& r : *rows) {
    if (r.b_used == 0.0) continue;  // zero model
    const double j = std::log2(r.b_used);
    EXPECT_EQ(j, std::round(j)) << r.b_used;
    EXPECT_GE(j, 1.0);
  }
}

TEST(SweepTest, GuardrailRejectsOversizedRuns) {
  ExperimentConfig c = Config(
      "instance = regression\nn = 4096\nd = 3\nepsilon = 1\n"
      "algorithm = noisy-gd\nB = 1\nmax_gradient_evaluations = 1000\n");
  EXPECT_FALSE(RunSweep(c).ok());
}

TEST(ReplayTest, RowReproducesFromScheduleJson) {
  ExperimentConfig c = Config(
      "instance = regression\nn = 256\nd = 4\nepsilon = 0.7\n"
      "algorithm = jl-smooth\nB = 1\nseeds = 5, 9\nrecord_runtime = false\n");
  auto rows = RunSweep(c);
  ASSERT_TRUE(rows.ok()) << rows.status();
  for (const ResultRow& r : *rows) {
    auto j = nlohmann::json::parse(r.schedule_json);
    EXPECT_TRUE(j.contains("schedule"));
    auto again = ReplayRow(r.schedule_json);
    ASSERT_TRUE(again.ok()) << again.status();
    EXPECT_EQ(FormatCsvRow(*again), FormatCsvRow(r));
  }
}

TEST(ResultsCsvTest, RoundTripAndSchemaErrors) {
  ExperimentConfig c = Config(
      "instance = lipschitz-hard\nn = 64\nd = 3\nepsilon = 1\n"
      "algorithm = output-pert-lipschitz\nB = 1\nseed_count = 2\n");
  auto rows = RunSweep(c);
  ASSERT_TRUE(rows.ok()) << rows.status();
  const std::string text = FormatCsv(*rows);
  auto back = ParseResultsCsv(text);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(FormatCsv(*back), text);
  EXPECT_FALSE(ParseResultsCsv("algorithm,n\nfoo,1\n").ok());
  EXPECT_FALSE(
      ParseResultsCsv(std::string(kCsvHeader) + "\nnoisy-gd,notanumber\n").ok());
}

TEST(ReportTest, PlantedSlope) {
  std::vector<ResultRow> rows;
  for (int n : {100, 200, 400, 800, 1600}) {
    for (int s = 0; s < 3; ++s) {
      ResultRow r;
      r.algorithm = "planted";
      r.n = n;
      r.d = 2;
      r.epsilon = 1;
      r.seed = s;
      r.excess_risk = (1.0 + 0.1 * (s - 1)) / std::sqrt(n);
      rows.push_back(r);
    }
  }
  auto groups = Summarize(rows);
  ASSERT_EQ(groups.size(), 1u);
  ASSERT_TRUE(groups[0].slope.has_value());
  EXPECT_NEAR(*groups[0].slope, -0.5, 0.01);
  EXPECT_EQ(groups[0].points.size(), 5u);
  EXPECT_DOUBLE_EQ(groups[0].points[0].median_excess_risk, 0.1);
  EXPECT_NE(FormatSummaryCsv(groups).find("planted"), std::string::npos);
}

TEST(ReportTest, SingleRowHasUndefinedSlope) {
  ResultRow r;
  r.algorithm = "one";
  r.n = 10;
  r.excess_risk = 0.3;
  auto groups = Summarize({r});
  ASSERT_EQ(groups.size(), 1u);
  EXPECT_FALSE(groups[0].slope.has_value());
  EXPECT_NE(FormatSummaryText(groups).find("undefined"), std::string::npos);
}

TEST(ReportTest, Median) {
  EXPECT_EQ(Median({3, 1, 2}), 2);
  EXPECT_EQ(Median({4, 1, 2, 3}), 2.5);
}

}  // namespace
}  // namespace dpglm::harness

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

// dpglm: generate instances, run sweeps, summarize rates.
//
//   dpglm gen    --config gen.cfg --out data/
//   dpglm run    --config sweep.cfg --out results.csv [--threads 4] [--seed 7]
//   dpglm report results.csv [--out summary.csv]

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "dpglm/dataset_io.h"
#include "dpglm/harness/config.h"
#include "dpglm/harness/experiment.h"
#include "dpglm/harness/report.h"

namespace {

using dpglm::harness::ExperimentConfig;

absl::StatusOr<ExperimentConfig> LoadConfig(const std::string& path,
                                            std::optional<uint64_t> seed,
                                            std::optional<int> threads) {
  absl::StatusOr<dpglm::harness::KeyValues> kv =
      dpglm::harness::ReadKeyValuesFile(path);
  if (!kv.ok()) return kv.status();
  if (seed.has_value()) (*kv)["base_seed"] = std::to_string(*seed);
  absl::StatusOr<ExperimentConfig> config =
      dpglm::harness::ParseExperimentConfig(*kv);
  if (!config.ok()) return config.status();
  if (threads.has_value()) config->threads = *threads;
  return config;
}

int Fail(const absl::Status& status) {
  std::cerr << "dpglm: " << status << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private generalized linear model experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::optional<int> threads;
  std::optional<uint64_t> seed;

  CLI::App* gen = app.add_subcommand("gen", "Write instance datasets");
  gen->add_option("--config", config_path, "Config file")->required();
  gen->add_option("--out", out_path, "Output file or directory")->required();
  gen->add_option("--seed", seed, "Base seed");

  CLI::App* run = app.add_subcommand("run", "Run a sweep and write CSV rows");
  run->add_option("--config", config_path, "Config file")->required();
  run->add_option("--out", out_path, "Results CSV (default: config output)");
  run->add_option("--threads", threads, "Worker threads");
  run->add_option("--seed", seed, "Base seed");

  std::string report_in;
  CLI::App* report = app.add_subcommand("report", "Median risk and slopes");
  report->add_option("results", report_in, "Results CSV")->required();
  report->add_option("--out", out_path, "Summary CSV");

  CLI11_PARSE(app, argc, argv);

  if (gen->parsed()) {
    absl::StatusOr<ExperimentConfig> config =
        LoadConfig(config_path, seed, std::nullopt);
    if (!config.ok()) return Fail(config.status());
    absl::StatusOr<std::vector<std::string>> paths =
        dpglm::harness::GenerateDatasets(*config, out_path);
    if (!paths.ok()) return Fail(paths.status());
    for (const std::string& p : *paths) std::cout << p << "\n";
    return 0;
  }

  if (run->parsed()) {
    absl::StatusOr<ExperimentConfig> config =
        LoadConfig(config_path, seed, threads);
    if (!config.ok()) return Fail(config.status());
    if (out_path.empty()) out_path = config->output;
    absl::StatusOr<std::vector<dpglm::harness::ResultRow>> rows =
        dpglm::harness::RunSweep(*config);
    if (!rows.ok()) return Fail(rows.status());
    const std::string csv = dpglm::harness::FormatCsv(*rows);
    if (out_path.empty() || out_path == "-") {
      std::cout << csv;
      return 0;
    }
    absl::Status written = dpglm::WriteStringToFile(out_path, csv);
    if (!written.ok()) return Fail(written);
    std::cerr << rows->size() << " rows written to " << out_path << "\n";
    return 0;
  }

  absl::StatusOr<std::string> text = dpglm::ReadFileToString(report_in);
  if (!text.ok()) return Fail(text.status());
  absl::StatusOr<std::vector<dpglm::harness::ResultRow>> rows =
      dpglm::harness::ParseResultsCsv(*text);
  if (!rows.ok()) return Fail(rows.status());
  const auto groups = dpglm::harness::Summarize(*rows);
  std::cout << dpglm::harness::FormatSummaryText(groups);
  if (!out_path.empty()) {
    absl::Status written = dpglm::WriteStringToFile(
        out_path, dpglm::harness::FormatSummaryCsv(groups));
    if (!written.ok()) return Fail(written);
  }
  return 0;
}

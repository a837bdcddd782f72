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

#ifndef DPGLM_HARNESS_EXPERIMENT_H_
#define DPGLM_HARNESS_EXPERIMENT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpglm/glm_loss.h"
#include "dpglm/harness/config.h"
#include "dpglm/instances.h"

namespace dpglm::harness {

inline constexpr char kCsvHeader[] =
    "algorithm,n,d,rank,epsilon,delta,b_used,seed,excess_risk,empirical_risk,"
    "runtime_ms,schedule_json";

struct SweepPoint {
  int n = 0;
  int d = 0;
  double epsilon = 0.0;
  uint64_t seed = 0;
};

struct ResultRow {
  std::string algorithm;
  int n = 0;
  int d = 0;
  int rank = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double b_used = 0.0;
  uint64_t seed = 0;
  double excess_risk = 0.0;
  double empirical_risk = 0.0;
  double runtime_ms = 0.0;
  // Run keys, sweep point, selected radius and the optimizer schedule. Enough
  // to rerun the row with ReplayRow.
  std::string schedule_json;
};

// Points in (n, d, epsilon, seed) order, seeds varying fastest.
std::vector<SweepPoint> EnumeratePoints(const ExperimentConfig& config);

absl::StatusOr<GeneratedInstance> BuildInstance(const ExperimentConfig& config,
                                                const SweepPoint& point);
absl::StatusOr<GlmLoss> BuildLoss(const ExperimentConfig& config,
                                  double label_bound);

// Gradient evaluations one run is expected to take. Output perturbation is
// charged a nominal 1000 n.
double PredictedGradientEvaluations(const ExperimentConfig& config,
                                    const SweepPoint& point);

absl::StatusOr<ResultRow> RunPoint(const ExperimentConfig& config,
                                   const SweepPoint& point);

// Runs every point on `config.threads` workers. Rows come back in
// EnumeratePoints order. Refuses sweeps whose predicted gradient evaluations
// exceed config.max_gradient_evaluations.
absl::StatusOr<std::vector<ResultRow>> RunSweep(const ExperimentConfig& config);

// Reruns the row described by a schedule_json cell.
absl::StatusOr<ResultRow> ReplayRow(const std::string& schedule_json);

std::string FormatCsvRow(const ResultRow& row);
// Header line followed by one line per row.
std::string FormatCsv(const std::vector<ResultRow>& rows);
absl::StatusOr<std::vector<ResultRow>> ParseResultsCsv(const std::string& text);

// Writes one dataset (CSV + metadata sidecar) per (n, d, seed). If there is a
// single point and `out` ends in ".csv" it is the file name; otherwise `out` is
// a directory. Returns the CSV paths.
absl::StatusOr<std::vector<std::string>> GenerateDatasets(
    const ExperimentConfig& config, const std::string& out);

}  // namespace dpglm::harness

#endif  // DPGLM_HARNESS_EXPERIMENT_H_

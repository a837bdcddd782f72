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

#ifndef DPGLM_HARNESS_CONFIG_H_
#define DPGLM_HARNESS_CONFIG_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace dpglm::harness {

// Flat key = value text. '#' starts a comment, arrays are comma lists, later
// keys override earlier ones.
using KeyValues = std::map<std::string, std::string>;

absl::StatusOr<KeyValues> ParseKeyValues(const std::string& text);
// Reads a config file. An `include = path` key (relative to the including
// file) is expanded first so the including file's keys win.
absl::StatusOr<KeyValues> ReadKeyValuesFile(const std::string& path);

struct InstanceSpec {
  // regression | smooth-hard | lipschitz-hard
  std::string kind = "regression";
  double x_bound = 1.0;
  // regression
  double w_star_norm = 1.0;
  double noise_std = 0.1;
  int rank = 0;
  // smooth-hard; d_prime = 0 means the d axis value
  int d_prime = 0;
  double p_mass = 1.0;
  double b_bias = 0.5;
  double y_bound = 1.0;
  bool dummy_point = false;
  std::vector<int> signs;  // empty: random
  // lipschitz-hard
  double alpha_mass = 1.0;
  double beta_shape = 1.0 / 16.0;
  double radius = 1.0;
  double p_norm = 2.0;
  // Use the lower-bound parameter schedule for the hard instances.
  bool adversarial = false;
};

struct ExperimentConfig {
  InstanceSpec instance;
  // squared | scaled-squared | absolute
  std::string loss;
  double smoothness = 2.0;
  std::string algorithm;
  std::vector<int> n_values;
  std::vector<int> d_values;
  std::vector<double> epsilons;
  double delta = 1e-5;
  // Unset means "adaptive"; only the model-selection algorithms accept that.
  std::optional<double> radius;
  double beta = 0.05;
  std::optional<int> grid_size;
  std::vector<uint64_t> seeds;
  uint64_t base_seed = 0;
  int threads = 1;
  double max_gradient_evaluations = 1e9;
  bool record_runtime = true;
  std::string output;
  // Keys that define a single run, kept for replay.
  KeyValues run_keys;
};

absl::StatusOr<ExperimentConfig> ParseExperimentConfig(const KeyValues& kv);

// Algorithm names: noisy-gd, noisy-gd-nonprivate, output-pert-smooth,
// output-pert-lipschitz, jl-smooth, jl-lipschitz, boost(<alg>),
// grid-search(<alg>), flagship.
absl::Status ValidateAlgorithmName(const std::string& name);

}  // namespace dpglm::harness

#endif  // DPGLM_HARNESS_CONFIG_H_

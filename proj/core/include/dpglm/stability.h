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

#ifndef DPGLM_STABILITY_H_
#define DPGLM_STABILITY_H_

#include <functional>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "dpglm/dataset.h"
#include "dpglm/glm_loss.h"
#include "dpglm/rng.h"
#include "dpglm/schedule.h"

namespace dpglm {

// Draws one labelled point from the data distribution.
using PointSampler = std::function<std::pair<Vector, double>(Rng&)>;

struct StabilityReport {
  int trials = 0;
  // Per trial: ||w_hat - w_hat^(i)||^2 and the bound
  //   (8 H~ eta^2 T / n) (1/n) sum_t (L(w_t; S) - L(w*; S))
  //     + 8 H~ eta^2 T Y^2 / n
  // evaluated on the observed iterates of the run on S.
  std::vector<double> squared_distances;
  std::vector<double> bounds;
  double mean_squared_distance = 0.0;
  double mean_bound = 0.0;
  int violations = 0;
};

// Replace-one stability of noisy GD. Each trial replaces a uniformly chosen
// point with a fresh draw and reruns with the same noise stream as the run on
// S. `comparator` is w* in the regret term.
absl::StatusOr<StabilityReport> EmpiricalArgumentStability(
    const GlmLoss& loss, const Dataset& data,
    const OptimizerSchedule& schedule, int trials, const Vector& comparator,
    const PointSampler& sampler, Rng& rng);

}  // namespace dpglm

#endif  // DPGLM_STABILITY_H_

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

#include "dpglm/stability.h"

#include <cmath>

#include "dpglm/noisy_gd.h"

namespace dpglm {

absl::StatusOr<StabilityReport> EmpiricalArgumentStability(
    const GlmLoss& loss, const Dataset& data,
    const OptimizerSchedule& schedule, int trials, const Vector& comparator,
    const PointSampler& sampler, Rng& rng) {
  if (trials < 1) return absl::InvalidArgumentError("trials must be >= 1");
  if (comparator.size() != data.dim()) {
    return absl::InvalidArgumentError("comparator has the wrong dimension");
  }
  if (!loss.smoothness().has_value()) {
    return absl::FailedPreconditionError("stability bound needs a smooth loss");
  }
  const double n = data.n();
  const double h_tilde = *loss.smoothness() * data.x_bound() * data.x_bound();
  const double eta = schedule.step_size;
  const double t = static_cast<double>(schedule.steps);
  const double comparator_risk = EmpiricalRisk(loss, data, comparator);

  StabilityReport report;
  report.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    Rng trial_rng = rng.Split(static_cast<uint64_t>(trial));
    const int index = static_cast<int>(trial_rng.UniformIndex(data.n()));
    auto [x_new, y_new] = sampler(trial_rng);
    absl::StatusOr<Dataset> neighbour =
        data.WithReplacedPoint(index, x_new, y_new);
    if (!neighbour.ok()) return neighbour.status();

    const Rng noise = trial_rng.Split(0x5eed);
    Rng noise_a = noise;
    Rng noise_b = noise;
    NoisyGdTrace trace;
    absl::StatusOr<TrainedModel> a = NoisyGd(loss, data, schedule, noise_a,
                                             &trace);
    if (!a.ok()) return a.status();
    absl::StatusOr<TrainedModel> b =
        NoisyGd(loss, *neighbour, schedule, noise_b);
    if (!b.ok()) return b.status();

    double regret = 0.0;
    for (double r : trace.iterate_risks) regret += r - comparator_risk;
    regret /= n;
    const double coef = 8.0 * h_tilde * eta * eta * t / n;
    const double bound = coef * regret + coef * loss.bound_at_zero();
    const double dist2 = OrderedSquaredNorm(a->w - b->w);
    report.squared_distances.push_back(dist2);
    report.bounds.push_back(bound);
    report.mean_squared_distance += dist2 / trials;
    report.mean_bound += bound / trials;
    if (dist2 > bound) ++report.violations;
  }
  return report;
}

}  // namespace dpglm

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

#ifndef DPGLM_SCHEDULE_H_
#define DPGLM_SCHEDULE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpglm/privacy.h"

namespace dpglm {

// Hyperparameters of one training run. Built by pure functions of the loss
// constants, n, d, B and the budget, so a schedule can be recomputed or
// replayed without the data.
struct OptimizerSchedule {
  std::string method;
  int64_t steps = 0;
  double step_size = 0.0;
  // Per-coordinate Gaussian variance added to each gradient, or to the output
  // for output perturbation.
  double noise_variance = 0.0;
  double radius = 0.0;
  double regularization = 0.0;
  // Lipschitz constant used for calibration.
  double lipschitz = 0.0;
  // Smoothness of the loss in w (H ||X||^2).
  double smoothness = 0.0;
  // Working dimension (the embedding dimension for JL runs).
  int dimension = 0;
  bool stochastic = false;
  // B == 0: the output is the zero vector.
  bool degenerate = false;
  PrivacyBudget budget = PrivacyBudget::NonPrivate();
  std::vector<std::string> warnings;
};

// Full-batch noisy GD for an H~-smooth loss over the ball of radius B:
//   T = n, G = 2 ||Y|| sqrt(H~) + 2 H~ B, sigma^2 from NoisyGdNoiseVariance,
//   eta = min(B / (sqrt(T) max(sqrt(H~) ||Y||, sigma sqrt(d))), 1 / (4 H~)).
// A non-private budget gives sigma = 0 and drops the sigma sqrt(d) term.
// smoothness_tilde is H ||X||^2 and y_norm is ||Y||.
absl::StatusOr<OptimizerSchedule> ScheduleNoisyGd(double smoothness_tilde,
                                                  double y_norm, double radius,
                                                  int64_t n, int d,
                                                  const PrivacyBudget& budget);

}  // namespace dpglm

#endif  // DPGLM_SCHEDULE_H_

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

#ifndef DPGLM_NOISY_GD_H_
#define DPGLM_NOISY_GD_H_

#include <vector>

#include "absl/status/statusor.h"
#include "dpglm/dataset.h"
#include "dpglm/glm_loss.h"
#include "dpglm/rng.h"
#include "dpglm/schedule.h"
#include "dpglm/trained_model.h"

namespace dpglm {

// Iterate-level record of a run, for stability and regret checks.
struct NoisyGdTrace {
  // Empirical risk at each point where a gradient was taken (w_0..w_{T-1}).
  std::vector<double> iterate_risks;
};

// Projected noisy gradient descent. Starts at w_0 = 0, takes T steps
//   w_{t+1} = Proj_B(w_t - eta (grad L(w_t; S) + xi_t)),  xi_t ~ N(0, s^2 I),
// and returns the average of w_1..w_T. Each step draws exactly d Gaussians,
// so two runs from equal Rng states share their noise.
absl::StatusOr<TrainedModel> NoisyGd(const GlmLoss& loss, const Dataset& data,
                                     const OptimizerSchedule& schedule,
                                     Rng& rng, NoisyGdTrace* trace = nullptr);

// Same iteration with one uniformly drawn (with replacement) example per step
// in place of the full gradient.
absl::StatusOr<TrainedModel> NoisySgd(const GlmLoss& loss, const Dataset& data,
                                      const OptimizerSchedule& schedule,
                                      Rng& rng);

}  // namespace dpglm

#endif  // DPGLM_NOISY_GD_H_

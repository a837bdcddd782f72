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

#ifndef DPGLM_OUTPUT_PERTURBATION_H_
#define DPGLM_OUTPUT_PERTURBATION_H_

#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "dpglm/dataset.h"
#include "dpglm/glm_loss.h"
#include "dpglm/privacy.h"
#include "dpglm/regularized_erm.h"
#include "dpglm/rng.h"
#include "dpglm/schedule.h"
#include "dpglm/trained_model.h"

namespace dpglm {

struct OutputPerturbationOptions {
  // Test hook: replaces the calibrated variance (0 exposes the exact
  // regularized minimizer).
  std::optional<double> noise_variance_override;
  ErmOptions erm;
};

// Regularization strength.
//   kSmooth:    ((||Y|| + H B X^2) sqrt(H) X / (B n eps))^{2/3} log(1/delta)^{1/3}
//   kLipschitz: G X log(1/delta)^{1/4} / (B sqrt(n eps))
absl::StatusOr<double> OutputPerturbationLambda(const GlmLoss& loss,
                                                double x_bound, double radius,
                                                int64_t n,
                                                const PrivacyBudget& budget,
                                                LossRegime regime);

// lambda, the Lipschitz constant and the output noise variance, as a
// schedule with method "output-perturbation-{smooth,lipschitz}".
absl::StatusOr<OptimizerSchedule> ScheduleOutputPerturbation(
    const GlmLoss& loss, double x_bound, double radius, int64_t n, int d,
    const PrivacyBudget& budget, LossRegime regime);

// Exact regularized ERM over the ball, plus Gaussian noise. The noisy output
// is not projected back onto the ball.
absl::StatusOr<TrainedModel> OutputPerturbation(
    const GlmLoss& loss, const Dataset& data, double radius,
    const PrivacyBudget& budget, LossRegime regime, Rng& rng,
    const OutputPerturbationOptions& options = {});

}  // namespace dpglm

#endif  // DPGLM_OUTPUT_PERTURBATION_H_

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

#ifndef DPGLM_JL_METHOD_H_
#define DPGLM_JL_METHOD_H_

#include <cstdint>
#include <optional>

#include "absl/status/statusor.h"
#include "dpglm/dataset.h"
#include "dpglm/glm_loss.h"
#include "dpglm/privacy.h"
#include "dpglm/rng.h"
#include "dpglm/trained_model.h"

namespace dpglm {

enum class LipschitzJlSolver {
  // Single-sample noisy SGD with replacement, T = n^2.
  kSgd,
  // Full-batch noisy GD with T = n^2. Quadratically more gradient work.
  kFullBatch,
};

struct JlOptions {
  LipschitzJlSolver lipschitz_solver = LipschitzJlSolver::kSgd;
  // Certified bound on ||Phi x|| / ||x|| used to calibrate the embedded run.
  // sqrt(2) is the JL guarantee at distortion alpha = 1.
  double norm_inflation = 1.4142135623730951;
  // Replaces the computed (unclamped) embedding dimension.
  std::optional<int64_t> embedding_dim_override;
};

// Unclamped embedding dimension.
//   kSmooth:    floor((B sqrt(H) X log(2n/delta) n eps /
//                      (||Y|| X + sqrt(H) B X^2))^{2/3})
//   kLipschitz: ceil(log(2n/delta) n eps)
absl::StatusOr<int64_t> JlEmbeddingDimension(const GlmLoss& loss,
                                             double x_bound, double radius,
                                             int64_t n,
                                             const PrivacyBudget& budget,
                                             LossRegime regime);

// Embeds the data with a Gaussian JL matrix, trains in k dimensions on the
// ball of radius 2B, and returns Phi^T w (not projected). When the clamped
// dimension reaches d the identity embedding is used and the run is the
// direct d-dimensional optimizer on the ball of radius B.
//
// kSmooth runs full-batch noisy GD with T = n. kLipschitz runs the solver
// selected in `options` with T = n^2,
//   sigma^2 = 8 T G^2 X^2 log(2/delta) / (n^2 eps^2),
//   eta = B / (G X (1 + sqrt(k log(2/delta)) / (n eps)) T^{3/4}).
absl::StatusOr<TrainedModel> JlMethod(const GlmLoss& loss, const Dataset& data,
                                      double radius,
                                      const PrivacyBudget& budget,
                                      LossRegime regime, Rng& rng,
                                      const JlOptions& options = {});

}  // namespace dpglm

#endif  // DPGLM_JL_METHOD_H_

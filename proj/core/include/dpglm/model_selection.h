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

#ifndef DPGLM_MODEL_SELECTION_H_
#define DPGLM_MODEL_SELECTION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpglm/dataset.h"
#include "dpglm/glm_loss.h"
#include "dpglm/privacy.h"
#include "dpglm/rng.h"
#include "dpglm/trained_model.h"

namespace dpglm {

// Inputs to a per-point loss bound Delta(B) for a base algorithm trained on
// `n` points with `budget`, inside a grid of `grid_size` candidates whose
// total delta is `total_delta`.
struct LossBoundContext {
  double radius = 0.0;
  int64_t n = 0;
  PrivacyBudget budget = PrivacyBudget::NonPrivate();
  int grid_size = 1;
  double total_delta = 0.0;
};

// A private learner parameterized by the radius B.
struct BaseAlgorithm {
  std::string name;
  std::function<absl::StatusOr<TrainedModel>(
      const Dataset&, double radius, const PrivacyBudget&, Rng&)>
      train;
  // Delta(B): high-probability bound on the per-point loss of the output.
  std::function<double(const LossBoundContext&)> loss_bound;
};

// Delta for noisy GD: Y^2 + H B^2 X^2.
double NoisyGdLossBound(const GlmLoss& loss, double x_bound, double radius);
// Delta for output perturbation with output variance sigma2:
//   Y^2 + H X^2 sigma2 log(K / delta) + H B^2 X^2.
double OutputPerturbationLossBound(const GlmLoss& loss, double x_bound,
                                   double radius, double sigma2, int grid_size,
                                   double total_delta);

BaseAlgorithm MakeNoisyGdAlgorithm(const GlmLoss& loss, double x_bound);
BaseAlgorithm MakeOutputPerturbationAlgorithm(const GlmLoss& loss,
                                              double x_bound,
                                              LossRegime regime);
BaseAlgorithm MakeJlAlgorithm(const GlmLoss& loss, double x_bound,
                              LossRegime regime);

// Number of trained models m = ceil(4 ln(4 / beta)).
absl::StatusOr<int> BoostModelCount(double beta);

struct BoostOptions {
  std::optional<int> model_count_override;
  // Test hook; 0 makes the selection noiseless.
  std::optional<double> laplace_scale_override;
};

// Trains m models on disjoint chunks of floor(n / (m + 1)) points with
// (eps / 2, delta) each and picks one by report-noisy-max on the negated
// validation risk of the last chunk (which also takes the remainder), with
// Laplace scale sqrt(4 (Y^2 + H~ gamma^2 X^2) / (n eps)). gamma is the sub-
// Gaussian parameter reported by the base models.
absl::StatusOr<TrainedModel> Boost(const BaseAlgorithm& base,
                                   const GlmLoss& loss, const Dataset& data,
                                   double radius, const PrivacyBudget& budget,
                                   double beta, Rng& rng,
                                   const BoostOptions& options = {});

// Wraps Boost as a base algorithm; Delta is the base's bound at the chunk size
// and (eps / 2, delta).
BaseAlgorithm MakeBoostedAlgorithm(BaseAlgorithm base, const GlmLoss& loss,
                                   double beta);

struct GridCandidate {
  int j = 0;
  double radius = 0.0;
  double validation_risk = 0.0;
  double tau = 0.0;
  double loss_bound = 0.0;
  double score = 0.0;
  double sensitivity = 0.0;
  // Largest per-point validation loss, for checking Delta(B).
  double max_point_loss = 0.0;
  bool selected = false;
  Vector w;
};

struct GridSearchResult {
  TrainedModel model;
  // Row 0 is the zero model.
  std::vector<GridCandidate> candidates;
  int selected = 0;
};

// tau_j = Delta log(4K / beta) / n + sqrt(4 Y^2 log(4K / beta) / n).
double GridTau(double loss_bound, double y2, int grid_size, double beta,
               int64_t n);

// Trains the base algorithm with B_j = 2^j, j = 1..K, on the first half of the
// data with (eps / 2K, delta / 2K) each, scores each on the second half as
// L(w_j; S2) + tau_j, and selects among them and the zero model (score Y^2)
// with GEM at (eps / 2, beta / 4). Each score's sensitivity is Delta(B_j) /
// |S2|. Requires even n.
absl::StatusOr<GridSearchResult> PrivateGridSearch(const BaseAlgorithm& base,
                                                   const GlmLoss& loss,
                                                   const Dataset& data,
                                                   int grid_size,
                                                   const PrivacyBudget& budget,
                                                   double beta, Rng& rng);

// K = max(1, ceil(ln max(Y sqrt(n) / (X sqrt(H)),
//                        Y^2 (n eps)^{2/3} / (sqrt(H) X^2)))).
absl::StatusOr<int> FlagshipGridSize(const GlmLoss& loss, double x_bound,
                                     int64_t n, double epsilon);

// Grid search over boosted smooth output perturbation, with K from
// FlagshipGridSize.
absl::StatusOr<GridSearchResult> FlagshipPipeline(const GlmLoss& loss,
                                                  const Dataset& data,
                                                  const PrivacyBudget& budget,
                                                  double beta, Rng& rng);

}  // namespace dpglm

#endif  // DPGLM_MODEL_SELECTION_H_

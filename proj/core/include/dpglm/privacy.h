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

#ifndef DPGLM_PRIVACY_H_
#define DPGLM_PRIVACY_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpglm/rng.h"

namespace dpglm {

// (epsilon, delta) with epsilon > 0 and 0 <= delta < 1. The non-private
// sentinel has epsilon = +inf and delta = 0.
class PrivacyBudget {
 public:
  static absl::StatusOr<PrivacyBudget> Create(double epsilon, double delta);
  static PrivacyBudget NonPrivate();

  double epsilon() const { return epsilon_; }
  double delta() const { return delta_; }
  bool is_private() const;

  // K components of (epsilon / K, delta / K). The last component absorbs the
  // rounding remainder so that ComposeBasic of the result returns exactly
  // this budget.
  absl::StatusOr<std::vector<PrivacyBudget>> Split(int k) const;
  // One component of Split(k), without the remainder adjustment.
  absl::StatusOr<PrivacyBudget> Share(int k) const;

 private:
  PrivacyBudget(double epsilon, double delta)
      : epsilon_(epsilon), delta_(delta) {}

  double epsilon_;
  double delta_;
};

// Sequential composition: sums epsilons and deltas in order.
PrivacyBudget ComposeBasic(absl::Span<const PrivacyBudget> parts);

// One entry in a model's privacy accounting.
struct BudgetCharge {
  std::string component;
  double epsilon = 0.0;
  double delta = 0.0;
};

// Per-step Gaussian variance for full-batch noisy gradient descent with
// G-Lipschitz losses: 8 G^2 T log(1/delta) / (n^2 epsilon^2).
absl::StatusOr<double> NoisyGdNoiseVariance(double lipschitz, int64_t steps,
                                            int64_t n,
                                            const PrivacyBudget& budget);

enum class LossRegime { kSmooth, kLipschitz };

// Output-perturbation variance for the lambda-regularized minimizer.
// kLipschitz: 4 G^2 X^2 log(1/delta) / (lambda^2 n^2 epsilon^2) with G the
// link Lipschitz constant. kSmooth: 4 G^2 log(1/delta) / (lambda^2 n^2
// epsilon^2) with G the Lipschitz constant of the loss on the ball.
absl::StatusOr<double> OutputPerturbationNoiseVariance(
    double lipschitz, double x_bound, double lambda, int64_t n,
    const PrivacyBudget& budget, LossRegime regime);

// argmax_i (utility_i + Laplace(scale)); ties go to the lowest index.
absl::StatusOr<int> ReportNoisyMax(absl::Span<const double> utilities,
                                   double scale, Rng& rng);

// Candidate for the generalized exponential mechanism: `score` is minimized
// and changes by at most `sensitivity` between neighbouring datasets.
struct GemCandidate {
  double sensitivity = 0.0;
  double score = 0.0;
};

// Normalized scores
//   s_i = max_j ((q_i + t g_i) - (q_j + t g_j)) / (g_i + g_j),
// with t = 2 ln(N / beta) / epsilon. Pairs with g_i + g_j == 0 compare the
// shifted scores exactly (+inf, 0 or -inf). Each s_i has sensitivity 1 and
// s_i >= 0.
absl::StatusOr<std::vector<double>> GemNormalizedScores(
    absl::Span<const GemCandidate> candidates, double epsilon, double beta);

// Samples i with probability proportional to exp(-epsilon s_i / 2). With
// probability 1 - beta the selected score satisfies
//   q_i <= min_j (q_j + 4 g_j ln(N / beta) / epsilon).
absl::StatusOr<int> GemSelect(absl::Span<const GemCandidate> candidates,
                              double epsilon, double beta, Rng& rng);

}  // namespace dpglm

#endif  // DPGLM_PRIVACY_H_

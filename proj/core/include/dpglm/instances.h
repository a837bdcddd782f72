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

#ifndef DPGLM_INSTANCES_H_
#define DPGLM_INSTANCES_H_

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "dpglm/dataset.h"
#include "dpglm/glm_loss.h"
#include "dpglm/linalg.h"
#include "dpglm/rng.h"

namespace dpglm {

// Population risk of a fixed data distribution. Immutable after construction.
class PopulationOracle {
 public:
  virtual ~PopulationOracle() = default;

  virtual double Risk(const Vector& w) const = 0;
  // A population minimizer and its risk.
  virtual const Vector& Minimizer() const = 0;
  virtual double MinimumRisk() const = 0;
  virtual double ExcessRisk(const Vector& w) const {
    return Risk(w) - MinimumRisk();
  }
  // One fresh labelled point.
  virtual std::pair<Vector, double> Sample(Rng& rng) const = 0;
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double standard_error = 0.0;
};

// Estimates E loss(w; (x, y)) from `samples` draws of the oracle.
MonteCarloEstimate MonteCarloRisk(const PopulationOracle& oracle,
                                  const GlmLoss& loss, const Vector& w,
                                  int64_t samples, Rng& rng);

struct GeneratedInstance {
  Dataset data;
  std::shared_ptr<const PopulationOracle> oracle;
  DatasetMetadata metadata;
  // Reference predictor: w* for regression and smooth-hard, w~ for
  // lipschitz-hard.
  Vector comparator;
};

struct RegressionParams {
  int d = 1;
  int n = 1;
  double w_star_norm = 1.0;
  double noise_std = 0.0;
  double x_bound = 1.0;
  // Dimension of the subspace the features span; 0 means d (isotropic).
  int rank = 0;
};

// x = X U z with z uniform on the unit sphere of R^r and U a random d x r
// orthonormal basis (the identity when r = d); y = <w*, x> + N(0, s^2) with
// w* in span(U) and ||w*|| = w_star_norm. Under squared loss
//   L(w) = ||U^T (w - w*)||^2 X^2 / r + s^2.
// The certified label bound is the realized max |y|.
absl::StatusOr<GeneratedInstance> GenerateRegression(
    const RegressionParams& params, Rng& rng);

struct SmoothHardParams {
  int d_prime = 1;
  double p_mass = 1.0;
  double b_bias = 0.0;
  std::vector<int> signs;  // +1 / -1, size d_prime
  int n = 1;
  double y_bound = 1.0;
  double x_bound = 1.0;
  // Ambient dimension; 0 means d_prime (+1 with the dummy point).
  int d = 0;
  // Replaces the last filler point with (c' e_{d'+1}, Y), c' = 1e-6 X.
  bool dummy_point = false;
};

// Packing dataset: for each j < d', floor(p n / d') points at X e_j, of which
// ceil(count (1 + b) / 2) are labelled sigma_j Y and the rest -sigma_j Y.
// Remaining points are (0, 0). The per-coordinate least-squares minimizer is
// sigma_j Y b_realized / X; b_realized is stored in the metadata.
absl::StatusOr<GeneratedInstance> GenerateSmoothHard(
    const SmoothHardParams& params);

struct LipschitzHardParams {
  int d_prime = 1;
  double alpha_mass = 1.0;
  double beta_shape = 1.0 / 16.0;
  double radius = 1.0;
  double p_norm = 2.0;
  int n = 1;
  double x_bound = 1.0;
};

// mu_i ~ Beta(beta, beta) drawn once. Each point has x = 0 with probability
// 1 - alpha, otherwise x = X e_i with i uniform; z_i ~ Bernoulli(mu_i) and
// y = B / d'^{1/p} <x, z>. Comparator w~ = B / d'^{1/p} mu. Risk under
// absolute loss is evaluated in closed form given mu.
absl::StatusOr<GeneratedInstance> GenerateLipschitzHard(
    const LipschitzHardParams& params, Rng& rng);

// Closed forms used by tests: E|z - mu| for mu ~ Beta(b, b), and
// E|y - <w~, x>| = 2 alpha beta B X / ((1 + 2 beta) d'^{1/p}).
double BetaAbsDeviationMoment(double beta_shape);
double LipschitzHardComparatorResidual(const LipschitzHardParams& params);

// Parameter schedules that realize the lower-bound regimes, clamped to valid
// ranges ("adversarial-auto").
SmoothHardParams AdversarialSmoothPreset(int n, int d, double epsilon,
                                         double radius, double y_bound,
                                         double x_bound, double p_mass,
                                         Rng& rng);
LipschitzHardParams AdversarialLipschitzPreset(int n, int d, double epsilon,
                                               double radius, double x_bound,
                                               double p_norm);

// Number of singular values of the feature matrix above tol * sigma_max.
int DesignRank(const Dataset& data, double tol);

}  // namespace dpglm

#endif  // DPGLM_INSTANCES_H_

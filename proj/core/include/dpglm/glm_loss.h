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

#ifndef DPGLM_GLM_LOSS_H_
#define DPGLM_GLM_LOSS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpglm/dataset.h"
#include "dpglm/linalg.h"
#include "dpglm/rng.h"

namespace dpglm {

// Regularity constants of a link phi_y(z).
struct LinkRegularity {
  // phi_y'' <= smoothness for all y (convex, H-smooth links).
  std::optional<double> smoothness;
  // |phi_y'| <= link_lipschitz for all y.
  std::optional<double> link_lipschitz;
  // |phi_y(0)| <= bound_at_zero for every admissible label (written Y^2 for
  // smooth links, Y for Lipschitz ones).
  double bound_at_zero = 0.0;
  // Set for links of the form c |z - y|. Lets the ERM solver use its dual
  // path, which needs the conjugate in closed form.
  std::optional<double> abs_deviation_scale;
};

// Generalized linear loss l(w; (x, y)) = phi_y(<w, x>).
class GlmLoss {
 public:
  using LinkFn = std::function<double(double z, double y)>;

  GlmLoss(std::string name, LinkFn value, LinkFn derivative,
          LinkRegularity regularity);

  const std::string& name() const { return name_; }
  const LinkRegularity& regularity() const { return regularity_; }
  const std::optional<double>& smoothness() const {
    return regularity_.smoothness;
  }
  const std::optional<double>& link_lipschitz() const {
    return regularity_.link_lipschitz;
  }
  double bound_at_zero() const { return regularity_.bound_at_zero; }
  // sqrt of the bound at zero for smooth links; the "||Y||" constant.
  double y_norm() const;

  double Link(double z, double y) const { return value_(z, y); }
  double LinkDerivative(double z, double y) const { return derivative_(z, y); }

  absl::StatusOr<double> Value(const Vector& w, const Vector& x,
                               double y) const;
  absl::StatusOr<Vector> Gradient(const Vector& w, const Vector& x,
                                  double y) const;

 private:
  std::string name_;
  LinkFn value_;
  LinkFn derivative_;
  LinkRegularity regularity_;
};

// (z - y)^2. H = 2, bound at zero = label_bound^2.
GlmLoss SquaredLoss(double label_bound = 0.0);
// (H / 2) (z - 2y / sqrt(H))^2. Bound at zero = 2 label_bound^2.
GlmLoss ScaledSquaredLoss(double smoothness, double label_bound = 0.0);
// |z - y|. G = 1, bound at zero = label_bound. Subgradient 0 at the kink.
GlmLoss AbsoluteLoss(double label_bound = 0.0);

// Lipschitz constant in w of the loss over the ball of the given radius, for
// ||x|| <= x_bound. Smooth links use 2 ||Y|| sqrt(H) X + 2 H B X^2, Lipschitz
// links use G X; when both apply the smaller is returned.
absl::StatusOr<double> LipschitzOnBall(const GlmLoss& loss, double x_bound,
                                       double radius);

// Upper bound 3 (Y^2 + H B^2 X^2) on the loss over the ball.
absl::StatusOr<double> LossBoundOnBall(const GlmLoss& loss, double x_bound,
                                       double radius);

struct SelfBoundingWitness {
  Vector w;
  Vector x;
  double y;
  double ratio;
};

struct SelfBoundingReport {
  int64_t samples = 0;
  int64_t violations = 0;
  // max over samples of ||grad|| / sqrt(4 H ||x||^2 loss).
  double max_ratio = 0.0;
  std::vector<SelfBoundingWitness> witnesses;
};

// Samples (w, x, y) with ||w|| <= radius, ||x|| <= x_bound, |y| <= label_bound
// and checks ||grad l|| <= sqrt(4 H ||x||^2 l) (1 + 1e-9). Requires a smooth
// link.
absl::StatusOr<SelfBoundingReport> CheckSelfBounding(const GlmLoss& loss,
                                                     int64_t samples,
                                                     double x_bound,
                                                     double label_bound,
                                                     double radius, Rng& rng);

// Empirical risk (1/n) sum_i phi_{y_i}(<w, x_i>).
double EmpiricalRisk(const GlmLoss& loss, const Dataset& data, const Vector& w);
// Gradient of the empirical risk written into `grad`. Returns false if the
// result is non-finite.
bool EmpiricalGradient(const GlmLoss& loss, const Dataset& data,
                       const Vector& w, Vector& grad);

}  // namespace dpglm

#endif  // DPGLM_GLM_LOSS_H_

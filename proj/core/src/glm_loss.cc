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

#include "dpglm/glm_loss.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"

namespace dpglm {

GlmLoss::GlmLoss(std::string name, LinkFn value, LinkFn derivative,
                 LinkRegularity regularity)
    : name_(std::move(name)),
      value_(std::move(value)),
      derivative_(std::move(derivative)),
      regularity_(regularity) {}

double GlmLoss::y_norm() const {
  if (regularity_.smoothness.has_value()) {
    return std::sqrt(std::max(regularity_.bound_at_zero, 0.0));
  }
  return regularity_.bound_at_zero;
}

absl::StatusOr<double> GlmLoss::Value(const Vector& w, const Vector& x,
                                      double y) const {
  if (w.size() != x.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dimension mismatch: w has ", w.size(), ", x has ", x.size()));
  }
  return value_(OrderedDot(w, x), y);
}

absl::StatusOr<Vector> GlmLoss::Gradient(const Vector& w, const Vector& x,
                                         double y) const {
  if (w.size() != x.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dimension mismatch: w has ", w.size(), ", x has ", x.size()));
  }
  return derivative_(OrderedDot(w, x), y) * x;
}

GlmLoss SquaredLoss(double label_bound) {
  LinkRegularity reg;
  reg.smoothness = 2.0;
  reg.bound_at_zero = label_bound * label_bound;
  return GlmLoss(
      "squared", [](double z, double y) { return (z - y) * (z - y); },
      [](double z, double y) { return 2.0 * (z - y); }, reg);
}

GlmLoss ScaledSquaredLoss(double smoothness, double label_bound) {
  LinkRegularity reg;
  reg.smoothness = smoothness;
  reg.bound_at_zero = 2.0 * label_bound * label_bound;
  const double h = smoothness;
  const double shift = 2.0 / std::sqrt(h);
  return GlmLoss(
      absl::StrCat("scaled-squared(", h, ")"),
      [h, shift](double z, double y) {
        const double r = z - shift * y;
        return 0.5 * h * r * r;
      },
      [h, shift](double z, double y) { return h * (z - shift * y); }, reg);
}

GlmLoss AbsoluteLoss(double label_bound) {
  LinkRegularity reg;
  reg.link_lipschitz = 1.0;
  reg.bound_at_zero = label_bound;
  reg.abs_deviation_scale = 1.0;
  return GlmLoss(
      "absolute", [](double z, double y) { return std::abs(z - y); },
      [](double z, double y) {
        if (z > y) return 1.0;
        if (z < y) return -1.0;
        return 0.0;
      },
      reg);
}

absl::StatusOr<double> LipschitzOnBall(const GlmLoss& loss, double x_bound,
                                       double radius) {
  if (!(x_bound >= 0.0) || !(radius >= 0.0)) {
    return absl::InvalidArgumentError("bounds must be >= 0");
  }
  const auto& h = loss.smoothness();
  const auto& g = loss.link_lipschitz();
  if (!h.has_value() && !g.has_value()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "loss '", loss.name(), "' declares neither smoothness nor a link ",
        "Lipschitz constant"));
  }
  double best = std::numeric_limits<double>::infinity();
  if (h.has_value()) {
    best = 2.0 * loss.y_norm() * std::sqrt(*h) * x_bound +
           2.0 * (*h) * radius * x_bound * x_bound;
  }
  if (g.has_value()) best = std::min(best, (*g) * x_bound);
  return best;
}

absl::StatusOr<double> LossBoundOnBall(const GlmLoss& loss, double x_bound,
                                       double radius) {
  if (!loss.smoothness().has_value()) {
    return absl::FailedPreconditionError(
        "loss bound on the ball requires a smooth link");
  }
  return 3.0 * (loss.bound_at_zero() +
                *loss.smoothness() * radius * radius * x_bound * x_bound);
}

absl::StatusOr<SelfBoundingReport> CheckSelfBounding(const GlmLoss& loss,
                                                     int64_t samples,
                                                     double x_bound,
                                                     double label_bound,
                                                     double radius, Rng& rng) {
  if (!loss.smoothness().has_value()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "self-bounding check needs a smooth link; '", loss.name(),
        "' has none"));
  }
  const double h = *loss.smoothness();
  SelfBoundingReport report;
  for (int64_t s = 0; s < samples; ++s) {
    const int d = 1 + static_cast<int>(rng.UniformIndex(8));
    const Vector w = SampleSphere(rng, d, radius * rng.Uniform());
    const Vector x = SampleSphere(rng, d, x_bound * rng.Uniform());
    const double y = label_bound * (2.0 * rng.Uniform() - 1.0);
    const double z = OrderedDot(w, x);
    const double value = loss.Link(z, y);
    const double grad_norm =
        std::abs(loss.LinkDerivative(z, y)) * std::sqrt(OrderedSquaredNorm(x));
    const double rhs = std::sqrt(4.0 * h * OrderedSquaredNorm(x) * value);
    ++report.samples;
    double ratio = 0.0;
    if (rhs > 0.0) {
      ratio = grad_norm / rhs;
    } else if (grad_norm > 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    report.max_ratio = std::max(report.max_ratio, ratio);
    if (grad_norm > rhs * (1.0 + 1e-9)) {
      ++report.violations;
      if (report.witnesses.size() < 8) {
        report.witnesses.push_back({w, x, y, ratio});
      }
    }
  }
  return report;
}

double EmpiricalRisk(const GlmLoss& loss, const Dataset& data,
                     const Vector& w) {
  const int n = data.n();
  if (n == 0) return 0.0;
  const Vector z = data.features() * w;
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += loss.Link(z[i], data.y(i));
  return total / n;
}

bool EmpiricalGradient(const GlmLoss& loss, const Dataset& data,
                       const Vector& w, Vector& grad) {
  const int n = data.n();
  grad.setZero(data.dim());
  if (n == 0) return true;
  Vector coef = data.features() * w;
  for (int i = 0; i < n; ++i) {
    coef[i] = loss.LinkDerivative(coef[i], data.y(i)) / n;
  }
  grad.noalias() = data.features().transpose() * coef;
  return AllFinite(grad);
}

}  // namespace dpglm

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

#include "dpglm/regularized_erm.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"

namespace dpglm {
namespace {

double DefaultTolerance(const GlmLoss& loss, const ErmOptions& options) {
  if (options.tolerance > 0.0) return options.tolerance;
  return 1e-8 * (1.0 + loss.bound_at_zero());
}

absl::StatusOr<ErmResult> SolveSmooth(const GlmLoss& loss, const Dataset& data,
                                      double radius, double lambda,
                                      const ErmOptions& options) {
  const double h = *loss.smoothness();
  const double x2 = data.x_bound() * data.x_bound();
  const double step = 1.0 / (h * x2 + lambda);
  const double tol = DefaultTolerance(loss, options);
  const int d = data.dim();
  Vector w = Vector::Zero(d);
  Vector grad(d);
  Vector next(d);
  double residual = std::numeric_limits<double>::infinity();
  for (int64_t it = 0; it < options.max_iterations; ++it) {
    if (!EmpiricalGradient(loss, data, w, grad)) {
      return absl::InternalError(
          absl::StrCat("non-finite gradient at iteration ", it));
    }
    grad += lambda * w;
    next = w - step * grad;
    ProjectBallInPlace(next, radius);
    residual = std::sqrt(OrderedSquaredNorm(next - w)) / step;
    if (residual <= tol) {
      ErmResult r;
      r.w = std::move(w);
      r.residual = residual;
      r.tolerance = tol;
      r.iterations = it;
      r.objective = RegularizedObjective(loss, data, r.w, lambda);
      r.method = "projected-gradient";
      return r;
    }
    w.swap(next);
  }
  return absl::DeadlineExceededError(absl::StrCat(
      "projected gradient did not reach tolerance ", tol, " in ",
      options.max_iterations, " iterations (residual ", residual, ")"));
}

// Conjugate of r(w) = (lambda/2)||w||^2 + indicator(||w|| <= B).
double RegularizerConjugate(double v_norm, double lambda, double radius) {
  if (v_norm <= lambda * radius) return v_norm * v_norm / (2.0 * lambda);
  return radius * v_norm - 0.5 * lambda * radius * radius;
}

Vector PrimalFromDual(const Vector& v, double lambda, double radius) {
  Vector w = v / lambda;
  ProjectBallInPlace(w, radius);
  return w;
}

absl::StatusOr<ErmResult> SolveAbsoluteDeviation(const GlmLoss& loss,
                                                 const Dataset& data,
                                                 double radius, double lambda,
                                                 const ErmOptions& options) {
  const double c = *loss.regularity().abs_deviation_scale;
  const int n = data.n();
  const int d = data.dim();
  const Matrix& x = data.features();
  const double tol = DefaultTolerance(loss, options);
  std::vector<double> row_norm2(n);
  for (int i = 0; i < n; ++i) row_norm2[i] = x.row(i).squaredNorm();

  Vector alpha = Vector::Zero(n);
  Vector v = Vector::Zero(d);
  Vector trial(d);
  double certificate = std::numeric_limits<double>::infinity();
  const double inv_n = 1.0 / n;

  // h(delta) = <x_i, w(v + delta x_i / n)> - y_i is nondecreasing in delta;
  // the coordinate maximizer is its root clipped to the box.
  auto h = [&](int i, double delta) {
    trial = v + (delta * inv_n) * x.row(i).transpose();
    return x.row(i).dot(PrimalFromDual(trial, lambda, radius)) - data.y(i);
  };

  for (int64_t epoch = 0; epoch < options.max_iterations; ++epoch) {
    for (int i = 0; i < n; ++i) {
      if (row_norm2[i] == 0.0) continue;
      const double lo = -c - alpha[i];
      const double hi = c - alpha[i];
      const double xv = x.row(i).dot(v);
      double delta = n * (lambda * data.y(i) - xv) / row_norm2[i];
      delta = std::clamp(delta, lo, hi);
      trial = v + (delta * inv_n) * x.row(i).transpose();
      const bool inside = std::sqrt(trial.squaredNorm()) <= lambda * radius;
      if (!inside) {
        if (h(i, lo) >= 0.0) {
          delta = lo;
        } else if (h(i, hi) <= 0.0) {
          delta = hi;
        } else {
          double a = lo;
          double b = hi;
          for (int k = 0; k < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++k) {
            const double mid = 0.5 * (a + b);
            if (h(i, mid) < 0.0) {
              a = mid;
            } else {
              b = mid;
            }
          }
          delta = 0.5 * (a + b);
        }
      }
      if (delta != 0.0) {
        alpha[i] += delta;
        v += (delta * inv_n) * x.row(i).transpose();
      }
    }
    // Recompute v from alpha so rounding does not drift across epochs.
    v.noalias() = x.transpose() * alpha;
    v *= inv_n;
    const Vector w = PrimalFromDual(v, lambda, radius);
    const double primal = RegularizedObjective(loss, data, w, lambda);
    const double dual = inv_n * alpha.dot(data.labels()) -
                        RegularizerConjugate(v.norm(), lambda, radius);
    const double gap = std::max(primal - dual, 0.0);
    certificate = std::sqrt(2.0 * gap / lambda);
    const double floor =
        64.0 * std::numeric_limits<double>::epsilon() *
        (std::abs(primal) + std::abs(dual));
    if (certificate <= tol || gap <= floor) {
      ErmResult r;
      r.w = w;
      r.residual = certificate;
      r.tolerance = tol;
      r.iterations = epoch + 1;
      r.objective = primal;
      r.method = "dual-coordinate-ascent";
      return r;
    }
  }
  return absl::DeadlineExceededError(absl::StrCat(
      "dual coordinate ascent did not close the gap in ",
      options.max_iterations, " epochs (distance bound ", certificate, ")"));
}

}  // namespace

double RegularizedObjective(const GlmLoss& loss, const Dataset& data,
                            const Vector& w, double lambda) {
  return EmpiricalRisk(loss, data, w) + 0.5 * lambda * OrderedSquaredNorm(w);
}

absl::StatusOr<ErmResult> RegularizedErmSolve(const GlmLoss& loss,
                                              const Dataset& data,
                                              double radius, double lambda,
                                              const ErmOptions& options) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    return absl::InvalidArgumentError(
        absl::StrCat("regularization must be finite and > 0, got ", lambda));
  }
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    return absl::InvalidArgumentError("radius must be finite and >= 0");
  }
  if (data.n() < 1) return absl::InvalidArgumentError("empty dataset");
  if (options.max_iterations < 1) {
    return absl::InvalidArgumentError("iteration cap must be >= 1");
  }
  if (loss.smoothness().has_value()) {
    return SolveSmooth(loss, data, radius, lambda, options);
  }
  if (loss.regularity().abs_deviation_scale.has_value()) {
    return SolveAbsoluteDeviation(loss, data, radius, lambda, options);
  }
  return absl::UnimplementedError(absl::StrCat(
      "no ERM solver for loss '", loss.name(),
      "': needs a smooth link or an absolute-deviation link"));
}

}  // namespace dpglm

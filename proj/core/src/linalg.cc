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

#include "dpglm/linalg.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace dpglm {

bool AllFinite(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) return false;
  }
  return true;
}

absl::Status CheckFinite(const Vector& v, absl::string_view what) {
  if (!AllFinite(v)) {
    return absl::InvalidArgumentError(
        absl::StrCat(what, " contains a non-finite entry"));
  }
  return absl::OkStatus();
}

double OrderedDot(const Vector& a, const Vector& b) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double OrderedSquaredNorm(const Vector& a) { return OrderedDot(a, a); }

void ProjectBallInPlace(Vector& w, double radius) {
  const double norm = std::sqrt(OrderedSquaredNorm(w));
  if (norm > radius) {
    if (radius == 0.0) {
      w.setZero();
    } else {
      // Rounding can leave the scaled norm a few ulps above the radius; step
      // the factor down so a second projection is a no-op.
      const Vector original = w;
      double scale = radius / norm;
      w = original * scale;
      while (std::sqrt(OrderedSquaredNorm(w)) > radius) {
        scale = std::nextafter(scale, 0.0);
        w = original * scale;
      }
    }
  }
}

absl::StatusOr<Vector> ProjectBall(const Vector& w, double radius) {
  if (!(radius >= 0.0)) {
    return absl::InvalidArgumentError("projection radius must be >= 0");
  }
  if (!AllFinite(w)) {
    return absl::InvalidArgumentError("cannot project a non-finite vector");
  }
  Vector out = w;
  ProjectBallInPlace(out, radius);
  return out;
}

absl::StatusOr<Vector> SampleGaussianVector(Rng& rng, int d, double sigma2) {
  if (d < 0) return absl::InvalidArgumentError("dimension must be >= 0");
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    return absl::InvalidArgumentError(
        absl::StrCat("noise variance must be finite and >= 0, got ", sigma2));
  }
  Vector v = Vector::Zero(d);
  if (sigma2 == 0.0) return v;
  const double sigma = std::sqrt(sigma2);
  for (int i = 0; i < d; ++i) v[i] = sigma * rng.Gaussian();
  return v;
}

absl::StatusOr<double> SampleLaplace(Rng& rng, double scale) {
  if (!(scale >= 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be finite and >= 0, got ", scale));
  }
  if (scale == 0.0) return 0.0;
  return rng.LaplaceUnchecked(scale);
}

Vector SampleSphere(Rng& rng, int d, double radius) {
  Vector v(d);
  double norm2 = 0.0;
  do {
    for (int i = 0; i < d; ++i) v[i] = rng.Gaussian();
    norm2 = OrderedSquaredNorm(v);
  } while (norm2 == 0.0);
  v *= radius / std::sqrt(norm2);
  // Rounding can leave the norm one ulp above the radius.
  ProjectBallInPlace(v, radius);
  return v;
}

}  // namespace dpglm

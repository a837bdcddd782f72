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

#include "dpglm/jl.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace dpglm {

absl::StatusOr<JlMatrix> JlMatrix::Sample(Rng& rng, int k, int d) {
  if (k <= 0 || d <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("embedding dimensions must be positive, got k=", k,
                     " d=", d));
  }
  Matrix phi(k, d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(k));
  double sum_sq = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < d; ++j) {
      const double g = rng.Gaussian();
      phi(i, j) = scale * g;
      sum_sq += g * g;
    }
  }
  // Mean of k*d unit chi-square draws; standard deviation sqrt(2 / (k d)).
  // Too few entries for the normal approximation are not checked.
  const double entries = static_cast<double>(k) * d;
  const double mean = sum_sq / entries;
  if (entries >= 64 && std::abs(mean - 1.0) > 8.0 * std::sqrt(2.0 / entries)) {
    return absl::InternalError(
        absl::StrCat("embedding calibration check failed, mean square ", mean));
  }
  return JlMatrix(std::move(phi), k, d, /*identity=*/false);
}

JlMatrix JlMatrix::Identity(int d) {
  return JlMatrix(Matrix(), d, d, /*identity=*/true);
}

absl::StatusOr<Vector> JlMatrix::Apply(const Vector& x) const {
  if (x.size() != cols_) {
    return absl::InvalidArgumentError(absl::StrCat(
        "embedding expects dimension ", cols_, ", got ", x.size()));
  }
  if (identity_) return x;
  Vector out(rows_);
  for (int i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (int j = 0; j < cols_; ++j) s += phi_(i, j) * x[j];
    out[i] = s;
  }
  return out;
}

absl::StatusOr<Vector> JlMatrix::Lift(const Vector& w) const {
  if (w.size() != rows_) {
    return absl::InvalidArgumentError(absl::StrCat(
        "lift expects dimension ", rows_, ", got ", w.size()));
  }
  if (identity_) return w;
  Vector out = Vector::Zero(cols_);
  for (int i = 0; i < rows_; ++i) {
    const double wi = w[i];
    for (int j = 0; j < cols_; ++j) out[j] += phi_(i, j) * wi;
  }
  return out;
}

absl::StatusOr<Matrix> JlMatrix::ApplyRows(const Matrix& x) const {
  if (x.cols() != cols_) {
    return absl::InvalidArgumentError(absl::StrCat(
        "embedding expects dimension ", cols_, ", got ", x.cols()));
  }
  if (identity_) return x;
  Matrix out(x.rows(), rows_);
  for (Eigen::Index r = 0; r < x.rows(); ++r) {
    for (int i = 0; i < rows_; ++i) {
      double s = 0.0;
      for (int j = 0; j < cols_; ++j) s += phi_(i, j) * x(r, j);
      out(r, i) = s;
    }
  }
  return out;
}

absl::StatusOr<int64_t> RequiredJlDimension(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError(
        "JL dimension needs alpha > 0 and beta in (0, 1)");
  }
  return static_cast<int64_t>(
      std::ceil(8.0 * std::log(2.0 / beta) / (alpha * alpha)));
}

int ClampEmbeddingDimension(int64_t k, int d) {
  return static_cast<int>(std::clamp<int64_t>(k, 1, std::max(d, 1)));
}

}  // namespace dpglm

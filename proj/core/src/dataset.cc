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

#include "dpglm/dataset.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace dpglm {

absl::StatusOr<Dataset> Dataset::Create(Matrix features, Vector labels,
                                        double x_bound, double y_bound) {
  if (features.rows() != labels.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("feature rows (", features.rows(),
                     ") do not match label count (", labels.size(), ")"));
  }
  if (!(x_bound >= 0.0) || !std::isfinite(x_bound) || !(y_bound >= 0.0) ||
      !std::isfinite(y_bound)) {
    return absl::InvalidArgumentError("bounds must be finite and >= 0");
  }
  const double x_limit = x_bound * (1.0 + kBoundSlack);
  const double y_limit = y_bound * (1.0 + kBoundSlack);
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    double norm2 = 0.0;
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
      const double v = features(i, j);
      if (!std::isfinite(v)) {
        return absl::InvalidArgumentError(
            absl::StrCat("point ", i, " has a non-finite feature"));
      }
      norm2 += v * v;
    }
    if (std::sqrt(norm2) > x_limit) {
      return absl::InvalidArgumentError(
          absl::StrCat("point ", i, " has norm ", std::sqrt(norm2),
                       " above the feature bound ", x_bound));
    }
    if (!std::isfinite(labels[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("point ", i, " has a non-finite label"));
    }
    if (std::abs(labels[i]) > y_limit) {
      return absl::InvalidArgumentError(
          absl::StrCat("label ", i, " = ", labels[i],
                       " exceeds the label bound ", y_bound));
    }
  }
  return Dataset(std::move(features), std::move(labels), x_bound, y_bound);
}

absl::StatusOr<Dataset> Dataset::Slice(int begin, int end) const {
  if (begin < 0 || end > n() || begin > end) {
    return absl::OutOfRangeError(
        absl::StrCat("slice [", begin, ", ", end, ") outside [0, ", n(), ")"));
  }
  return Dataset(features_.middleRows(begin, end - begin),
                 labels_.segment(begin, end - begin), x_bound_, y_bound_);
}

absl::StatusOr<Dataset> Dataset::WithReplacedPoint(int i, const Vector& x,
                                                   double y) const {
  if (i < 0 || i >= n()) {
    return absl::OutOfRangeError(absl::StrCat("index ", i, " out of range"));
  }
  if (x.size() != dim()) {
    return absl::InvalidArgumentError("replacement point has wrong dimension");
  }
  Matrix f = features_;
  Vector l = labels_;
  f.row(i) = x.transpose();
  l[i] = y;
  return Create(std::move(f), std::move(l), x_bound_,
                std::max(y_bound_, std::abs(y)));
}

}  // namespace dpglm

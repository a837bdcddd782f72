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

#ifndef DPGLM_DATASET_H_
#define DPGLM_DATASET_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "dpglm/linalg.h"

namespace dpglm {

// n labelled points in R^d with certified bounds ||x_i|| <= x_bound and
// |y_i| <= y_bound. Bounds are checked at construction.
class Dataset {
 public:
  static absl::StatusOr<Dataset> Create(Matrix features, Vector labels,
                                        double x_bound, double y_bound);

  int n() const { return static_cast<int>(labels_.size()); }
  int dim() const { return static_cast<int>(features_.cols()); }
  double x_bound() const { return x_bound_; }
  double y_bound() const { return y_bound_; }

  const Matrix& features() const { return features_; }
  const Vector& labels() const { return labels_; }
  Vector x(int i) const { return features_.row(i).transpose(); }
  double y(int i) const { return labels_[i]; }

  // Points [begin, end) with the same bounds.
  absl::StatusOr<Dataset> Slice(int begin, int end) const;
  // Copy with point i replaced. The label bound grows if needed; the feature
  // bound must still hold.
  absl::StatusOr<Dataset> WithReplacedPoint(int i, const Vector& x,
                                            double y) const;

 private:
  Dataset(Matrix features, Vector labels, double x_bound, double y_bound)
      : features_(std::move(features)),
        labels_(std::move(labels)),
        x_bound_(x_bound),
        y_bound_(y_bound) {}

  Matrix features_;
  Vector labels_;
  double x_bound_;
  double y_bound_;
};

// Sidecar metadata written next to a dataset CSV.
struct DatasetMetadata {
  int64_t n = 0;
  int d = 0;
  double x_bound = 0.0;
  double y_bound = 0.0;
  std::optional<int> rank;
  std::string generator;
  uint64_t seed = 0;
  std::map<std::string, double> parameters;
};

// Relative slack used when checking norm bounds, to absorb rounding in
// generators that place points exactly on the boundary.
inline constexpr double kBoundSlack = 1e-12;

}  // namespace dpglm

#endif  // DPGLM_DATASET_H_

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

#ifndef DPGLM_LINALG_H_
#define DPGLM_LINALG_H_

#include "absl/strings/string_view.h"

#include "Eigen/Core"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpglm/rng.h"

namespace dpglm {

using Vector = Eigen::VectorXd;
// Row-major so each data point is a contiguous row.
using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

bool AllFinite(const Vector& v);
absl::Status CheckFinite(const Vector& v, absl::string_view what);

// Sequential left-to-right sums, so results do not depend on vectorization
// width or thread count.
double OrderedDot(const Vector& a, const Vector& b);
double OrderedSquaredNorm(const Vector& a);

// Euclidean projection onto the centered ball of the given radius.
absl::StatusOr<Vector> ProjectBall(const Vector& w, double radius);
// Unchecked in-place form used in inner loops.
void ProjectBallInPlace(Vector& w, double radius);

// d-dimensional vector with i.i.d. N(0, sigma2) entries. sigma2 == 0 returns
// zeros without consuming randomness.
absl::StatusOr<Vector> SampleGaussianVector(Rng& rng, int d, double sigma2);
// Laplace(0, scale). scale == 0 returns 0 without consuming randomness.
absl::StatusOr<double> SampleLaplace(Rng& rng, double scale);

// Uniform draw from the sphere of the given radius in R^d.
Vector SampleSphere(Rng& rng, int d, double radius);

}  // namespace dpglm

#endif  // DPGLM_LINALG_H_

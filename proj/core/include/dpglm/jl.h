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

#ifndef DPGLM_JL_H_
#define DPGLM_JL_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "dpglm/linalg.h"
#include "dpglm/rng.h"

namespace dpglm {

// Random linear embedding R^d -> R^k with i.i.d. N(0, 1/k) entries, or the
// identity when the requested dimension is not smaller than d.
class JlMatrix {
 public:
  // Draws a k x d Gaussian matrix. Fails on zero dimensions, or if the
  // realized entry scale is implausibly far from 1/k.
  static absl::StatusOr<JlMatrix> Sample(Rng& rng, int k, int d);
  static JlMatrix Identity(int d);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_identity() const { return identity_; }
  const Matrix& entries() const { return phi_; }

  // x in R^d -> Phi x in R^k.
  absl::StatusOr<Vector> Apply(const Vector& x) const;
  // w in R^k -> Phi^T w in R^d.
  absl::StatusOr<Vector> Lift(const Vector& w) const;
  // Applies the embedding to every row of `x` (n x d), giving n x k.
  absl::StatusOr<Matrix> ApplyRows(const Matrix& x) const;

 private:
  JlMatrix(Matrix phi, int rows, int cols, bool identity)
      : phi_(std::move(phi)), rows_(rows), cols_(cols), identity_(identity) {}

  Matrix phi_;
  int rows_;
  int cols_;
  bool identity_;
};

// Smallest k for which the embedding preserves one inner product to within
// alpha with probability 1 - beta: ceil(8 ln(2 / beta) / alpha^2).
absl::StatusOr<int64_t> RequiredJlDimension(double alpha, double beta);

// Clamps a computed embedding dimension into [1, d].
int ClampEmbeddingDimension(int64_t k, int d);

}  // namespace dpglm

#endif  // DPGLM_JL_H_

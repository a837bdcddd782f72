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

#ifndef DPGLM_REGULARIZED_ERM_H_
#define DPGLM_REGULARIZED_ERM_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "dpglm/dataset.h"
#include "dpglm/glm_loss.h"

namespace dpglm {

struct ErmOptions {
  // Stopping tolerance. Non-positive selects 1e-8 (1 + Y^2).
  double tolerance = 0.0;
  int64_t max_iterations = 100000;
};

struct ErmResult {
  Vector w;
  // Smooth path: projected-gradient residual. Dual path: certified bound
  // sqrt(2 gap / lambda) on the distance to the exact minimizer.
  double residual = 0.0;
  double tolerance = 0.0;
  int64_t iterations = 0;
  double objective = 0.0;
  std::string method;
};

// Minimizes L(w; S) + (lambda / 2) ||w||^2 over ||w|| <= radius.
//
// Smooth links use projected gradient descent with step 1 / (H X^2 + lambda)
// from w = 0, stopping once the projected-gradient residual is within
// tolerance. Links of the form c |z - y| use cyclic dual coordinate ascent and
// stop on the duality gap, which certifies the distance to the minimizer.
// Exhausting the iteration cap is an error.
absl::StatusOr<ErmResult> RegularizedErmSolve(const GlmLoss& loss,
                                              const Dataset& data,
                                              double radius, double lambda,
                                              const ErmOptions& options = {});

// Objective value L(w; S) + (lambda / 2) ||w||^2.
double RegularizedObjective(const GlmLoss& loss, const Dataset& data,
                            const Vector& w, double lambda);

}  // namespace dpglm

#endif  // DPGLM_REGULARIZED_ERM_H_

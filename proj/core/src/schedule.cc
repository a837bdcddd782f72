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

#include "dpglm/schedule.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"

namespace dpglm {

absl::StatusOr<OptimizerSchedule> ScheduleNoisyGd(double smoothness_tilde,
                                                  double y_norm, double radius,
                                                  int64_t n, int d,
                                                  const PrivacyBudget& budget) {
  if (!(smoothness_tilde > 0.0) || !std::isfinite(smoothness_tilde)) {
    return absl::InvalidArgumentError(
        absl::StrCat("smoothness must be > 0, got ", smoothness_tilde));
  }
  if (!(y_norm >= 0.0) || !(radius >= 0.0) || !std::isfinite(radius)) {
    return absl::InvalidArgumentError("||Y|| and B must be finite and >= 0");
  }
  if (n < 1 || d < 1) {
    return absl::InvalidArgumentError("n and d must be >= 1");
  }
  const double h = smoothness_tilde;
  OptimizerSchedule s;
  s.method = budget.is_private() ? "noisy-gd" : "gd";
  s.steps = n;
  s.radius = radius;
  s.smoothness = h;
  s.dimension = d;
  s.budget = budget;
  s.lipschitz = 2.0 * y_norm * std::sqrt(h) + 2.0 * h * radius;
  double sigma = 0.0;
  if (budget.is_private()) {
    absl::StatusOr<double> v = NoisyGdNoiseVariance(s.lipschitz, s.steps, n,
                                                    budget);
    if (!v.ok()) return v.status();
    s.noise_variance = *v;
    sigma = std::sqrt(*v);
  }
  const double scale = std::max(std::sqrt(h) * y_norm, sigma * std::sqrt(d));
  const double first =
      scale > 0.0 ? radius / (std::sqrt(static_cast<double>(s.steps)) * scale)
                  : std::numeric_limits<double>::infinity();
  s.step_size = std::min(first, 1.0 / (4.0 * h));
  if (radius == 0.0) {
    s.degenerate = true;
    s.warnings.push_back("B = 0: every iterate is the zero vector");
  }
  if (y_norm > 0.0) {
    const double n0 = h * radius * radius / (y_norm * y_norm);
    if (static_cast<double>(n) < n0) {
      s.warnings.push_back(absl::StrCat(
          "n = ", n, " is below H~ B^2 / Y^2 = ", n0,
          "; the step-size bound is loose in this regime"));
    }
  }
  return s;
}

}  // namespace dpglm

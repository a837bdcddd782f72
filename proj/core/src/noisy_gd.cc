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

#include "dpglm/noisy_gd.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"

namespace dpglm {
namespace {

absl::Status ValidateRun(const Dataset& data,
                         const OptimizerSchedule& schedule) {
  if (schedule.steps < 1) {
    return absl::InvalidArgumentError("schedule needs at least one step");
  }
  if (data.n() < 1) return absl::InvalidArgumentError("empty dataset");
  if (schedule.dimension != 0 && schedule.dimension != data.dim()) {
    return absl::InvalidArgumentError(
        absl::StrCat("schedule is for dimension ", schedule.dimension,
                     " but the data has ", data.dim()));
  }
  if (!(schedule.step_size >= 0.0) || !(schedule.noise_variance >= 0.0) ||
      !(schedule.radius >= 0.0)) {
    return absl::InvalidArgumentError("schedule has negative entries");
  }
  return absl::OkStatus();
}

void AddNoise(Rng& rng, double sigma, Vector& g) {
  if (sigma == 0.0) return;
  for (Eigen::Index i = 0; i < g.size(); ++i) g[i] += sigma * rng.Gaussian();
}

TrainedModel Finish(const GlmLoss& loss, const Dataset& data,
                    const OptimizerSchedule& schedule, Vector average,
                    double max_norm, int64_t noise_draws) {
  TrainedModel m;
  m.w = std::move(average);
  m.schedule = schedule;
  m.budget_spent = schedule.budget;
  if (schedule.budget.is_private()) {
    m.charges.push_back({schedule.method, schedule.budget.epsilon(),
                         schedule.budget.delta()});
  }
  m.subgaussian_parameter = schedule.radius;
  m.warnings = schedule.warnings;
  m.diagnostics["final_empirical_risk"] = EmpiricalRisk(loss, data, m.w);
  m.diagnostics["output_norm"] = std::sqrt(OrderedSquaredNorm(m.w));
  m.diagnostics["max_iterate_norm"] = max_norm;
  m.diagnostics["noise_variance_injected"] = schedule.noise_variance;
  m.diagnostics["noise_draws"] = static_cast<double>(noise_draws);
  return m;
}

}  // namespace

absl::StatusOr<TrainedModel> NoisyGd(const GlmLoss& loss, const Dataset& data,
                                     const OptimizerSchedule& schedule,
                                     Rng& rng, NoisyGdTrace* trace) {
  absl::Status valid = ValidateRun(data, schedule);
  if (!valid.ok()) return valid;
  const int d = data.dim();
  const double sigma = std::sqrt(schedule.noise_variance);
  const double eta = schedule.step_size;
  Vector w = Vector::Zero(d);
  Vector sum = Vector::Zero(d);
  Vector grad(d);
  double max_norm = 0.0;
  int64_t noise_draws = 0;
  if (trace != nullptr) {
    trace->iterate_risks.clear();
    trace->iterate_risks.reserve(schedule.steps);
  }
  for (int64_t t = 0; t < schedule.steps; ++t) {
    if (trace != nullptr) {
      trace->iterate_risks.push_back(EmpiricalRisk(loss, data, w));
    }
    if (!EmpiricalGradient(loss, data, w, grad)) {
      return absl::InternalError(
          absl::StrCat("non-finite gradient at step ", t));
    }
    AddNoise(rng, sigma, grad);
    if (sigma > 0.0) noise_draws += d;
    w -= eta * grad;
    ProjectBallInPlace(w, schedule.radius);
    max_norm = std::max(max_norm, std::sqrt(OrderedSquaredNorm(w)));
    sum += w;
  }
  Vector average = sum / static_cast<double>(schedule.steps);
  return Finish(loss, data, schedule, std::move(average), max_norm,
                noise_draws);
}

absl::StatusOr<TrainedModel> NoisySgd(const GlmLoss& loss, const Dataset& data,
                                      const OptimizerSchedule& schedule,
                                      Rng& rng) {
  absl::Status valid = ValidateRun(data, schedule);
  if (!valid.ok()) return valid;
  const int d = data.dim();
  const int n = data.n();
  const double sigma = std::sqrt(schedule.noise_variance);
  const double eta = schedule.step_size;
  const Matrix& x = data.features();
  Vector w = Vector::Zero(d);
  Vector sum = Vector::Zero(d);
  Vector grad(d);
  double max_norm = 0.0;
  int64_t noise_draws = 0;
  for (int64_t t = 0; t < schedule.steps; ++t) {
    const int i = static_cast<int>(rng.UniformIndex(n));
    const double z = x.row(i).dot(w);
    const double c = loss.LinkDerivative(z, data.y(i));
    if (!std::isfinite(c)) {
      return absl::InternalError(
          absl::StrCat("non-finite gradient at step ", t));
    }
    grad = c * x.row(i).transpose();
    AddNoise(rng, sigma, grad);
    if (sigma > 0.0) noise_draws += d;
    w -= eta * grad;
    ProjectBallInPlace(w, schedule.radius);
    max_norm = std::max(max_norm, std::sqrt(OrderedSquaredNorm(w)));
    sum += w;
  }
  Vector average = sum / static_cast<double>(schedule.steps);
  return Finish(loss, data, schedule, std::move(average), max_norm,
                noise_draws);
}

}  // namespace dpglm

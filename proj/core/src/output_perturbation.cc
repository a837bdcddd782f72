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

#include "dpglm/output_perturbation.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace dpglm {
namespace {

absl::Status CheckRegime(const GlmLoss& loss, LossRegime regime) {
  if (regime == LossRegime::kSmooth && !loss.smoothness().has_value()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "smooth output perturbation needs a smooth loss; '", loss.name(),
        "' is not"));
  }
  if (regime == LossRegime::kLipschitz && !loss.link_lipschitz().has_value()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "Lipschitz output perturbation needs a Lipschitz loss; '", loss.name(),
        "' is not"));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<double> OutputPerturbationLambda(const GlmLoss& loss,
                                                double x_bound, double radius,
                                                int64_t n,
                                                const PrivacyBudget& budget,
                                                LossRegime regime) {
  absl::Status ok = CheckRegime(loss, regime);
  if (!ok.ok()) return ok;
  if (!budget.is_private() || budget.delta() <= 0.0) {
    return absl::InvalidArgumentError(
        "output perturbation needs a finite budget with delta > 0");
  }
  if (!(radius > 0.0)) {
    return absl::InvalidArgumentError("output perturbation needs B > 0");
  }
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  const double eps = budget.epsilon();
  const double log_inv_delta = std::log(1.0 / budget.delta());
  const double nn = static_cast<double>(n);
  double lambda = 0.0;
  if (regime == LossRegime::kSmooth) {
    const double h = *loss.smoothness();
    const double base = (loss.y_norm() + h * radius * x_bound * x_bound) *
                        std::sqrt(h) * x_bound / (radius * nn * eps);
    lambda = std::pow(base, 2.0 / 3.0) * std::cbrt(log_inv_delta);
  } else {
    const double g = *loss.link_lipschitz();
    lambda = g * x_bound * std::pow(log_inv_delta, 0.25) /
             (radius * std::sqrt(nn * eps));
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    return absl::InvalidArgumentError(
        absl::StrCat("degenerate regularization strength ", lambda));
  }
  return lambda;
}

absl::StatusOr<OptimizerSchedule> ScheduleOutputPerturbation(
    const GlmLoss& loss, double x_bound, double radius, int64_t n, int d,
    const PrivacyBudget& budget, LossRegime regime) {
  absl::StatusOr<double> lambda =
      OutputPerturbationLambda(loss, x_bound, radius, n, budget, regime);
  if (!lambda.ok()) return lambda.status();
  double g = 0.0;
  if (regime == LossRegime::kSmooth) {
    // Smooth-link constant, even if the link also happens to be Lipschitz.
    g =2.0 * loss.y_norm() * std::sqrt(*loss.smoothness()) * x_bound +
        2.0 * (*loss.smoothness()) * radius * x_bound * x_bound;
  } else {
    g = *loss.link_lipschitz();
  }
  absl::StatusOr<double> v = OutputPerturbationNoiseVariance(
      g, x_bound, *lambda, n, budget, regime);
  if (!v.ok()) return v.status();
  OptimizerSchedule s;
  s.method = regime == LossRegime::kSmooth ? "output-perturbation-smooth"
                                           : "output-perturbation-lipschitz";
  s.steps = 0;
  s.regularization = *lambda;
  s.lipschitz = g;
  s.noise_variance = *v;
  s.radius = radius;
  s.smoothness = loss.smoothness().has_value()
                     ? *loss.smoothness() * x_bound * x_bound
                     : 0.0;
  s.dimension = d;
  s.budget = budget;
  return s;
}

absl::StatusOr<TrainedModel> OutputPerturbation(
    const GlmLoss& loss, const Dataset& data, double radius,
    const PrivacyBudget& budget, LossRegime regime, Rng& rng,
    const OutputPerturbationOptions& options) {
  absl::StatusOr<OptimizerSchedule> schedule = ScheduleOutputPerturbation(
      loss, data.x_bound(), radius, data.n(), data.dim(), budget, regime);
  if (!schedule.ok()) return schedule.status();
  if (options.noise_variance_override.has_value()) {
    schedule->noise_variance = *options.noise_variance_override;
    schedule->warnings.push_back("noise variance overridden by caller");
  }
  absl::StatusOr<ErmResult> erm = RegularizedErmSolve(
      loss, data, radius, schedule->regularization, options.erm);
  if (!erm.ok()) return erm.status();
  schedule->steps = erm->iterations;
  absl::StatusOr<Vector> noise =
      SampleGaussianVector(rng, data.dim(), schedule->noise_variance);
  if (!noise.ok()) return noise.status();

  TrainedModel m;
  m.w = erm->w + *noise;
  m.schedule = *schedule;
  m.budget_spent = budget;
  m.charges.push_back({schedule->method, budget.epsilon(), budget.delta()});
  m.subgaussian_parameter = radius + std::sqrt(schedule->noise_variance);
  m.warnings = schedule->warnings;
  m.diagnostics["erm_iterations"] = static_cast<double>(erm->iterations);
  m.diagnostics["erm_residual"] = erm->residual;
  m.diagnostics["erm_tolerance"] = erm->tolerance;
  m.diagnostics["erm_objective"] = erm->objective;
  m.diagnostics["final_empirical_risk"] = EmpiricalRisk(loss, data, m.w);
  m.diagnostics["output_norm"] = std::sqrt(OrderedSquaredNorm(m.w));
  m.diagnostics["noise_variance_injected"] = schedule->noise_variance;
  return m;
}

}  // namespace dpglm

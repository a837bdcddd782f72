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

#include "dpglm/jl_method.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "dpglm/jl.h"
#include "dpglm/noisy_gd.h"
#include "dpglm/schedule.h"

namespace dpglm {
namespace {

absl::Status CheckInputs(const GlmLoss& loss, double radius,
                         const PrivacyBudget& budget, LossRegime regime) {
  if (regime == LossRegime::kSmooth && !loss.smoothness().has_value()) {
    return absl::FailedPreconditionError(
        absl::StrCat("smooth JL method needs a smooth loss; '", loss.name(),
                     "' is not"));
  }
  if (regime == LossRegime::kLipschitz && !loss.link_lipschitz().has_value()) {
    return absl::FailedPreconditionError(
        absl::StrCat("Lipschitz JL method needs a Lipschitz loss; '",
                     loss.name(), "' is not"));
  }
  if (!budget.is_private() || budget.delta() <= 0.0) {
    return absl::InvalidArgumentError(
        "the JL method needs a finite budget with delta > 0");
  }
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    return absl::InvalidArgumentError("radius must be finite and >= 0");
  }
  return absl::OkStatus();
}

// Lipschitz-regime schedule for the embedded problem.
OptimizerSchedule LipschitzSchedule(double g, double x_bound, double radius,
                                    int64_t n, int k,
                                    const PrivacyBudget& budget,
                                    LipschitzJlSolver solver) {
  const double eps = budget.epsilon();
  const double nn = static_cast<double>(n);
  const double log_term = std::log(2.0 / budget.delta());
  OptimizerSchedule s;
  s.steps = n * n;
  const double t = static_cast<double>(s.steps);
  s.radius = radius;
  s.dimension = k;
  s.budget = budget;
  s.lipschitz = g * x_bound;
  if (solver == LipschitzJlSolver::kSgd) {
    s.method = "jl-lipschitz-sgd";
    s.stochastic = true;
    s.noise_variance = 8.0 * t * g * g * x_bound * x_bound * log_term /
                       (nn * nn * eps * eps);
  } else {
    s.method = "jl-lipschitz-full-batch";
    s.noise_variance = 8.0 * g * g * x_bound * x_bound * t *
                       std::log(1.0 / budget.delta()) / (nn * nn * eps * eps);
  }
  const double denom = g * x_bound *
                       (1.0 + std::sqrt(k * log_term) / (nn * eps)) *
                       std::pow(t, 0.75);
  s.step_size = denom > 0.0 ? radius / denom : 0.0;
  if (radius == 0.0) {
    s.degenerate = true;
    s.warnings.push_back("B = 0: every iterate is the zero vector");
  }
  return s;
}

}  // namespace

absl::StatusOr<int64_t> JlEmbeddingDimension(const GlmLoss& loss,
                                             double x_bound, double radius,
                                             int64_t n,
                                             const PrivacyBudget& budget,
                                             LossRegime regime) {
  absl::Status ok = CheckInputs(loss, radius, budget, regime);
  if (!ok.ok()) return ok;
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  const double nn = static_cast<double>(n);
  const double eps = budget.epsilon();
  const double log_term = std::log(2.0 * nn / budget.delta());
  if (regime == LossRegime::kLipschitz) {
    return static_cast<int64_t>(std::ceil(log_term * nn * eps));
  }
  const double h = *loss.smoothness();
  const double denom =
      loss.y_norm() * x_bound + std::sqrt(h) * radius * x_bound * x_bound;
  if (!(denom > 0.0)) return int64_t{1};
  const double base =
      radius * std::sqrt(h) * x_bound * log_term * nn * eps / denom;
  return static_cast<int64_t>(std::floor(std::pow(base, 2.0 / 3.0)));
}

absl::StatusOr<TrainedModel> JlMethod(const GlmLoss& loss, const Dataset& data,
                                      double radius,
                                      const PrivacyBudget& budget,
                                      LossRegime regime, Rng& rng,
                                      const JlOptions& options) {
  absl::Status ok = CheckInputs(loss, radius, budget, regime);
  if (!ok.ok()) return ok;
  if (data.n() < 1) return absl::InvalidArgumentError("empty dataset");
  if (!(options.norm_inflation >= 1.0)) {
    return absl::InvalidArgumentError("norm inflation must be >= 1");
  }
  const int d = data.dim();
  const int64_t n = data.n();
  int64_t k_raw = 0;
  if (options.embedding_dim_override.has_value()) {
    k_raw = *options.embedding_dim_override;
  } else {
    absl::StatusOr<int64_t> k = JlEmbeddingDimension(
        loss, data.x_bound(), radius, n, budget, regime);
    if (!k.ok()) return k.status();
    k_raw = *k;
  }
  const int k = ClampEmbeddingDimension(k_raw, d);
  const bool identity = k_raw >= d;

  // The embedded problem: data, feature bound and radius.
  std::optional<JlMatrix> phi;
  std::optional<Dataset> embedded;
  double x_e = data.x_bound();
  double radius_e = radius;
  double max_embedded_norm = 0.0;
  bool bound_exceeded = false;
  if (!identity) {
    absl::StatusOr<JlMatrix> sampled = JlMatrix::Sample(rng, k, d);
    if (!sampled.ok()) return sampled.status();
    phi = *std::move(sampled);
    absl::StatusOr<Matrix> rows = phi->ApplyRows(data.features());
    if (!rows.ok()) return rows.status();
    for (Eigen::Index i = 0; i < rows->rows(); ++i) {
      max_embedded_norm = std::max(max_embedded_norm, rows->row(i).norm());
    }
    x_e = options.norm_inflation * data.x_bound();
    radius_e = 2.0 * radius;
    // A point beyond the certified bound is the JL failure event; the run
    // proceeds and the diagnostics record it.
    bound_exceeded = max_embedded_norm > x_e;
    absl::StatusOr<Dataset> e =
        Dataset::Create(*std::move(rows), data.labels(),
                        std::max(x_e, max_embedded_norm), data.y_bound());
    if (!e.ok()) return e.status();
    embedded = *std::move(e);
  }
  const Dataset& train = identity ? data : *embedded;

  absl::StatusOr<TrainedModel> inner;
  if (regime == LossRegime::kSmooth) {
    absl::StatusOr<OptimizerSchedule> s =
        ScheduleNoisyGd(*loss.smoothness() * x_e * x_e, loss.y_norm(),
                        radius_e, n, k, budget);
    if (!s.ok()) return s.status();
    s->method = "jl-smooth";
    inner = NoisyGd(loss, train, *s, rng);
  } else {
    const OptimizerSchedule s =
        LipschitzSchedule(*loss.link_lipschitz(), x_e, radius_e, n, k, budget,
                          options.lipschitz_solver);
    inner = options.lipschitz_solver == LipschitzJlSolver::kSgd
                ? NoisySgd(loss, train, s, rng)
                : NoisyGd(loss, train, s, rng);
  }
  if (!inner.ok()) return inner.status();

  TrainedModel m = *std::move(inner);
  if (!identity) {
    absl::StatusOr<Vector> lifted = phi->Lift(m.w);
    if (!lifted.ok()) return lifted.status();
    m.w = *std::move(lifted);
    m.diagnostics["final_empirical_risk"] = EmpiricalRisk(loss, data, m.w);
    m.diagnostics["output_norm"] = std::sqrt(OrderedSquaredNorm(m.w));
  }
  m.subgaussian_parameter = 2.0 * radius;
  m.diagnostics["embedding_dim"] = k;
  m.diagnostics["embedding_dim_unclamped"] = static_cast<double>(k_raw);
  m.diagnostics["identity_embedding"] = identity ? 1.0 : 0.0;
  m.diagnostics["max_embedded_norm"] = max_embedded_norm;
  m.diagnostics["embedded_norm_bound_exceeded"] = bound_exceeded ? 1.0 : 0.0;
  if (bound_exceeded) {
    m.warnings.push_back(
        "an embedded point exceeded the certified norm bound");
  }
  return m;
}

}  // namespace dpglm

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

#include "dpglm/model_selection.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "dpglm/jl_method.h"
#include "dpglm/noisy_gd.h"
#include "dpglm/output_perturbation.h"
#include "dpglm/schedule.h"

namespace dpglm {
namespace {

double MaxPointLoss(const GlmLoss& loss, const Dataset& data, const Vector& w) {
  const Vector z = data.features() * w;
  double worst = 0.0;
  for (int i = 0; i < data.n(); ++i) {
    worst = std::max(worst, loss.Link(z[i], data.y(i)));
  }
  return worst;
}

TrainedModel ZeroModel(int d, const PrivacyBudget& budget) {
  TrainedModel m;
  m.w = Vector::Zero(d);
  m.schedule.method = "zero-model";
  m.schedule.dimension = d;
  m.schedule.degenerate = true;
  m.schedule.budget = budget;
  return m;
}

}  // namespace

double NoisyGdLossBound(const GlmLoss& loss, double x_bound, double radius) {
  const double h = loss.smoothness().value_or(0.0);
  return loss.bound_at_zero() + h * radius * radius * x_bound * x_bound;
}

double OutputPerturbationLossBound(const GlmLoss& loss, double x_bound,
                                   double radius, double sigma2, int grid_size,
                                   double total_delta) {
  const double h = loss.smoothness().value_or(0.0);
  const double log_term =
      total_delta > 0.0 ? std::log(std::max(grid_size, 1) / total_delta) : 0.0;
  return loss.bound_at_zero() + h * x_bound * x_bound * sigma2 * log_term +
         h * radius * radius * x_bound * x_bound;
}

BaseAlgorithm MakeNoisyGdAlgorithm(const GlmLoss& loss, double x_bound) {
  BaseAlgorithm a;
  a.name = "noisy-gd";
  a.train = [loss](const Dataset& data, double radius,
                   const PrivacyBudget& budget,
                   Rng& rng) -> absl::StatusOr<TrainedModel> {
    if (!loss.smoothness().has_value()) {
      return absl::FailedPreconditionError("noisy GD needs a smooth loss");
    }
    absl::StatusOr<OptimizerSchedule> s = ScheduleNoisyGd(
        *loss.smoothness() * data.x_bound() * data.x_bound(), loss.y_norm(),
        radius, data.n(), data.dim(), budget);
    if (!s.ok()) return s.status();
    return NoisyGd(loss, data, *s, rng);
  };
  a.loss_bound = [loss, x_bound](const LossBoundContext& ctx) {
    return NoisyGdLossBound(loss, x_bound, ctx.radius);
  };
  return a;
}

BaseAlgorithm MakeOutputPerturbationAlgorithm(const GlmLoss& loss,
                                              double x_bound,
                                              LossRegime regime) {
  BaseAlgorithm a;
  a.name = regime == LossRegime::kSmooth ? "output-pert-smooth"
                                         : "output-pert-lipschitz";
  a.train = [loss, regime](const Dataset& data, double radius,
                           const PrivacyBudget& budget, Rng& rng) {
    return OutputPerturbation(loss, data, radius, budget, regime, rng);
  };
  a.loss_bound = [loss, x_bound, regime](const LossBoundContext& ctx) {
    absl::StatusOr<OptimizerSchedule> s = ScheduleOutputPerturbation(
        loss, x_bound, ctx.radius, std::max<int64_t>(ctx.n, 1), 1, ctx.budget,
        regime);
    const double sigma2 =
        s.ok() ? s->noise_variance : std::numeric_limits<double>::infinity();
    if (regime == LossRegime::kSmooth) {
      return OutputPerturbationLossBound(loss, x_bound, ctx.radius, sigma2,
                                         ctx.grid_size, ctx.total_delta);
    }
    // |phi(z)| <= Y + G |z| with |z| <= X (B + sigma sqrt(2 log(K / delta))).
    const double log_term =
        ctx.total_delta > 0.0
            ? std::log(std::max(ctx.grid_size, 1) / ctx.total_delta)
            : 0.0;
    return loss.bound_at_zero() +
           loss.link_lipschitz().value_or(0.0) * x_bound *
               (ctx.radius + std::sqrt(sigma2 * 2.0 * log_term));
  };
  return a;
}

BaseAlgorithm MakeJlAlgorithm(const GlmLoss& loss, double x_bound,
                              LossRegime regime) {
  BaseAlgorithm a;
  a.name = regime == LossRegime::kSmooth ? "jl-smooth" : "jl-lipschitz";
  a.train = [loss, regime](const Dataset& data, double radius,
                           const PrivacyBudget& budget, Rng& rng) {
    return JlMethod(loss, data, radius, budget, regime, rng);
  };
  a.loss_bound = [loss, x_bound, regime](const LossBoundContext& ctx) {
    // Embedded iterates have norm <= 2B and embedded points norm <= 2X.
    if (regime == LossRegime::kSmooth) {
      const double h = loss.smoothness().value_or(0.0);
      return 2.0 * (loss.bound_at_zero() +
                    16.0 * h * ctx.radius * ctx.radius * x_bound * x_bound);
    }
    return loss.bound_at_zero() +
           4.0 * loss.link_lipschitz().value_or(0.0) * x_bound * ctx.radius;
  };
  return a;
}

absl::StatusOr<int> BoostModelCount(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta must lie in (0, 1), got ", beta));
  }
  return static_cast<int>(std::ceil(4.0 * std::log(4.0 / beta)));
}

absl::StatusOr<TrainedModel> Boost(const BaseAlgorithm& base,
                                   const GlmLoss& loss, const Dataset& data,
                                   double radius, const PrivacyBudget& budget,
                                   double beta, Rng& rng,
                                   const BoostOptions& options) {
  if (!loss.smoothness().has_value()) {
    return absl::FailedPreconditionError(
        "boosting's selection noise is calibrated for smooth losses");
  }
  if (!budget.is_private()) {
    return absl::InvalidArgumentError("boosting needs a finite budget");
  }
  int m = 0;
  if (options.model_count_override.has_value()) {
    m = *options.model_count_override;
  } else {
    absl::StatusOr<int> count = BoostModelCount(beta);
    if (!count.ok()) return count.status();
    m = *count;
  }
  if (m < 1) return absl::InvalidArgumentError("need at least one model");
  const int n = data.n();
  const int chunk = n / (m + 1);
  if (chunk < 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "n = ", n, " is too small for ", m, " models plus a validation chunk"));
  }
  absl::StatusOr<PrivacyBudget> half =
      PrivacyBudget::Create(budget.epsilon() / 2.0, budget.delta());
  if (!half.ok()) return half.status();

  std::vector<TrainedModel> models;
  models.reserve(m);
  for (int i = 0; i < m; ++i) {
    absl::StatusOr<Dataset> part = data.Slice(i * chunk, (i + 1) * chunk);
    if (!part.ok()) return part.status();
    Rng model_rng = rng.Split(static_cast<uint64_t>(i) + 1);
    absl::StatusOr<TrainedModel> model =
        base.train(*part, radius, *half, model_rng);
    if (!model.ok()) return model.status();
    models.push_back(*std::move(model));
  }
  absl::StatusOr<Dataset> validation = data.Slice(m * chunk, n);
  if (!validation.ok()) return validation.status();

  double gamma = 0.0;
  for (const TrainedModel& model : models) {
    gamma = std::max(gamma, model.subgaussian_parameter);
  }
  const double x2 = data.x_bound() * data.x_bound();
  const double h_tilde = *loss.smoothness() * x2;
  double scale = std::sqrt(4.0 * (loss.bound_at_zero() + h_tilde * gamma *
                                                             gamma * x2) /
                           (static_cast<double>(n) * budget.epsilon()));
  if (options.laplace_scale_override.has_value()) {
    scale = *options.laplace_scale_override;
  }
  std::vector<double> utilities(m);
  for (int i = 0; i < m; ++i) {
    utilities[i] = -EmpiricalRisk(loss, *validation, models[i].w);
  }
  Rng select_rng = rng.Split(0);
  absl::StatusOr<int> chosen = ReportNoisyMax(utilities, scale, select_rng);
  if (!chosen.ok()) return chosen.status();

  TrainedModel out = std::move(models[*chosen]);
  out.budget_spent = budget;
  out.charges = {
      {absl::StrCat(base.name, " x", m, " on disjoint chunks"),
       half->epsilon(), half->delta()},
      {"report-noisy-max", budget.epsilon() - half->epsilon(), 0.0}};
  out.diagnostics["boost_models"] = m;
  out.diagnostics["boost_selected"] = *chosen;
  out.diagnostics["boost_chunk_size"] = chunk;
  out.diagnostics["boost_validation_size"] = validation->n();
  out.diagnostics["boost_laplace_scale"] = scale;
  out.diagnostics["boost_selected_validation_risk"] = -utilities[*chosen];
  out.diagnostics["final_empirical_risk"] = EmpiricalRisk(loss, data, out.w);
  return out;
}

BaseAlgorithm MakeBoostedAlgorithm(BaseAlgorithm base, const GlmLoss& loss,
                                   double beta) {
  BaseAlgorithm a;
  a.name = absl::StrCat("boost(", base.name, ")");
  a.train = [base, loss, beta](const Dataset& data, double radius,
                               const PrivacyBudget& budget, Rng& rng) {
    return Boost(base, loss, data, radius, budget, beta, rng);
  };
  a.loss_bound = [base, beta](const LossBoundContext& ctx) {
    const int m = BoostModelCount(beta).value_or(1);
    LossBoundContext inner = ctx;
    inner.n = std::max<int64_t>(ctx.n / (m + 1), 1);
    absl::StatusOr<PrivacyBudget> half = PrivacyBudget::Create(
        ctx.budget.epsilon() / 2.0, ctx.budget.delta());
    if (half.ok()) inner.budget = *half;
    return base.loss_bound(inner);
  };
  return a;
}

double GridTau(double loss_bound, double y2, int grid_size, double beta,
               int64_t n) {
  const double log_term = std::log(4.0 * grid_size / beta);
  const double nn = static_cast<double>(n);
  return loss_bound * log_term / nn + std::sqrt(4.0 * y2 * log_term / nn);
}

absl::StatusOr<GridSearchResult> PrivateGridSearch(const BaseAlgorithm& base,
                                                   const GlmLoss& loss,
                                                   const Dataset& data,
                                                   int grid_size,
                                                   const PrivacyBudget& budget,
                                                   double beta, Rng& rng) {
  if (grid_size < 1) return absl::InvalidArgumentError("K must be >= 1");
  if (grid_size > 60) return absl::InvalidArgumentError("K must be <= 60");
  if (!(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError("beta must lie in (0, 1)");
  }
  if (!budget.is_private()) {
    return absl::InvalidArgumentError("grid search needs a finite budget");
  }
  const int n = data.n();
  if (n < 2 || n % 2 != 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("grid search needs an even n >= 2, got ", n));
  }
  const int half = n / 2;
  absl::StatusOr<Dataset> s1 = data.Slice(0, half);
  if (!s1.ok()) return s1.status();
  absl::StatusOr<Dataset> s2 = data.Slice(half, n);
  if (!s2.ok()) return s2.status();
  absl::StatusOr<PrivacyBudget> share = budget.Share(2 * grid_size);
  if (!share.ok()) return share.status();
  const double y2 = loss.bound_at_zero();

  GridSearchResult result;
  std::vector<TrainedModel> models;
  std::vector<GemCandidate> gem;
  GridCandidate zero;
  zero.j = 0;
  zero.score = y2;
  zero.validation_risk = EmpiricalRisk(loss, *s2, Vector::Zero(data.dim()));
  zero.max_point_loss = MaxPointLoss(loss, *s2, Vector::Zero(data.dim()));
  zero.w = Vector::Zero(data.dim());
  result.candidates.push_back(zero);
  gem.push_back({0.0, y2});
  for (int j = 1; j <= grid_size; ++j) {
    const double radius = std::ldexp(1.0, j);
    Rng model_rng = rng.Split(static_cast<uint64_t>(j));
    absl::StatusOr<TrainedModel> model =
        base.train(*s1, radius, *share, model_rng);
    if (!model.ok()) return model.status();
    GridCandidate c;
    c.j = j;
    c.radius = radius;
    c.validation_risk = EmpiricalRisk(loss, *s2, model->w);
    c.loss_bound = base.loss_bound(
        {radius, half, *share, grid_size, budget.delta()});
    c.tau = GridTau(c.loss_bound, y2, grid_size, beta, n);
    c.score = c.validation_risk + c.tau;
    c.sensitivity = c.loss_bound / half;
    c.max_point_loss = MaxPointLoss(loss, *s2, model->w);
    c.w = model->w;
    result.candidates.push_back(c);
    gem.push_back({c.sensitivity, c.score});
    models.push_back(*std::move(model));
  }
  absl::StatusOr<PrivacyBudget> gem_budget =
      PrivacyBudget::Create(budget.epsilon() / 2.0, 0.0);
  if (!gem_budget.ok()) return gem_budget.status();
  Rng select_rng = rng.Split(0);
  absl::StatusOr<int> chosen =
      GemSelect(gem, gem_budget->epsilon(), beta / 4.0, select_rng);
  if (!chosen.ok()) return chosen.status();
  result.selected = *chosen;
  result.candidates[*chosen].selected = true;

  TrainedModel out = *chosen == 0 ? ZeroModel(data.dim(), budget)
                                  : std::move(models[*chosen - 1]);
  out.budget_spent = budget;
  out.charges.clear();
  for (int j = 1; j <= grid_size; ++j) {
    out.charges.push_back({absl::StrCat(base.name, " B=", std::ldexp(1.0, j)),
                           share->epsilon(), share->delta()});
  }
  out.charges.push_back({"gem-selection", gem_budget->epsilon(), 0.0});
  out.charges.push_back(
      {"loss-bound failure allowance", 0.0, budget.delta() / 2.0});
  out.diagnostics["grid_size"] = grid_size;
  out.diagnostics["grid_selected_j"] = *chosen;
  out.diagnostics["grid_selected_radius"] = result.candidates[*chosen].radius;
  out.diagnostics["final_empirical_risk"] = EmpiricalRisk(loss, data, out.w);
  result.model = std::move(out);
  return result;
}

absl::StatusOr<int> FlagshipGridSize(const GlmLoss& loss, double x_bound,
                                     int64_t n, double epsilon) {
  if (!loss.smoothness().has_value()) {
    return absl::FailedPreconditionError("grid size formula needs a smooth loss");
  }
  if (!(x_bound > 0.0) || n < 1 || !(epsilon > 0.0)) {
    return absl::InvalidArgumentError("need X > 0, n >= 1 and eps > 0");
  }
  const double h = *loss.smoothness();
  const double y = loss.y_norm();
  const double nn = static_cast<double>(n);
  const double a = y * std::sqrt(nn) / (x_bound * std::sqrt(h));
  const double b = y * y * std::pow(nn * epsilon, 2.0 / 3.0) /
                   (std::sqrt(h) * x_bound * x_bound);
  const double top = std::max(a, b);
  if (!(top > 1.0)) return 1;
  return std::max(1, static_cast<int>(std::ceil(std::log(top))));
}

absl::StatusOr<GridSearchResult> FlagshipPipeline(const GlmLoss& loss,
                                                  const Dataset& data,
                                                  const PrivacyBudget& budget,
                                                  double beta, Rng& rng) {
  absl::StatusOr<int> k =
      FlagshipGridSize(loss, data.x_bound(), data.n(), budget.epsilon());
  if (!k.ok()) return k.status();
  BaseAlgorithm base = MakeBoostedAlgorithm(
      MakeOutputPerturbationAlgorithm(loss, data.x_bound(), LossRegime::kSmooth),
      loss, beta);
  return PrivateGridSearch(base, loss, data, *k, budget, beta, rng);
}

}  // namespace dpglm

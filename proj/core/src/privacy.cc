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

#include "dpglm/privacy.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "dpglm/linalg.h"

namespace dpglm {

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double epsilon,
                                                    double delta) {
  if (!(epsilon > 0.0) || std::isnan(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be > 0, got ", epsilon));
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in [0, 1), got ", delta));
  }
  return PrivacyBudget(epsilon, delta);
}

PrivacyBudget PrivacyBudget::NonPrivate() {
  return PrivacyBudget(std::numeric_limits<double>::infinity(), 0.0);
}

bool PrivacyBudget::is_private() const { return std::isfinite(epsilon_); }

absl::StatusOr<PrivacyBudget> PrivacyBudget::Share(int k) const {
  if (k < 1) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot split a budget into ", k, " parts"));
  }
  return PrivacyBudget(epsilon_ / k, delta_ / k);
}

absl::StatusOr<std::vector<PrivacyBudget>> PrivacyBudget::Split(int k) const {
  absl::StatusOr<PrivacyBudget> share = Share(k);
  if (!share.ok()) return share.status();
  std::vector<PrivacyBudget> parts(k, *share);
  if (!is_private() || k == 1) return parts;
  double eps_sum = 0.0;
  double delta_sum = 0.0;
  for (int i = 0; i + 1 < k; ++i) {
    eps_sum += parts[i].epsilon_;
    delta_sum += parts[i].delta_;
  }
  // eps_sum >= epsilon / 2, so the subtraction is exact and adding it back
  // reproduces epsilon.
  parts.back().epsilon_ = epsilon_ - eps_sum;
  parts.back().delta_ = delta_ - delta_sum;
  return parts;
}

PrivacyBudget ComposeBasic(absl::Span<const PrivacyBudget> parts) {
  double eps = 0.0;
  double delta = 0.0;
  for (const PrivacyBudget& p : parts) {
    eps += p.epsilon();
    delta += p.delta();
  }
  if (!std::isfinite(eps)) return PrivacyBudget::NonPrivate();
  absl::StatusOr<PrivacyBudget> out =
      PrivacyBudget::Create(eps, std::min(delta, std::nextafter(1.0, 0.0)));
  return out.ok() ? *out : PrivacyBudget::NonPrivate();
}

absl::StatusOr<double> NoisyGdNoiseVariance(double lipschitz, int64_t steps,
                                            int64_t n,
                                            const PrivacyBudget& budget) {
  if (!budget.is_private()) {
    return absl::InvalidArgumentError("noise calibration needs a finite budget");
  }
  if (budget.delta() <= 0.0) {
    return absl::InvalidArgumentError(
        "Gaussian noise calibration requires delta > 0");
  }
  if (!(lipschitz >= 0.0) || steps < 1 || n < 1) {
    return absl::InvalidArgumentError(
        "noise calibration needs G >= 0, T >= 1 and n >= 1");
  }
  const double eps = budget.epsilon();
  const double nn = static_cast<double>(n);
  return 8.0 * lipschitz * lipschitz * static_cast<double>(steps) *
         std::log(1.0 / budget.delta()) / (nn * nn * eps * eps);
}

absl::StatusOr<double> OutputPerturbationNoiseVariance(
    double lipschitz, double x_bound, double lambda, int64_t n,
    const PrivacyBudget& budget, LossRegime regime) {
  if (!budget.is_private()) {
    return absl::InvalidArgumentError("noise calibration needs a finite budget");
  }
  if (budget.delta() <= 0.0) {
    return absl::InvalidArgumentError(
        "Gaussian noise calibration requires delta > 0");
  }
  if (!(lambda > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("regularization must be > 0, got ", lambda));
  }
  if (n < 1) return absl::InvalidArgumentError("n must be >= 1");
  const double eps = budget.epsilon();
  const double nn = static_cast<double>(n);
  double g2 = lipschitz * lipschitz;
  if (regime == LossRegime::kLipschitz) g2 *= x_bound * x_bound;
  return 4.0 * g2 * std::log(1.0 / budget.delta()) /
         (lambda * lambda * nn * nn * eps * eps);
}

absl::StatusOr<int> ReportNoisyMax(absl::Span<const double> utilities,
                                   double scale, Rng& rng) {
  if (utilities.empty()) {
    return absl::InvalidArgumentError("report-noisy-max needs candidates");
  }
  int best = -1;
  double best_value = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < utilities.size(); ++i) {
    absl::StatusOr<double> noise = SampleLaplace(rng, scale);
    if (!noise.ok()) return noise.status();
    const double v = utilities[i] + *noise;
    if (std::isnan(v)) {
      return absl::InvalidArgumentError("utility is NaN");
    }
    if (best < 0 || v > best_value) {
      best = static_cast<int>(i);
      best_value = v;
    }
  }
  return best;
}

absl::StatusOr<std::vector<double>> GemNormalizedScores(
    absl::Span<const GemCandidate> candidates, double epsilon, double beta) {
  if (candidates.empty()) {
    return absl::InvalidArgumentError("GEM needs at least one candidate");
  }
  if (!(epsilon > 0.0) || !(beta > 0.0 && beta < 1.0)) {
    return absl::InvalidArgumentError(
        "GEM needs epsilon > 0 and beta in (0, 1)");
  }
  for (const GemCandidate& c : candidates) {
    if (!(c.sensitivity >= 0.0) || !std::isfinite(c.sensitivity) ||
        !std::isfinite(c.score)) {
      return absl::InvalidArgumentError(
          "GEM candidates need finite scores and sensitivities >= 0");
    }
  }
  const size_t count = candidates.size();
  const double t = 2.0 * std::log(static_cast<double>(count) / beta) / epsilon;
  std::vector<double> shifted(count);
  for (size_t i = 0; i < count; ++i) {
    shifted[i] = candidates[i].score + t * candidates[i].sensitivity;
  }
  std::vector<double> normalized(count, 0.0);
  for (size_t i = 0; i < count; ++i) {
    double s = 0.0;  // the j == i term
    for (size_t j = 0; j < count; ++j) {
      if (j == i) continue;
      const double diff = shifted[i] - shifted[j];
      const double denom = candidates[i].sensitivity + candidates[j].sensitivity;
      double term;
      if (denom > 0.0) {
        term = diff / denom;
      } else if (diff > 0.0) {
        term = std::numeric_limits<double>::infinity();
      } else if (diff < 0.0) {
        term = -std::numeric_limits<double>::infinity();
      } else {
        term = 0.0;
      }
      s = std::max(s, term);
    }
    normalized[i] = s;
  }
  return normalized;
}

absl::StatusOr<int> GemSelect(absl::Span<const GemCandidate> candidates,
                              double epsilon, double beta, Rng& rng) {
  absl::StatusOr<std::vector<double>> scores =
      GemNormalizedScores(candidates, epsilon, beta);
  if (!scores.ok()) return scores.status();
  const double lowest = *std::min_element(scores->begin(), scores->end());
  std::vector<double> weights(scores->size());
  double total = 0.0;
  for (size_t i = 0; i < weights.size(); ++i) {
    // lowest is 0 (the minimizer of the shifted score), so weights lie in
    // [0, 1] and the largest is exactly 1.
    weights[i] = std::isinf((*scores)[i])
                     ? 0.0
                     : std::exp(-0.5 * epsilon * ((*scores)[i] - lowest));
    total += weights[i];
  }
  const double u = rng.Uniform() * total;
  double acc = 0.0;
  int last_positive = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    last_positive = static_cast<int>(i);
    acc += weights[i];
    if (u < acc) return static_cast<int>(i);
  }
  return last_positive;
}

}  // namespace dpglm

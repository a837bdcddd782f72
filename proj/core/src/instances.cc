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

#include "dpglm/instances.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "Eigen/QR"
#include "Eigen/SVD"
#include "absl/strings/str_cat.h"

namespace dpglm {
namespace {

class RegressionOracle final : public PopulationOracle {
 public:
  RegressionOracle(Matrix basis, Vector w_star, double noise_std,
                   double x_bound)
      : basis_(std::move(basis)),
        w_star_(std::move(w_star)),
        noise_std_(noise_std),
        x_bound_(x_bound) {}

  double Risk(const Vector& w) const override {
    return ExcessRisk(w) + noise_std_ * noise_std_;
  }
  double ExcessRisk(const Vector& w) const override {
    const Vector coords = basis_.transpose() * (w - w_star_);
    return coords.squaredNorm() * x_bound_ * x_bound_ /
           static_cast<double>(basis_.cols());
  }
  const Vector& Minimizer() const override { return w_star_; }
  double MinimumRisk() const override { return noise_std_ * noise_std_; }

  std::pair<Vector, double> Sample(Rng& rng) const override {
    const Vector z = SampleSphere(rng, static_cast<int>(basis_.cols()), 1.0);
    Vector x = x_bound_ * (basis_ * z);
    ProjectBallInPlace(x, x_bound_);
    const double y = OrderedDot(w_star_, x) + noise_std_ * rng.Gaussian();
    return {std::move(x), y};
  }

 private:
  Matrix basis_;  // d x r, orthonormal columns
  Vector w_star_;
  double noise_std_;
  double x_bound_;
};

// Squared-loss risk of the uniform distribution over a dataset whose rows have
// at most one nonzero coordinate.
class DiagonalEmpiricalOracle final : public PopulationOracle {
 public:
  explicit DiagonalEmpiricalOracle(Dataset data)
      : data_(std::move(data)),
        weights_(Vector::Zero(data_.dim())),
        minimizer_(Vector::Zero(data_.dim())) {
    Vector xy = Vector::Zero(data_.dim());
    const Matrix& f = data_.features();
    for (int i = 0; i < data_.n(); ++i) {
      for (int j = 0; j < data_.dim(); ++j) {
        weights_[j] += f(i, j) * f(i, j);
        xy[j] += f(i, j) * data_.y(i);
      }
    }
    for (int j = 0; j < data_.dim(); ++j) {
      if (weights_[j] > 0.0) minimizer_[j] = xy[j] / weights_[j];
    }
    weights_ /= static_cast<double>(data_.n());
    min_risk_ = Risk(minimizer_);
  }

  double Risk(const Vector& w) const override {
    const Vector r = data_.labels() - data_.features() * w;
    return r.squaredNorm() / data_.n();
  }
  double ExcessRisk(const Vector& w) const override {
    return (weights_.array() * (w - minimizer_).array().square()).sum();
  }
  const Vector& Minimizer() const override { return minimizer_; }
  double MinimumRisk() const override { return min_risk_; }

  std::pair<Vector, double> Sample(Rng& rng) const override {
    const int i = static_cast<int>(rng.UniformIndex(data_.n()));
    return {data_.x(i), data_.y(i)};
  }

 private:
  Dataset data_;
  Vector weights_;
  Vector minimizer_;
  double min_risk_ = 0.0;
};

class LipschitzHardOracle final : public PopulationOracle {
 public:
  LipschitzHardOracle(Vector mu, double alpha, double scale, double x_bound)
      : mu_(std::move(mu)),
        alpha_(alpha),
        scale_(scale),
        x_bound_(x_bound),
        minimizer_(Vector::Zero(mu_.size())) {
    for (int i = 0; i < mu_.size(); ++i) {
      if (mu_[i] > 0.5) minimizer_[i] = scale_;
    }
    min_risk_ = Risk(minimizer_);
  }

  double Risk(const Vector& w) const override {
    const double d = static_cast<double>(mu_.size());
    double sum = 0.0;
    for (int i = 0; i < mu_.size(); ++i) {
      const double wx = w[i] * x_bound_;
      sum += mu_[i] * std::abs(scale_ * x_bound_ - wx) +
             (1.0 - mu_[i]) * std::abs(wx);
    }
    return alpha_ * sum / d;
  }
  const Vector& Minimizer() const override { return minimizer_; }
  double MinimumRisk() const override { return min_risk_; }

  std::pair<Vector, double> Sample(Rng& rng) const override {
    Vector x = Vector::Zero(mu_.size());
    if (!rng.Bernoulli(alpha_)) return {std::move(x), 0.0};
    const int i = static_cast<int>(rng.UniformIndex(mu_.size()));
    x[i] = x_bound_;
    const double z = rng.Bernoulli(mu_[i]) ? 1.0 : 0.0;
    return {std::move(x), scale_ * x_bound_ * z};
  }

 private:
  Vector mu_;
  double alpha_;
  double scale_;  // B / d'^{1/p}
  double x_bound_;
  Vector minimizer_;
  double min_risk_ = 0.0;
};

Matrix RandomOrthonormalBasis(int d, int r, Rng& rng) {
  if (r == d) return Matrix::Identity(d, d);
  Eigen::MatrixXd g(d, r);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < r; ++j) g(i, j) = rng.Gaussian();
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, r);
  return q;
}

}  // namespace

MonteCarloEstimate MonteCarloRisk(const PopulationOracle& oracle,
                                  const GlmLoss& loss, const Vector& w,
                                  int64_t samples, Rng& rng) {
  MonteCarloEstimate out;
  if (samples < 1) return out;
  double mean = 0.0;
  double m2 = 0.0;
  for (int64_t k = 0; k < samples; ++k) {
    auto [x, y] = oracle.Sample(rng);
    const double v = loss.Link(OrderedDot(w, x), y);
    const double delta = v - mean;
    mean += delta / static_cast<double>(k + 1);
    m2 += delta * (v - mean);
  }
  out.mean = mean;
  if (samples > 1) {
    out.standard_error =
        std::sqrt(m2 / static_cast<double>(samples - 1) /
                  static_cast<double>(samples));
  }
  return out;
}

absl::StatusOr<GeneratedInstance> GenerateRegression(
    const RegressionParams& params, Rng& rng) {
  const int d = params.d;
  const int n = params.n;
  const int r = params.rank == 0 ? d : params.rank;
  if (d < 1 || n < 1) {
    return absl::InvalidArgumentError("need d >= 1 and n >= 1");
  }
  if (r < 1 || r > d) {
    return absl::InvalidArgumentError(absl::StrCat("rank ", r, " not in [1, ", d, "]"));
  }
  if (!(params.w_star_norm >= 0.0) || !(params.noise_std >= 0.0) ||
      !(params.x_bound > 0.0) || !std::isfinite(params.w_star_norm) ||
      !std::isfinite(params.noise_std) || !std::isfinite(params.x_bound)) {
    return absl::InvalidArgumentError(
        "w_star_norm, noise_std must be >= 0 and x_bound > 0");
  }
  Matrix basis = RandomOrthonormalBasis(d, r, rng);
  Vector w_star = basis * SampleSphere(rng, r, params.w_star_norm);
  auto oracle = std::make_shared<RegressionOracle>(basis, w_star,
                                                   params.noise_std,
                                                   params.x_bound);
  Matrix features(n, d);
  Vector labels(n);
  double y_max = 0.0;
  for (int i = 0; i < n; ++i) {
    auto [x, y] = oracle->Sample(rng);
    features.row(i) = x.transpose();
    labels[i] = y;
    y_max = std::max(y_max, std::abs(y));
  }
  absl::StatusOr<Dataset> data =
      Dataset::Create(std::move(features), std::move(labels), params.x_bound,
                      y_max);
  if (!data.ok()) return data.status();

  DatasetMetadata meta;
  meta.n = n;
  meta.d = d;
  meta.x_bound = params.x_bound;
  meta.y_bound = y_max;
  meta.rank = r;
  meta.generator = "regression";
  meta.seed = rng.seed();
  meta.parameters = {{"w_star_norm", params.w_star_norm},
                     {"noise_std", params.noise_std},
                     {"rank", static_cast<double>(r)}};
  return GeneratedInstance{*std::move(data), std::move(oracle),
                           std::move(meta), std::move(w_star)};
}

absl::StatusOr<GeneratedInstance> GenerateSmoothHard(
    const SmoothHardParams& params) {
  const int dp = params.d_prime;
  const int n = params.n;
  if (dp < 1 || n < 1) {
    return absl::InvalidArgumentError("need d_prime >= 1 and n >= 1");
  }
  if (!(params.p_mass > 0.0 && params.p_mass <= 1.0)) {
    return absl::InvalidArgumentError("p_mass must be in (0, 1]");
  }
  if (!(params.b_bias >= 0.0 && params.b_bias <= 1.0)) {
    return absl::InvalidArgumentError("b_bias must be in [0, 1]");
  }
  if (!(params.y_bound > 0.0) || !(params.x_bound > 0.0)) {
    return absl::InvalidArgumentError("y_bound and x_bound must be positive");
  }
  if (static_cast<int>(params.signs.size()) != dp) {
    return absl::InvalidArgumentError("signs must have d_prime entries");
  }
  for (int s : params.signs) {
    if (s != 1 && s != -1) {
      return absl::InvalidArgumentError("signs must be +1 or -1");
    }
  }
  const double q = params.p_mass * n / dp;
  if (q < 1.0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "p_mass * n / d_prime = ", q, " < 1 leaves a coordinate empty"));
  }
  const int count = static_cast<int>(std::floor(q));
  const int used = count * dp;
  const int extra_dims = params.dummy_point ? 1 : 0;
  const int d = params.d == 0 ? dp + extra_dims : params.d;
  if (d < dp + extra_dims) {
    return absl::InvalidArgumentError("ambient d is smaller than d_prime");
  }
  if (params.dummy_point && used >= n) {
    return absl::InvalidArgumentError("no filler point left for the dummy");
  }
  const int positives = std::min(
      count, static_cast<int>(std::ceil(count * (1.0 + params.b_bias) / 2.0)));
  const double b_realized = (2.0 * positives - count) / count;

  const double x = params.x_bound;
  const double y = params.y_bound;
  Matrix features = Matrix::Zero(n, d);
  Vector labels = Vector::Zero(n);
  Vector w_star = Vector::Zero(d);
  int row = 0;
  for (int j = 0; j < dp; ++j) {
    const double s = params.signs[j];
    for (int k = 0; k < count; ++k, ++row) {
      features(row, j) = x;
      labels[row] = k < positives ? s * y : -s * y;
    }
    w_star[j] = s * y * b_realized / x;
  }
  const double dummy_scale = 1e-6 * x;
  if (params.dummy_point) {
    features(n - 1, dp) = dummy_scale;
    labels[n - 1] = y;
  }
  absl::StatusOr<Dataset> data =
      Dataset::Create(std::move(features), std::move(labels), x, y);
  if (!data.ok()) return data.status();
  auto oracle = std::make_shared<DiagonalEmpiricalOracle>(*data);
  // Exact per-coordinate values; the oracle's computed minimizer agrees up to
  // rounding.
  if (params.dummy_point) w_star[dp] = oracle->Minimizer()[dp];

  DatasetMetadata meta;
  meta.n = n;
  meta.d = d;
  meta.x_bound = x;
  meta.y_bound = y;
  meta.rank = dp + extra_dims;
  meta.generator = "smooth_hard";
  meta.parameters = {{"d_prime", static_cast<double>(dp)},
                     {"p_mass", params.p_mass},
                     {"b_bias", params.b_bias},
                     {"b_realized", b_realized},
                     {"count_per_coordinate", static_cast<double>(count)},
                     {"dummy_point", params.dummy_point ? 1.0 : 0.0}};
  if (params.dummy_point) meta.parameters["dummy_scale"] = dummy_scale;
  return GeneratedInstance{*std::move(data), std::move(oracle),
                           std::move(meta), std::move(w_star)};
}

absl::StatusOr<GeneratedInstance> GenerateLipschitzHard(
    const LipschitzHardParams& params, Rng& rng) {
  const int dp = params.d_prime;
  const int n = params.n;
  if (dp < 1 || n < 1) {
    return absl::InvalidArgumentError("need d_prime >= 1 and n >= 1");
  }
  if (!(params.alpha_mass >= 0.0 && params.alpha_mass <= 1.0)) {
    return absl::InvalidArgumentError("alpha_mass must be in [0, 1]");
  }
  if (!(params.beta_shape > 0.0) || !std::isfinite(params.beta_shape)) {
    return absl::InvalidArgumentError("beta_shape must be positive");
  }
  if (!(params.radius > 0.0) || !(params.x_bound > 0.0) ||
      !(params.p_norm >= 1.0)) {
    return absl::InvalidArgumentError(
        "radius and x_bound must be positive and p_norm >= 1");
  }
  const double scale = params.radius / std::pow(dp, 1.0 / params.p_norm);
  Vector mu(dp);
  for (int i = 0; i < dp; ++i) {
    mu[i] = rng.Beta(params.beta_shape, params.beta_shape);
  }
  auto oracle = std::make_shared<LipschitzHardOracle>(mu, params.alpha_mass,
                                                      scale, params.x_bound);
  Matrix features(n, dp);
  Vector labels(n);
  for (int i = 0; i < n; ++i) {
    auto [x, y] = oracle->Sample(rng);
    features.row(i) = x.transpose();
    labels[i] = y;
  }
  absl::StatusOr<Dataset> data =
      Dataset::Create(std::move(features), std::move(labels), params.x_bound,
                      scale * params.x_bound);
  if (!data.ok()) return data.status();

  DatasetMetadata meta;
  meta.n = n;
  meta.d = dp;
  meta.x_bound = params.x_bound;
  meta.y_bound = scale * params.x_bound;
  meta.rank = dp;
  meta.generator = "lipschitz_hard";
  meta.seed = rng.seed();
  meta.parameters = {{"d_prime", static_cast<double>(dp)},
                     {"alpha_mass", params.alpha_mass},
                     {"beta_shape", params.beta_shape},
                     {"radius", params.radius},
                     {"p_norm", params.p_norm}};
  Vector comparator = scale * mu;
  return GeneratedInstance{*std::move(data), std::move(oracle),
                           std::move(meta), std::move(comparator)};
}

double BetaAbsDeviationMoment(double beta_shape) {
  // E|z - mu| = 2 E[mu (1 - mu)] and E[mu (1 - mu)] = b / (2 (2b + 1)).
  return beta_shape / (1.0 + 2.0 * beta_shape);
}

double LipschitzHardComparatorResidual(const LipschitzHardParams& params) {
  return params.alpha_mass * params.radius * params.x_bound *
         BetaAbsDeviationMoment(params.beta_shape) /
         std::pow(params.d_prime, 1.0 / params.p_norm);
}

SmoothHardParams AdversarialSmoothPreset(int n, int d, double epsilon,
                                         double radius, double y_bound,
                                         double x_bound, double p_mass,
                                         Rng& rng) {
  SmoothHardParams p;
  p.n = n;
  p.y_bound = y_bound;
  p.x_bound = x_bound;
  p.p_mass = std::clamp(p_mass, 1.0 / std::max(n, 1), 1.0);
  const double raw_dp =
      std::pow(p.p_mass * x_bound * radius * n * epsilon / y_bound, 2.0 / 3.0);
  const int cap = std::max(
      1, std::min(d, static_cast<int>(std::floor(p.p_mass * n))));
  p.d_prime = std::clamp(static_cast<int>(std::floor(raw_dp)), 1, cap);
  p.b_bias = std::clamp(
      std::pow(x_bound * radius / (y_bound * std::sqrt(p.p_mass * n * epsilon)),
               2.0 / 3.0),
      0.0, 1.0);
  p.d = std::max(d, p.d_prime);
  p.signs.resize(p.d_prime);
  for (int& s : p.signs) s = rng.Bernoulli(0.5) ? 1 : -1;
  return p;
}

LipschitzHardParams AdversarialLipschitzPreset(int n, int d, double epsilon,
                                               double radius, double x_bound,
                                               double p_norm) {
  LipschitzHardParams p;
  p.n = n;
  p.radius = radius;
  p.x_bound = x_bound;
  p.p_norm = p_norm;
  p.beta_shape = 1.0 / 16.0;
  const double cap = 48.0 * n * epsilon;
  p.d_prime = d <= cap ? d : std::max(1, static_cast<int>(std::floor(cap)));
  p.alpha_mass = std::min(
      p.d_prime / (48.0 * (1.0 + 2.0 * p.beta_shape) * n * epsilon), 1.0);
  return p;
}

int DesignRank(const Dataset& data, double tol) {
  if (data.n() == 0 || data.dim() == 0) return 0;
  Eigen::MatrixXd f = data.features();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(f);
  const Vector& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s[i] > tol * s[0]) ++rank;
  }
  return rank;
}

}  // namespace dpglm

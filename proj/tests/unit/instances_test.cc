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

#include <cmath>
#include <vector>

#include "Eigen/QR"
#include "dpglm/dataset.h"
#include "dpglm/glm_loss.h"
#include "dpglm/instances.h"
#include "dpglm/rng.h"
#include "gtest/gtest.h"

namespace dpglm {
namespace {

SmoothHardParams SmallHard(double b, std::vector<int> signs) {
  SmoothHardParams p;
  p.d_prime = static_cast<int>(signs.size());
  p.p_mass = 1.0;
  p.b_bias = b;
  p.signs = std::move(signs);
  p.n = 8;
  p.y_bound = 1.0;
  p.x_bound = 1.0;
  return p;
}

// Least squares on the generated design, solved directly.
Vector LeastSquares(const Dataset& data) {
  return data.features().colPivHouseholderQr().solve(data.labels());
}

TEST(RegressionTest, ExcessRiskExamples) {
  RegressionParams p;
  p.d = 4;
  p.n = 10;
  p.w_star_norm = 1.0;
  p.noise_std = 0.3;
  Rng rng(61);
  auto inst = GenerateRegression(p, rng);
  ASSERT_TRUE(inst.ok()) << inst.status();
  const PopulationOracle& o = *inst->oracle;
  EXPECT_EQ(o.ExcessRisk(o.Minimizer()), 0.0);
  EXPECT_NEAR(o.ExcessRisk(Vector::Zero(4)), 0.25, 1e-15);
  EXPECT_NEAR(o.MinimumRisk(), 0.09, 1e-15);
  EXPECT_NEAR(o.Minimizer().norm(), 1.0, 1e-14);
  EXPECT_EQ(inst->comparator, o.Minimizer());
  EXPECT_EQ(inst->metadata.generator, "regression");
}

TEST(RegressionTest, FeaturesOnSphereAndCertified) {
  RegressionParams p;
  p.d = 5;
  p.n = 300;
  p.x_bound = 2.0;
  p.noise_std = 0.1;
  Rng rng(62);
  auto inst = GenerateRegression(p, rng);
  ASSERT_TRUE(inst.ok());
  for (int i = 0; i < p.n; ++i) {
    EXPECT_NEAR(inst->data.x(i).norm(), 2.0, 1e-12);
    EXPECT_LE(std::abs(inst->data.y(i)), inst->data.y_bound());
  }
  EXPECT_EQ(inst->metadata.rank, 5);
}

TEST(RegressionTest, MonteCarloMatchesOracle) {
  for (int rank : {0, 2}) {
    RegressionParams p;
    p.d = 6;
    p.n = 10;
    p.w_star_norm = 1.5;
    p.noise_std = 0.2;
    p.rank = rank;
    Rng rng(63, rank);
    auto inst = GenerateRegression(p, rng);
    ASSERT_TRUE(inst.ok());
    GlmLoss loss = SquaredLoss(inst->data.y_bound());
    Vector w(6);
    for (int i = 0; i < 6; ++i) w[i] = 0.3 * rng.Gaussian();
    MonteCarloEstimate mc =
        MonteCarloRisk(*inst->oracle, loss, w, 1000000, rng);
    const double exact = inst->oracle->Risk(w);
    EXPECT_NEAR(mc.mean, exact, 0.01 * exact) << "rank " << rank;
    EXPECT_LT(mc.standard_error, 0.005 * exact);
  }
}

TEST(RegressionTest, LowRankDesign) {
  RegressionParams p;
  p.d = 10;
  p.n = 200;
  p.rank = 3;
  Rng rng(64);
  auto inst = GenerateRegression(p, rng);
  ASSERT_TRUE(inst.ok());
  EXPECT_EQ(DesignRank(inst->data, 1e-9), 3);
  EXPECT_EQ(inst->metadata.rank, 3);
  p.rank = 11;
  EXPECT_FALSE(GenerateRegression(p, rng).ok());
}

TEST(RegressionTest, SameSeedSameData) {
  RegressionParams p;
  p.d = 3;
  p.n = 20;
  Rng a(65);
  Rng b(65);
  EXPECT_EQ(GenerateRegression(p, a)->data.features(),
            GenerateRegression(p, b)->data.features());
}

TEST(SmoothHardTest, WorkedExampleMinimizer) {
  auto inst = GenerateSmoothHard(SmallHard(0.5, {1, 1}));
  ASSERT_TRUE(inst.ok()) << inst.status();
  EXPECT_EQ(inst->comparator, (Vector(2) << 0.5, 0.5).finished());
  Vector ls = LeastSquares(inst->data);
  EXPECT_NEAR(ls[0], 0.5, 1e-10);
  EXPECT_NEAR(ls[1], 0.5, 1e-10);
  EXPECT_EQ(inst->metadata.parameters.at("b_realized"), 0.5);
}

TEST(SmoothHardTest, BalancedLabelsAndSigns) {
  auto zero = GenerateSmoothHard(SmallHard(0.0, {1, -1}));
  ASSERT_TRUE(zero.ok());
  EXPECT_EQ(zero->comparator, Vector::Zero(2));
  auto flip = GenerateSmoothHard(SmallHard(0.5, {1, -1}));
  ASSERT_TRUE(flip.ok());
  EXPECT_EQ(flip->comparator, (Vector(2) << 0.5, -0.5).finished());
}

TEST(SmoothHardTest, RoundedCountsKeepMinimizerExact) {
  Rng rng(66);
  for (int t = 0; t < 200; ++t) {
    SmoothHardParams p;
    p.d_prime = 1 + static_cast<int>(rng.UniformIndex(6));
    p.n = p.d_prime + static_cast<int>(rng.UniformIndex(60));
    p.p_mass = std::max(p.d_prime / static_cast<double>(p.n), rng.Uniform());
    p.b_bias = rng.Uniform();
    p.y_bound = 0.5 + rng.Uniform();
    p.x_bound = 0.5 + rng.Uniform();
    for (int j = 0; j < p.d_prime; ++j) {
      p.signs.push_back(rng.Uniform() < 0.5 ? 1 : -1);
    }
    auto inst = GenerateSmoothHard(p);
    ASSERT_TRUE(inst.ok()) << inst.status();
    const double b = inst->metadata.parameters.at("b_realized");
    EXPECT_GE(b, p.b_bias - 1e-12);
    const Vector& w = inst->oracle->Minimizer();
    for (int j = 0; j < p.d_prime; ++j) {
      EXPECT_NEAR(w[j], p.signs[j] * p.y_bound * b / p.x_bound, 1e-10);
      EXPECT_EQ(inst->comparator[j], p.signs[j] * p.y_bound * b / p.x_bound);
    }
    EXPECT_EQ(DesignRank(inst->data, 1e-9), p.d_prime);
  }
}

TEST(SmoothHardTest, PackingLowerBoundInequality) {
  Rng rng(67);
  for (int t = 0; t < 20; ++t) {
    SmoothHardParams p;
    p.d_prime = 1 + static_cast<int>(rng.UniformIndex(8));
    p.n = 10 * p.d_prime + static_cast<int>(rng.UniformIndex(50));
    p.p_mass = 0.2 + 0.8 * rng.Uniform();
    p.b_bias = rng.Uniform();
    p.signs.assign(p.d_prime, 1);
    for (int& s : p.signs) s = rng.Uniform() < 0.5 ? 1 : -1;
    auto inst = GenerateSmoothHard(p);
    ASSERT_TRUE(inst.ok()) << inst.status();
    GlmLoss loss = SquaredLoss(p.y_bound);
    const Vector& ws = inst->comparator;
    const double base = EmpiricalRisk(loss, inst->data, ws);
    for (int k = 0; k < 100; ++k) {
      Vector w(p.d_prime);
      for (int j = 0; j < p.d_prime; ++j) w[j] = 3 * rng.Gaussian();
      const double gap = EmpiricalRisk(loss, inst->data, w) - base;
      const double bound = p.p_mass * p.x_bound * p.x_bound /
                           (2.0 * p.d_prime) * (w - ws).squaredNorm();
      EXPECT_GE(gap, bound * (1 - 1e-12) - 1e-12);
      EXPECT_NEAR(inst->oracle->ExcessRisk(w), gap, 1e-9 * (1 + gap));
    }
  }
}

TEST(SmoothHardTest, DummyPoint) {
  SmoothHardParams p = SmallHard(0.5, {1, 1});
  p.n = 9;
  p.dummy_point = true;
  auto inst = GenerateSmoothHard(p);
  ASSERT_TRUE(inst.ok()) << inst.status();
  EXPECT_EQ(inst->data.dim(), 3);
  EXPECT_EQ(inst->data.features()(8, 2), 1e-6);
  EXPECT_EQ(inst->data.y(8), 1.0);
  // Fitting the dummy label needs a weight of Y / c'.
  EXPECT_NEAR(inst->comparator[2], 1e6, 1e-3);
  EXPECT_EQ(inst->metadata.parameters.at("dummy_scale"), 1e-6);
  EXPECT_EQ(DesignRank(inst->data, 1e-12), 3);
  // No filler point left.
  p.n = 8;
  EXPECT_FALSE(GenerateSmoothHard(p).ok());
}

TEST(SmoothHardTest, Errors) {
  SmoothHardParams p = SmallHard(0.5, {1, 1});
  p.p_mass = 0.2;  // 0.2 * 8 / 2 < 1
  EXPECT_FALSE(GenerateSmoothHard(p).ok());
  p = SmallHard(1.5, {1, 1});
  EXPECT_FALSE(GenerateSmoothHard(p).ok());
  p = SmallHard(0.5, {1, 0});
  EXPECT_FALSE(GenerateSmoothHard(p).ok());
  p = SmallHard(0.5, {1});
  p.d_prime = 2;
  EXPECT_FALSE(GenerateSmoothHard(p).ok());
}

TEST(LipschitzHardTest, BetaMomentMonteCarlo) {
  // E|z - mu| for z ~ Bernoulli(mu), mu ~ Beta(b, b), estimated from the
  // labels: y = c X z on the coordinate the point lands on.
  LipschitzHardParams p;
  p.d_prime = 200;
  p.n = 2000;
  p.alpha_mass = 1.0;
  p.x_bound = 1.0;
  p.radius = 1.0;
  const double c = p.radius / std::pow(p.d_prime, 1.0 / p.p_norm);
  double sum = 0.0;
  double sum2 = 0.0;
  int64_t count = 0;
  for (int rep = 0; rep < 50; ++rep) {
    Rng rng(68, rep);
    auto inst = GenerateLipschitzHard(p, rng);
    ASSERT_TRUE(inst.ok()) << inst.status();
    const Vector mu = inst->comparator / c;
    for (int i = 0; i < p.n; ++i) {
      int j = 0;
      inst->data.x(i).cwiseAbs().maxCoeff(&j);
      const double z = inst->data.y(i) / (c * p.x_bound);
      const double v = std::abs(z - mu[j]);
      sum += v;
      sum2 += v * v;
      ++count;
    }
  }
  const double mean = sum / count;
  const double se = std::sqrt((sum2 / count - mean * mean) / count);
  const double truth = BetaAbsDeviationMoment(1.0 / 16.0);
  EXPECT_NEAR(truth, 1.0 / 18.0, 1e-15);
  // Points share mu within a replicate, so allow a wider band than 3 se.
  EXPECT_NEAR(mean, truth, 5 * se + 0.02 * truth);
}

TEST(LipschitzHardTest, ComparatorResidualMonteCarlo) {
  LipschitzHardParams p;
  p.d_prime = 8;
  p.alpha_mass = 0.6;
  p.radius = 2.0;
  p.p_norm = 1.5;
  p.x_bound = 1.5;
  p.n = 1;
  GlmLoss loss = AbsoluteLoss(10.0);
  const double truth = LipschitzHardComparatorResidual(p);
  double sum = 0.0;
  double sum2 = 0.0;
  const int reps = 4000;
  for (int rep = 0; rep < reps; ++rep) {
    Rng rng(69, rep);
    auto inst = GenerateLipschitzHard(p, rng);
    ASSERT_TRUE(inst.ok());
    // Exact conditional risk given mu; averaging over mu gives the moment.
    const double v = inst->oracle->Risk(inst->comparator);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
  EXPECT_NEAR(mean, truth, 3 * se);
}

TEST(LipschitzHardTest, ZeroMassMakesRiskConstant) {
  LipschitzHardParams p;
  p.d_prime = 3;
  p.alpha_mass = 0.0;
  p.n = 50;
  Rng rng(70);
  auto inst = GenerateLipschitzHard(p, rng);
  ASSERT_TRUE(inst.ok());
  EXPECT_EQ(inst->data.features().squaredNorm(), 0.0);
  EXPECT_EQ(inst->data.labels().squaredNorm(), 0.0);
  Vector w = Vector::Constant(3, 0.7);
  EXPECT_EQ(inst->oracle->Risk(w), inst->oracle->Risk(inst->comparator));
  EXPECT_EQ(DesignRank(inst->data, 1e-9), 0);
}

TEST(LipschitzHardTest, ComparatorInsideBallAndMinimizerMatchesMonteCarlo) {
  Rng rng(71);
  for (int t = 0; t < 50; ++t) {
    LipschitzHardParams p;
    p.d_prime = 1 + static_cast<int>(rng.UniformIndex(10));
    p.p_norm = 1.0 + 3.0 * rng.Uniform();
    p.radius = 0.1 + 3.0 * rng.Uniform();
    p.alpha_mass = rng.Uniform();
    p.beta_shape = 0.05 + rng.Uniform();
    p.n = 5;
    auto inst = GenerateLipschitzHard(p, rng);
    ASSERT_TRUE(inst.ok());
    const double lp =
        std::pow(inst->comparator.cwiseAbs().array().pow(p.p_norm).sum(),
                 1.0 / p.p_norm);
    EXPECT_LE(lp, p.radius * (1 + 1e-12));
    const PopulationOracle& o = *inst->oracle;
    EXPECT_LE(o.Risk(o.Minimizer()), o.Risk(inst->comparator) + 1e-15);
    EXPECT_GE(o.ExcessRisk(inst->comparator), -1e-15);
  }
  LipschitzHardParams p;
  p.d_prime = 4;
  p.alpha_mass = 0.8;
  p.n = 5;
  auto inst = GenerateLipschitzHard(p, rng);
  GlmLoss loss = AbsoluteLoss(1.0);
  Vector w = Vector::Constant(4, 0.2);
  MonteCarloEstimate mc = MonteCarloRisk(*inst->oracle, loss, w, 1000000, rng);
  EXPECT_NEAR(mc.mean, inst->oracle->Risk(w), 4 * mc.standard_error + 1e-12);
}

TEST(LipschitzHardTest, Errors) {
  Rng rng(72);
  LipschitzHardParams p;
  p.alpha_mass = 1.5;
  EXPECT_FALSE(GenerateLipschitzHard(p, rng).ok());
  p.alpha_mass = 0.5;
  p.beta_shape = 0.0;
  EXPECT_FALSE(GenerateLipschitzHard(p, rng).ok());
  p.beta_shape = 1.0;
  p.p_norm = 0.5;
  EXPECT_FALSE(GenerateLipschitzHard(p, rng).ok());
}

TEST(PresetTest, SmoothPresetIsFeasible) {
  Rng rng(73);
  SmoothHardParams p = AdversarialSmoothPreset(1000, 50, 1.0, 1.0, 1.0, 1.0,
                                               1.0, rng);
  EXPECT_GE(p.d_prime, 1);
  EXPECT_LE(p.d_prime, 50);
  EXPECT_GE(p.b_bias, 0.0);
  EXPECT_LE(p.b_bias, 1.0);
  EXPECT_EQ(p.signs.size(), static_cast<size_t>(p.d_prime));
  EXPECT_TRUE(GenerateSmoothHard(p).ok());
}

TEST(PresetTest, LipschitzPresetSchedule) {
  LipschitzHardParams small = AdversarialLipschitzPreset(100, 10, 1.0, 1, 1, 2);
  EXPECT_EQ(small.d_prime, 10);
  EXPECT_EQ(small.beta_shape, 1.0 / 16.0);
  EXPECT_NEAR(small.alpha_mass, 10.0 / (48.0 * (1 + 2.0 / 16) * 100), 1e-15);
  LipschitzHardParams big = AdversarialLipschitzPreset(1, 1000, 1.0, 1, 1, 2);
  EXPECT_EQ(big.d_prime, 48);
  EXPECT_EQ(big.alpha_mass, std::min(48 / (48 * (1 + 2.0 / 16)), 1.0));
}

TEST(DesignRankTest, Examples) {
  Rng rng(74);
  Matrix g(50, 10);
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 10; ++j) g(i, j) = rng.Gaussian();
  }
  const double scale = g.rowwise().norm().maxCoeff();
  auto data = Dataset::Create(g / scale, Vector::Zero(50), 1.0, 1.0);
  ASSERT_TRUE(data.ok());
  EXPECT_EQ(DesignRank(*data, 1e-9), 10);
  auto zero = Dataset::Create(Matrix::Zero(5, 3), Vector::Zero(5), 1.0, 1.0);
  EXPECT_EQ(DesignRank(*zero, 1e-9), 0);
  SmoothHardParams p = SmallHard(0.5, {1, 1, -1});
  p.n = 9;
  p.d = 7;
  auto hard = GenerateSmoothHard(p);
  ASSERT_TRUE(hard.ok());
  EXPECT_EQ(DesignRank(hard->data, 1e-9), 3);
}

}  // namespace
}  // namespace dpglm

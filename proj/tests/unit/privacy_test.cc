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
#include <limits>
#include <vector>

#include "dpglm/privacy.h"
#include "dpglm/rng.h"
#include "gtest/gtest.h"

namespace dpglm {
namespace {

const double kInvE = std::exp(-1.0);  // log(1 / delta) = 1

PrivacyBudget Budget(double eps, double delta) {
  return *PrivacyBudget::Create(eps, delta);
}

TEST(PrivacyBudgetTest, Validation) {
  EXPECT_TRUE(PrivacyBudget::Create(1.0, 0.0).ok());
  EXPECT_FALSE(PrivacyBudget::Create(0.0, 0.1).ok());
  EXPECT_FALSE(PrivacyBudget::Create(1.0, 1.0).ok());
  EXPECT_FALSE(PrivacyBudget::Create(1.0, -0.1).ok());
  EXPECT_FALSE(PrivacyBudget::Create(NAN, 0.1).ok());
  EXPECT_FALSE(PrivacyBudget::NonPrivate().is_private());
}

TEST(PrivacyBudgetTest, SplitSumsExactly) {
  Rng rng(31);
  for (int t = 0; t < 200; ++t) {
    PrivacyBudget b = Budget(0.01 + 3 * rng.Uniform(), 0.5 * rng.Uniform());
    const int k = 1 + static_cast<int>(rng.UniformIndex(40));
    auto parts = b.Split(k);
    ASSERT_TRUE(parts.ok());
    ASSERT_EQ(parts->size(), static_cast<size_t>(k));
    PrivacyBudget sum = ComposeBasic(*parts);
    EXPECT_EQ(sum.epsilon(), b.epsilon());
    EXPECT_EQ(sum.delta(), b.delta());
  }
  EXPECT_FALSE(Budget(1, 0.1).Split(0).ok());
}

TEST(NoiseVarianceTest, NoisyGdFormula) {
  EXPECT_NEAR(*NoisyGdNoiseVariance(1.0, 100, 1000, Budget(1.0, kInvE)), 8e-4,
              1e-18);
  EXPECT_EQ(*NoisyGdNoiseVariance(0.0, 100, 1000, Budget(1.0, kInvE)), 0.0);
  EXPECT_NEAR(*NoisyGdNoiseVariance(2.0, 1, 1, Budget(2.0, kInvE)), 8.0,
              1e-14);
  EXPECT_FALSE(NoisyGdNoiseVariance(1.0, 1, 1, Budget(1.0, 0.0)).ok());
}

TEST(NoiseVarianceTest, OutputPerturbationFormulas) {
  EXPECT_NEAR(*OutputPerturbationNoiseVariance(1.0, 1.0, 1.0, 2,
                                               Budget(1.0, kInvE),
                                               LossRegime::kLipschitz),
              1.0, 1e-15);
  EXPECT_EQ(*OutputPerturbationNoiseVariance(0.0, 1.0, 1.0, 2,
                                             Budget(1.0, kInvE),
                                             LossRegime::kLipschitz),
            0.0);
  EXPECT_NEAR(*OutputPerturbationNoiseVariance(2.0, 123.0, 1.0, 4,
                                               Budget(1.0, kInvE),
                                               LossRegime::kSmooth),
              1.0, 1e-15);
  EXPECT_FALSE(OutputPerturbationNoiseVariance(1.0, 1.0, 0.0, 2,
                                               Budget(1.0, kInvE),
                                               LossRegime::kSmooth)
                   .ok());
}

TEST(ReportNoisyMaxTest, NoiselessArgmaxLowestIndexTies) {
  Rng rng(32);
  std::vector<double> u = {0.0, 10.0};
  EXPECT_EQ(*ReportNoisyMax(u, 0.0, rng), 1);
  std::vector<double> one = {3.0};
  EXPECT_EQ(*ReportNoisyMax(one, 5.0, rng), 0);
  std::vector<double> ties = {1.0, 2.0, 2.0};
  EXPECT_EQ(*ReportNoisyMax(ties, 0.0, rng), 1);
  std::vector<double> empty;
  EXPECT_FALSE(ReportNoisyMax(empty, 1.0, rng).ok());
}

TEST(ReportNoisyMaxTest, NoisyFrequency) {
  Rng rng(33);
  std::vector<double> u = {0.0, 0.1};
  int ones = 0;
  for (int i = 0; i < 10000; ++i) ones += *ReportNoisyMax(u, 10.0, rng) == 1;
  EXPECT_GT(ones / 1e4, 0.45);
  EXPECT_LT(ones / 1e4, 0.60);
}

TEST(GemTest, PicksClearWinner) {
  Rng rng(34);
  std::vector<GemCandidate> c = {{1.0, 0.0}, {1.0, 100.0}};
  int zeros = 0;
  for (int i = 0; i < 1000; ++i) zeros += *GemSelect(c, 1.0, 0.1, rng) == 0;
  EXPECT_GE(zeros, 900);
}

TEST(GemTest, SingleAndZeroSensitivity) {
  Rng rng(35);
  std::vector<GemCandidate> one = {{2.0, 7.0}};
  EXPECT_EQ(*GemSelect(one, 1.0, 0.1, rng), 0);
  std::vector<GemCandidate> exact = {{0.0, 5.0}, {0.0, 1.0}};
  for (int i = 0; i < 100; ++i) EXPECT_EQ(*GemSelect(exact, 1.0, 0.1, rng), 1);
  std::vector<GemCandidate> empty;
  EXPECT_FALSE(GemSelect(empty, 1.0, 0.1, rng).ok());
  std::vector<GemCandidate> negative = {{-1.0, 0.0}};
  EXPECT_FALSE(GemSelect(negative, 1.0, 0.1, rng).ok());
}

TEST(GemTest, NormalizedScoresAreNonNegativeWithZeroMinimum) {
  std::vector<GemCandidate> c = {{0.5, 3.0}, {2.0, 1.0}, {0.0, 4.0}};
  auto s = GemNormalizedScores(c, 1.0, 0.1);
  ASSERT_TRUE(s.ok());
  double lo = std::numeric_limits<double>::infinity();
  for (double v : *s) {
    EXPECT_GE(v, 0.0);
    lo = std::min(lo, v);
  }
  EXPECT_EQ(lo, 0.0);
}

// A zero-sensitivity candidate with the best score and a very noisy one with a
// slightly worse score. The guarantee demands the exact candidate with
// probability >= 1 - beta.
TEST(GemTest, HeterogeneousSensitivityGuarantee) {
  Rng rng(36);
  std::vector<GemCandidate> c = {{0.0, 0.0}, {1000.0, 10.0}};
  const double beta = 0.1;
  int violations = 0;
  const int runs = 2000;
  for (int i = 0; i < runs; ++i) violations += *GemSelect(c, 1.0, beta, rng) != 0;
  EXPECT_LE(violations, runs * beta);
}

TEST(GemTest, ScoreSensitivityIsAtMostOne) {
  // Moving every score by at most its sensitivity moves each normalized score
  // by at most 1.
  Rng rng(37);
  for (int t = 0; t < 500; ++t) {
    const int n = 2 + static_cast<int>(rng.UniformIndex(6));
    std::vector<GemCandidate> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i].sensitivity = rng.Uniform() < 0.2 ? 0.0 : 2 * rng.Uniform();
      a[i].score = 5 * rng.Uniform();
      b[i] = a[i];
      b[i].score += a[i].sensitivity * (2 * rng.Uniform() - 1);
    }
    auto sa = GemNormalizedScores(a, 1.0, 0.1);
    auto sb = GemNormalizedScores(b, 1.0, 0.1);
    for (int i = 0; i < n; ++i) {
      if (std::isinf((*sa)[i]) || std::isinf((*sb)[i])) continue;
      EXPECT_LE(std::abs((*sa)[i] - (*sb)[i]), 1.0 + 1e-9);
    }
  }
}

}  // namespace
}  // namespace dpglm

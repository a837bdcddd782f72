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

#include <benchmark/benchmark.h>

#include "dpglm/glm_loss.h"
#include "dpglm/instances.h"
#include "dpglm/jl.h"
#include "dpglm/jl_method.h"
#include "dpglm/noisy_gd.h"
#include "dpglm/privacy.h"
#include "dpglm/regularized_erm.h"
#include "dpglm/rng.h"
#include "dpglm/schedule.h"

namespace dpglm {
namespace {

GeneratedInstance Instance(int n, int d) {
  RegressionParams p;
  p.n = n;
  p.d = d;
  p.noise_std = 0.1;
  Rng rng(1);
  return *GenerateRegression(p, rng);
}

void BM_EmpiricalGradient(benchmark::State& state) {
  GeneratedInstance inst = Instance(state.range(0), state.range(1));
  GlmLoss loss = SquaredLoss(inst.data.y_bound());
  Vector w = Vector::Constant(inst.data.dim(), 0.1);
  Vector g;
  for (auto _ : state) {
    EmpiricalGradient(loss, inst.data, w, g);
    benchmark::DoNotOptimize(g.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EmpiricalGradient)->Args({1024, 16})->Args({1024, 256})->Args({8192, 64});

void BM_NoisyGd(benchmark::State& state) {
  GeneratedInstance inst = Instance(state.range(0), 16);
  GlmLoss loss = SquaredLoss(inst.data.y_bound());
  auto sched = ScheduleNoisyGd(2.0, loss.y_norm(), 1.0, inst.data.n(), 16,
                               *PrivacyBudget::Create(1.0, 1e-5));
  Rng rng(2);
  for (auto _ : state) {
    auto m = NoisyGd(loss, inst.data, *sched, rng);
    benchmark::DoNotOptimize(m);
  }
  state.counters["steps"] = static_cast<double>(sched->steps);
}
BENCHMARK(BM_NoisyGd)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_JlApply(benchmark::State& state) {
  Rng rng(3);
  const int k = state.range(0);
  const int d = state.range(1);
  auto m = JlMatrix::Sample(rng, k, d);
  Vector x = SampleSphere(rng, d, 1.0);
  for (auto _ : state) {
    auto y = m->Apply(x);
    benchmark::DoNotOptimize(y);
  }
}
BENCHMARK(BM_JlApply)->Args({64, 1600})->Args({679, 2})->Args({290, 1600});

void BM_ErmSolve(benchmark::State& state) {
  GeneratedInstance inst = Instance(512, 8);
  const bool smooth = state.range(0) == 0;
  GlmLoss loss = smooth ? SquaredLoss(inst.data.y_bound())
                        : AbsoluteLoss(inst.data.y_bound());
  for (auto _ : state) {
    auto r = RegularizedErmSolve(loss, inst.data, 2.0, 0.05);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ErmSolve)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_JlMethod(benchmark::State& state) {
  GeneratedInstance inst = Instance(512, state.range(0));
  GlmLoss loss = SquaredLoss(inst.data.y_bound());
  Rng rng(4);
  for (auto _ : state) {
    auto m = JlMethod(loss, inst.data, 1.0, *PrivacyBudget::Create(1.0, 1e-5),
                      LossRegime::kSmooth, rng);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_JlMethod)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace dpglm

BENCHMARK_MAIN();

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

#ifndef DPGLM_RNG_H_
#define DPGLM_RNG_H_

#include <cstdint>
#include <random>

namespace dpglm {

// Seeded random stream. A stream is identified by (seed, stream id); two
// handles with the same identity produce the same sequence of draws. Child
// streams are derived with Split() without advancing the parent.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0);

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

  // Returns an independent stream keyed by `child`. Calling Split with the
  // same key twice returns identical streams.
  Rng Split(uint64_t child) const;

  // Uniform on [0, 1).
  double Uniform();
  // Standard normal.
  double Gaussian();
  // Laplace(0, scale). No validation; see SampleLaplace for the checked form.
  double LaplaceUnchecked(double scale);
  // Gamma(shape, 1).
  double Gamma(double shape);
  // Beta(a, b) built from two gamma draws.
  double Beta(double a, double b);
  bool Bernoulli(double p);
  // Uniform integer on [0, n). Requires n > 0.
  uint64_t UniformIndex(uint64_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  uint64_t seed_;
  uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

// SplitMix64 finalizer, used to derive stream ids from structured keys.
uint64_t MixBits(uint64_t x);
uint64_t HashCombine(uint64_t a, uint64_t b);

}  // namespace dpglm

#endif  // DPGLM_RNG_H_

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

#include "dpglm/rng.h"

#include <cmath>

namespace dpglm {
namespace {

std::seed_seq MakeSeedSeq(uint64_t seed, uint64_t stream) {
  return std::seed_seq{static_cast<uint32_t>(seed),
                       static_cast<uint32_t>(seed >> 32),
                       static_cast<uint32_t>(stream),
                       static_cast<uint32_t>(stream >> 32)};
}

}  // namespace

uint64_t MixBits(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t HashCombine(uint64_t a, uint64_t b) {
  return MixBits(a ^ (MixBits(b) + 0x632be59bd9b4e019ULL + (a << 6) + (a >> 2)));
}

Rng::Rng(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {
  std::seed_seq seq = MakeSeedSeq(seed, stream);
  engine_.seed(seq);
}

Rng Rng::Split(uint64_t child) const {
  return Rng(seed_, HashCombine(stream_, child));
}

double Rng::Uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

double Rng::Gaussian() { return normal_(engine_); }

double Rng::LaplaceUnchecked(double scale) {
  // Difference of two unit exponentials is a unit Laplace.
  std::exponential_distribution<double> exp(1.0);
  const double a = exp(engine_);
  const double b = exp(engine_);
  return scale * (a - b);
}

double Rng::Gamma(double shape) {
  return std::gamma_distribution<double>(shape, 1.0)(engine_);
}

double Rng::Beta(double a, double b) {
  const double x = Gamma(a);
  const double y = Gamma(b);
  if (x + y == 0.0) {
    // Both gammas underflowed; happens for tiny shapes. Pick an endpoint with
    // the right odds.
    return Uniform() < a / (a + b) ? 1.0 : 0.0;
  }
  return x / (x + y);
}

bool Rng::Bernoulli(double p) { return Uniform() < p; }

uint64_t Rng::UniformIndex(uint64_t n) {
  return std::uniform_int_distribution<uint64_t>(0, n - 1)(engine_);
}

}  // namespace dpglm

// Copyright 2026 The csipc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSIPC_RANDOM_HPP
#define CSIPC_RANDOM_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace csipc {

/// Seeded pseudo-random stream with deterministic substream splitting.
///
/// Child streams are derived from the seed the stream was constructed with,
/// not from its current state, so `split(i)` returns the same child no matter
/// how many draws the parent has already made. Determinism holds per seed
/// within one build; the normal sampler is the standard library's.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }

  RandomStream split(std::uint64_t index) const;

  double uniform();  // [0, 1)
  double normal();   // N(0, 1)

  /// Circularly symmetric CN(0, 1): real and imaginary parts N(0, 1/2).
  std::complex<double> complex_normal();

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// SplitMix64 finalizer; used to decorrelate derived seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace csipc

#endif  // CSIPC_RANDOM_HPP

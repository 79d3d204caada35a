// Copyright 2026 The cfprelease Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CFP_NOISE_HPP_
#define CFP_NOISE_HPP_

#include <cstdint>
#include <random>
#include <string_view>

namespace cfp {

// Seeded, deterministic randomness for one mechanism run. Not
// cryptographically secure. The distribution transforms are written out
// here instead of using <random> distributions, whose output differs
// between standard library implementations.
//
// A zero-noise source is a test double: Laplace draws return 0, Bernoulli
// draws return true (every edge and tuple kept) and callers that sample
// around a center (the ladder sampler) return the center.
class NoiseSource {
 public:
  explicit NoiseSource(std::uint64_t seed) : engine_(seed) {}

  static NoiseSource ZeroNoise() {
    NoiseSource s(0);
    s.zero_ = true;
    return s;
  }

  bool zero_noise() const noexcept { return zero_; }

  // Uniform on the open interval (0, 1).
  double Uniform01();

  // Uniform on [0, n). n must be positive.
  std::uint64_t UniformInt(std::uint64_t n);

  // Consumes no randomness when p <= 0 or p >= 1.
  bool Bernoulli(double p);

  // Zero-mean Laplace with the given scale. Throws ArgumentError if
  // scale <= 0.
  double Laplace(double scale);

  // Pr[h = j] = p (1 - p)^j for j >= 0, p in (0, 1].
  std::uint64_t Geometric(double p);

  bool FairCoin() { return (engine_() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
  bool zero_ = false;
};

// Mixes a master seed, an index and a tag into an independent stream seed.
std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index,
                         std::string_view tag);

}  // namespace cfp

#endif  // CFP_NOISE_HPP_

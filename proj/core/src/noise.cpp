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

#include "cfp/noise.hpp"

#include <cmath>
#include <limits>

#include "cfp/errors.hpp"

namespace cfp {
namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double NoiseSource::Uniform01() {
  // 53 random mantissa bits, shifted by half an ulp so 0 is excluded.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

std::uint64_t NoiseSource::UniformInt(std::uint64_t n) {
  if (n == 0) throw ArgumentError("UniformInt requires n > 0");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % n + 1) % n;
  std::uint64_t x = engine_();
  while (x > limit) x = engine_();
  return x % n;
}

bool NoiseSource::Bernoulli(double p) {
  if (zero_ || p >= 1.0) return true;
  if (p <= 0.0) return false;
  return Uniform01() < p;
}

double NoiseSource::Laplace(double scale) {
  if (!(scale > 0.0)) throw ArgumentError("Laplace scale must be positive");
  if (zero_) return 0.0;
  const double u = Uniform01() - 0.5;
  const double magnitude = -scale * std::log1p(-2.0 * std::fabs(u));
  return u < 0.0 ? -magnitude : magnitude;
}

std::uint64_t NoiseSource::Geometric(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw ArgumentError("geometric parameter must lie in (0, 1]");
  }
  if (p == 1.0) return 0;
  return static_cast<std::uint64_t>(
      std::floor(std::log(Uniform01()) / std::log1p(-p)));
}

std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t index,
                         std::string_view tag) {
  // FNV-1a over the tag.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : tag) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return SplitMix64(SplitMix64(SplitMix64(master) ^ index) ^ h);
}

}  // namespace cfp

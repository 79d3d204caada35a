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

#include "cfp/ladder_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "cfp/errors.hpp"

namespace cfp {

RungTable::RungTable(const Ladder& ladder, double epsilon)
    : ladder_(ladder), epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ArgumentError("ladder sampler epsilon must be positive");
  }
  const Count m = rungs();
  const double half = epsilon / 2.0;
  weights_.reserve(static_cast<std::size_t>(m) + 2);
  offsets_.reserve(static_cast<std::size_t>(m) + 1);

  weights_.push_back(1.0);
  offsets_.push_back(0);
  for (Count x = 1; x <= m; ++x) {
    const Count w = ladder_.value(x - 1);
    weights_.push_back(2.0 * static_cast<double>(w) *
                       std::exp(-half * static_cast<double>(x)));
    offsets_.push_back(offsets_.back() + w);
  }
  weights_.push_back(2.0 * static_cast<double>(ladder_.m_p()) *
                     std::exp(-half * static_cast<double>(m + 1)) /
                     -std::expm1(-half));

  cumulative_.resize(weights_.size());
  double running = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    running += weights_[i];
    cumulative_[i] = running;
  }
}

Count RungTable::RungOf(Count distance) const {
  distance = std::abs(distance);
  if (distance == 0) return 0;
  const Count m = rungs();
  const Count d_m = offsets_.back();
  if (distance <= d_m) {
    return static_cast<Count>(
        std::lower_bound(offsets_.begin(), offsets_.end(), distance) -
        offsets_.begin());
  }
  const Count band = (distance - d_m - 1) / ladder_.m_p();
  return m + 1 + band;
}

double RungTable::Pmf(Count delta) const {
  const Count q = RungOf(delta);
  return std::exp(-epsilon_ / 2.0 * static_cast<double>(q)) / total_weight();
}

Count RungTable::Sample(Count center, NoiseSource& rng) const {
  if (rng.zero_noise()) return center;
  const double u = rng.Uniform01() * total_weight();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  const auto rung = static_cast<Count>(it - cumulative_.begin());
  if (rung == 0) return center;

  Count distance = 0;
  if (rung <= rungs()) {
    const Count w = width(rung);
    distance = offsets_[rung - 1] + 1 +
               static_cast<Count>(rng.UniformInt(static_cast<std::uint64_t>(w)));
  } else {
    const double p = -std::expm1(-epsilon_ / 2.0);
    const auto h = static_cast<Count>(rng.Geometric(p));
    const Count m_p = ladder_.m_p();
    distance = offsets_.back() + h * m_p + 1 +
               static_cast<Count>(rng.UniformInt(static_cast<std::uint64_t>(m_p)));
  }
  return rng.FairCoin() ? center + distance : center - distance;
}

std::vector<Count> LfNoising(std::span<const Count> base, double epsilon,
                             const Ladder& ladder, NoiseSource& rng) {
  const RungTable table(ladder, epsilon);
  std::vector<Count> out(base.begin(), base.end());
  if (rng.zero_noise()) return out;
  for (Count& v : out) v = table.Sample(v, rng);
  return out;
}

double ExactPmf(Count base, double epsilon, const Ladder& ladder,
                Count value) {
  return RungTable(ladder, epsilon).Pmf(value - base);
}

}  // namespace cfp

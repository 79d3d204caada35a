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

#ifndef CFP_LADDER_SAMPLER_HPP_
#define CFP_LADDER_SAMPLER_HPP_

#include <span>
#include <vector>

#include "cfp/cfp_engine.hpp"
#include "cfp/noise.hpp"

namespace cfp {

// Output distribution of the ladder exponential mechanism around a center.
//
// Rung 0 is the center itself. Rung x in [1, M] (M = m_p - ls) covers the
// integers at distance (d[x-1], d[x]] on either side, where
// d[x] = I_0 + ... + I_{x-1}; each such integer has quality -x. Beyond d[M]
// every further band of m_p integers per side drops the quality by one more;
// all of those bands together form rung M + 1.
class RungTable {
 public:
  // Throws ArgumentError unless epsilon > 0.
  RungTable(const Ladder& ladder, double epsilon);

  const Ladder& ladder() const noexcept { return ladder_; }
  double epsilon() const noexcept { return epsilon_; }

  // M.
  Count rungs() const noexcept { return ladder_.saturation(); }

  // weight[0..M+1].
  std::span<const double> weights() const { return weights_; }
  double total_weight() const noexcept { return cumulative_.back(); }

  // d[x] for x in [0, M].
  Count offset(Count x) const { return offsets_[x]; }
  // Integers per side in rung x in [1, M], i.e. I_{x-1}.
  Count width(Count x) const { return ladder_.value(x - 1); }

  // Quality rung of an output at |value - center| == distance: 0 for the
  // center, x in [1, M] inside the ladder, M + 1 + j for the j-th band of
  // the tail.
  Count RungOf(Count distance) const;

  // Probability of emitting center + delta.
  double Pmf(Count delta) const;

  // Draws one output around `center`.
  Count Sample(Count center, NoiseSource& rng) const;

 private:
  Ladder ladder_;
  double epsilon_;
  std::vector<double> weights_;
  std::vector<double> cumulative_;
  std::vector<Count> offsets_;
};

// Perturbs every entry of `base` independently with the ladder mechanism at
// budget `epsilon`. Outputs are not clamped. A zero-noise source returns
// `base` unchanged.
std::vector<Count> LfNoising(std::span<const Count> base, double epsilon,
                             const Ladder& ladder, NoiseSource& rng);

// Analytic probability that one entry with true value `base` is released as
// `value`.
double ExactPmf(Count base, double epsilon, const Ladder& ladder, Count value);

}  // namespace cfp

#endif  // CFP_LADDER_SAMPLER_HPP_

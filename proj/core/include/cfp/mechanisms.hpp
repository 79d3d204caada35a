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

#ifndef CFP_MECHANISMS_HPP_
#define CFP_MECHANISMS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cfp/cfp_engine.hpp"
#include "cfp/graph.hpp"
#include "cfp/matrix.hpp"
#include "cfp/noise.hpp"
#include "cfp/pdp.hpp"

namespace cfp {

enum class Mechanism { kUniform, kExponential, kDeba, kDubaLf };

// "uniform", "exponential", "deba", "duba-lf".
std::string_view ToString(Mechanism mechanism);
// Accepts the names above plus "duba_lf". Throws ConfigError otherwise.
Mechanism ParseMechanism(std::string_view name);

// Which graph the DUBA-LF ladder's local sensitivity is read from.
// kSampledGraph keeps the ladder a function of the sampled input only;
// kInputGraph reads it from the unsampled graph.
enum class LadderSource { kSampledGraph, kInputGraph };

struct MechanismConfig {
  int c = 4;
  double t = 7.0;
  Mechanism mechanism = Mechanism::kDubaLf;
  std::uint64_t seed = 0;
  LadderSource ladder_source = LadderSource::kSampledGraph;

  // Throws ConfigError unless c >= 2 and t > 0.
  void Validate() const;
};

struct StepRecord {
  int k = 0;
  bool published = false;
  double epsilon_m1 = 0.0;
  double epsilon_m2 = 0.0;
  // Fraction of the specification spent on publication at this step.
  double share = 0.0;
  std::optional<double> noisy_dist;
  std::optional<double> threshold;
  // Laplace scale of a Laplace-noised publication.
  std::optional<double> laplace_scale;
  // Local sensitivity behind the ladder of a ladder-noised publication.
  std::optional<Count> ladder_ls;
};

struct ReleaseReport {
  Mechanism mechanism = Mechanism::kUniform;
  int c = 0;
  double t = 0.0;
  std::size_t m = 0;
  // One entry per k; std::nullopt for a skipped query.
  std::vector<std::optional<std::vector<double>>> columns;
  std::vector<StepRecord> steps;
  BudgetLedger ledger;
  std::vector<std::string> warnings;
};

// Each of the c queries gets 1/c of the specification: sampled at scale 1/c
// with threshold t/c, then Laplace(Delta(f_k) c / t) per entry.
ReleaseReport RunUniform(const Graph& g, const PublicLabeling& lab,
                         const PrivacySpec& spec, const MechanismConfig& cfg,
                         NoiseSource& rng);

// Query k gets 1/2^k of the specification (1/2^(c-1) for k = c).
ReleaseReport RunExponential(const Graph& g, const PublicLabeling& lab,
                             const PrivacySpec& spec,
                             const MechanismConfig& cfg, NoiseSource& rng);

// Noisy mean absolute distance between the true column `current` and the
// last released column. Tuples are sampled at scale 1/2c against threshold
// t/2c; unsampled ones contribute 0 and the normalizer stays m. Adds
// Laplace(2 m_p c / (m t)). Throws ContractViolation for k < 2, when no
// previous release exists.
double PrivateDistance(int k, std::span<const Count> current,
                       std::span<const double> last_release,
                       const PrivacySpec& spec, const MechanismConfig& cfg,
                       std::size_t m_p, NoiseSource& rng);

// Exponentially decreasing publication budget with distance-based
// absorption of skipped queries. `truth` (f_1..f_c of g, at least c columns)
// is computed when null.
ReleaseReport RunDeba(const Graph& g, const PublicLabeling& lab,
                      const PrivacySpec& spec, const MechanismConfig& cfg,
                      NoiseSource& rng, const CfpMatrix* truth = nullptr);

// Uniform publication budget with absorption; publishes k >= 2 through the
// ladder mechanism.
ReleaseReport RunDubaLf(const Graph& g, const PublicLabeling& lab,
                        const PrivacySpec& spec, const MechanismConfig& cfg,
                        NoiseSource& rng, const CfpMatrix* truth = nullptr);

// Dispatches on cfg.mechanism.
ReleaseReport RunMechanism(const Graph& g, const PublicLabeling& lab,
                           const PrivacySpec& spec, const MechanismConfig& cfg,
                           NoiseSource& rng, const CfpMatrix* truth = nullptr);

// Replaces every skipped column by the nearest earlier published one.
// Throws ContractViolation if column 1 is null.
DenseMatrix<double> FillNulls(const ReleaseReport& report);

// Per-k budget shares of the exponential baseline; they sum to 1.
std::vector<double> ExponentialShares(int c);

}  // namespace cfp

#endif  // CFP_MECHANISMS_HPP_

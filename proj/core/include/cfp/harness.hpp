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

#ifndef CFP_HARNESS_HPP_
#define CFP_HARNESS_HPP_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cfp/graph.hpp"
#include "cfp/matrix.hpp"
#include "cfp/mechanisms.hpp"
#include "cfp/noise.hpp"
#include "cfp/pdp.hpp"

namespace cfp {

// Conservative, moderate and liberal privacy groups.
struct GroupSpec {
  std::array<double, 3> fractions{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
  std::array<double, 3> levels{1.0, 4.0, 16.0};

  // Throws ConfigError unless fractions lie in [0, 1] and sum to 1 and the
  // levels are positive and strictly increasing.
  void Validate() const;
};

// Shuffles the private users and cuts them into the three groups.
// Group g receives floor(fraction_g * m) users; the remainder is dealt one
// at a time to the groups with a non-zero fraction, in group order. Throws
// ConfigError if there are no private users.
PrivacySpec GeneratePrivacySpec(const PublicLabeling& lab,
                                const GroupSpec& groups, NoiseSource& rng);

// (1 / mc) * sum |truth - released|. Throws ArgumentError on shape mismatch.
double Mae(const DenseMatrix<double>& truth,
           const DenseMatrix<double>& released);

// (1 / mc) * sum |truth - released| / max(truth, 1).
double Mre(const DenseMatrix<double>& truth,
           const DenseMatrix<double>& released);

struct Dataset {
  std::string name;
  Graph graph;
  PublicLabeling labeling;
};

struct EvaluationConfig {
  std::vector<Mechanism> mechanisms{Mechanism::kUniform, Mechanism::kExponential,
                                    Mechanism::kDeba, Mechanism::kDubaLf};
  std::vector<int> c_values{4};
  std::vector<double> t_values{7.0};
  int trials = 100;
  std::uint64_t master_seed = 0;
  GroupSpec groups;
  // Draw a fresh group assignment for every trial instead of one per run.
  bool resample_groups = false;
  bool zero_noise = false;
  LadderSource ladder_source = LadderSource::kSampledGraph;
  // 0 picks std::thread::hardware_concurrency().
  unsigned workers = 0;
};

struct EvaluationRow {
  std::string dataset;
  Mechanism mechanism = Mechanism::kUniform;
  int c = 0;
  double t = 0.0;
  int trials = 0;
  double mae_mean = 0.0;
  double mae_stdev = 0.0;
  double mae_sem = 0.0;
  double mre_mean = 0.0;
  double mre_stdev = 0.0;
  double mre_sem = 0.0;
  double mean_runtime_ms = 0.0;
};

struct EvaluationReport {
  std::vector<EvaluationRow> rows;
};

// Seed of trial `trial` for `mechanism`; independent of worker count.
std::uint64_t TrialSeed(std::uint64_t master, int trial, Mechanism mechanism);
// Seed of the privacy-group assignment (trial 0 unless resampling).
std::uint64_t GroupSeed(std::uint64_t master, int trial);

// Runs every (mechanism, c, t) configuration `trials` times and aggregates
// MAE/MRE of the null-filled release against the true CFP matrix. Results
// are reduced in trial order, so the report depends only on the inputs.
EvaluationReport RunTrials(const Dataset& dataset,
                           const EvaluationConfig& config);

// Runtimes are wall-clock and therefore left out unless asked for.
void WriteEvaluationCsv(std::ostream& out, const EvaluationReport& report,
                        bool include_runtime = false);

struct DatasetStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  int diameter = 0;
  double density = 0.0;
  std::size_t public_users = 0;
};

DatasetStats ComputeDatasetStats(const Graph& g, const PublicLabeling& lab);

// Connected two-community graph with power-law expected degrees, used as a
// stand-in when a real social network is not available. Every node i >= 1
// first attaches to a degree-weighted earlier node, then degree-weighted
// edges are added until `edges` distinct edges exist.
struct SyntheticGraphParams {
  std::size_t nodes = 1222;
  std::size_t edges = 16724;
  double exponent = 2.1;
  double rank_offset = 5.0;
  // Probability that an edge stays inside its source's community.
  double assortativity = 0.9;
  std::uint64_t seed = 2005;
};

// Throws ConfigError if the edge target is below nodes - 1 or above a
// quarter of all node pairs.
Graph SyntheticSocialGraph(const SyntheticGraphParams& params);

}  // namespace cfp

#endif  // CFP_HARNESS_HPP_

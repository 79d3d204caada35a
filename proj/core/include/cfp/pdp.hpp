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

#ifndef CFP_PDP_HPP_
#define CFP_PDP_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cfp/cfp_engine.hpp"
#include "cfp/graph.hpp"
#include "cfp/noise.hpp"

namespace cfp {

// Per-private-user privacy preference epsilon. Public users have none.
class PrivacySpec {
 public:
  PrivacySpec() = default;

  // prefs[i] belongs to lab.private_ids()[i]. Throws ValidationError if the
  // sizes differ or any preference is not a finite positive number.
  PrivacySpec(const PublicLabeling& lab, std::vector<double> prefs);

  // Throws ValidationError if a private user is missing or a public user
  // has an entry.
  static PrivacySpec FromMap(const PublicLabeling& lab,
                             const std::unordered_map<NodeId, double>& prefs);

  std::optional<double> preference(NodeId v) const {
    const double p = by_node_[v];
    return p > 0.0 ? std::optional<double>(p) : std::nullopt;
  }
  double row_preference(std::size_t row) const { return by_row_[row]; }
  std::span<const double> row_preferences() const { return by_row_; }
  std::span<const NodeId> private_ids() const { return private_ids_; }
  std::size_t m() const noexcept { return by_row_.size(); }

  double min() const;
  double max() const;
  double mean() const;

  friend bool operator==(const PrivacySpec&, const PrivacySpec&) = default;

 private:
  std::vector<NodeId> private_ids_;
  std::vector<double> by_row_;
  std::vector<double> by_node_;
};

// Sample-mechanism keep probability for an edge. std::nullopt marks a
// public endpoint. With p the smaller present preference: 1 if both ends
// are public or p >= t, else (e^p - 1) / (e^t - 1). Throws ArgumentError if
// t <= 0.
double EdgeSampleProbability(std::optional<double> pref_i,
                             std::optional<double> pref_j, double t);

// 1 if pref >= t, else (e^pref - 1) / (e^t - 1).
double TupleSampleProbability(double pref, double t);

// Keeps every edge independently with EdgeSampleProbability(scale * P^i,
// scale * P^j, t). Same node set. Public-public edges are always kept.
Graph SampleGraph(const Graph& g, const PublicLabeling& lab,
                  const PrivacySpec& spec, double scale, double t,
                  NoiseSource& rng);

// Inclusion flag per private-user row, each kept with
// TupleSampleProbability(scale * P^v, t).
std::vector<bool> SampleTuples(std::span<const Count> row_values,
                               const PrivacySpec& spec, double scale, double t,
                               NoiseSource& rng);

// Message when t falls outside [scale * min P, scale * max P], else empty.
std::optional<std::string> ThresholdBoundWarning(const PrivacySpec& spec,
                                                 double scale, double t);

enum class ChargeScope { kEdge, kTuple, kGraph };
// kDistance is the private distance step, kPublication the release step.
enum class Phase { kDistance, kPublication };

const char* ToString(ChargeScope scope);
const char* ToString(Phase phase);

struct BudgetCharge {
  ChargeScope scope;
  Phase phase;
  int k;
  // Fraction of each user's preference P^v spent by this step.
  double fraction;

  std::string stage() const;
};

// Record of the budget a single mechanism run spent. Charges are uniform
// fractions of the specification, so user v accumulates fraction * P^v.
class BudgetLedger {
 public:
  // Throws ArgumentError unless fraction > 0.
  void Charge(ChargeScope scope, Phase phase, int k, double fraction);

  std::span<const BudgetCharge> charges() const { return charges_; }
  double TotalFraction() const;
  double PhaseFraction(Phase phase) const;

  // Accumulated epsilon per private-user row.
  std::vector<double> UserTotals(const PrivacySpec& spec) const;
  std::vector<double> UserTotals(const PrivacySpec& spec, Phase phase) const;

 private:
  std::vector<BudgetCharge> charges_;
};

struct LedgerVerdict {
  bool ok = true;
  std::string message;
  explicit operator bool() const noexcept { return ok; }
};

// Relative slack for the floating-point sums of shares like 1/7.
inline constexpr double kLedgerTolerance = 1e-9;

// Fails at the first charge that pushes some user's total above P^v and
// names that user and stage.
LedgerVerdict CheckLedgerWithinSpec(const BudgetLedger& ledger,
                                    const PrivacySpec& spec);

// "stage,scope,phase,k,fraction,cumulative_fraction"
void WriteLedgerCsv(std::ostream& out, const BudgetLedger& ledger);
// "node,preference,distance_epsilon,publication_epsilon,total_epsilon"
void WriteLedgerTotalsCsv(std::ostream& out, const BudgetLedger& ledger,
                          const PrivacySpec& spec, const Graph& g);

}  // namespace cfp

#endif  // CFP_PDP_HPP_

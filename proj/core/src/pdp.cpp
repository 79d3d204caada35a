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

#include "cfp/pdp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include <fmt/format.h>

#include "cfp/errors.hpp"

namespace cfp {
namespace {

double KeepProbability(double p, double t) {
  if (p >= t) return 1.0;
  return std::expm1(p) / std::expm1(t);
}

}  // namespace

PrivacySpec::PrivacySpec(const PublicLabeling& lab, std::vector<double> prefs)
    : private_ids_(lab.private_ids().begin(), lab.private_ids().end()),
      by_row_(std::move(prefs)),
      by_node_(lab.node_count(), 0.0) {
  if (by_row_.size() != private_ids_.size()) {
    throw ValidationError(
        fmt::format("privacy spec has {} preferences for {} private users",
                    by_row_.size(), private_ids_.size()));
  }
  for (std::size_t row = 0; row < by_row_.size(); ++row) {
    const double p = by_row_[row];
    if (!(std::isfinite(p) && p > 0.0)) {
      throw ValidationError(fmt::format(
          "preference of user {} must be finite and positive, got {}",
          private_ids_[row], p));
    }
    by_node_[private_ids_[row]] = p;
  }
}

PrivacySpec PrivacySpec::FromMap(
    const PublicLabeling& lab,
    const std::unordered_map<NodeId, double>& prefs) {
  std::vector<double> rows(lab.m(), 0.0);
  for (const auto& [node, eps] : prefs) {
    if (node >= lab.node_count()) {
      throw ValidationError(fmt::format("unknown node {} in privacy spec", node));
    }
    const std::size_t row = lab.private_row(node);
    if (row == PublicLabeling::kNoRow) {
      throw ValidationError(
          fmt::format("public user {} must not carry a preference", node));
    }
    rows[row] = eps;
  }
  for (std::size_t row = 0; row < rows.size(); ++row) {
    if (rows[row] == 0.0 && !prefs.contains(lab.private_ids()[row])) {
      throw ValidationError(fmt::format("private user {} has no preference",
                                        lab.private_ids()[row]));
    }
  }
  return PrivacySpec(lab, std::move(rows));
}

double PrivacySpec::min() const {
  return *std::min_element(by_row_.begin(), by_row_.end());
}

double PrivacySpec::max() const {
  return *std::max_element(by_row_.begin(), by_row_.end());
}

double PrivacySpec::mean() const {
  return std::accumulate(by_row_.begin(), by_row_.end(), 0.0) /
         static_cast<double>(by_row_.size());
}

double EdgeSampleProbability(std::optional<double> pref_i,
                             std::optional<double> pref_j, double t) {
  if (!(t > 0.0)) throw ArgumentError("sample threshold t must be positive");
  if (!pref_i && !pref_j) return 1.0;
  const double p = pref_i && pref_j ? std::min(*pref_i, *pref_j)
                                    : (pref_i ? *pref_i : *pref_j);
  return KeepProbability(p, t);
}

double TupleSampleProbability(double pref, double t) {
  if (!(t > 0.0)) throw ArgumentError("sample threshold t must be positive");
  if (!(pref > 0.0)) throw ArgumentError("preference must be positive");
  return KeepProbability(pref, t);
}

Graph SampleGraph(const Graph& g, const PublicLabeling& lab,
                  const PrivacySpec& spec, double scale, double t,
                  NoiseSource& rng) {
  if (!(scale > 0.0 && scale <= 1.0)) {
    throw ArgumentError("sampling scale must lie in (0, 1]");
  }
  if (!(t > 0.0)) throw ArgumentError("sample threshold t must be positive");
  if (lab.node_count() != g.node_count()) {
    throw ArgumentError("labeling node count does not match graph");
  }
  std::vector<Edge> kept;
  kept.reserve(g.edge_count());
  g.ForEachEdge([&](NodeId u, NodeId v) {
    const auto pu = spec.preference(u);
    const auto pv = spec.preference(v);
    const double pi = EdgeSampleProbability(
        pu ? std::optional<double>(*pu * scale) : std::nullopt,
        pv ? std::optional<double>(*pv * scale) : std::nullopt, t);
    if (rng.Bernoulli(pi)) kept.push_back({u, v});
  });
  return Graph::FromCanonicalEdges(
      g.node_count(), kept,
      std::vector<std::uint64_t>(g.original_ids().begin(),
                                 g.original_ids().end()));
}

std::vector<bool> SampleTuples(std::span<const Count> row_values,
                               const PrivacySpec& spec, double scale, double t,
                               NoiseSource& rng) {
  if (row_values.size() != spec.m()) {
    throw ArgumentError("tuple count does not match privacy spec");
  }
  if (!(scale > 0.0 && scale <= 1.0)) {
    throw ArgumentError("sampling scale must lie in (0, 1]");
  }
  std::vector<bool> included(row_values.size());
  for (std::size_t row = 0; row < row_values.size(); ++row) {
    included[row] = rng.Bernoulli(
        TupleSampleProbability(spec.row_preference(row) * scale, t));
  }
  return included;
}

std::optional<std::string> ThresholdBoundWarning(const PrivacySpec& spec,
                                                 double scale, double t) {
  const double lo = spec.min() * scale;
  const double hi = spec.max() * scale;
  if (t >= lo && t <= hi) return std::nullopt;
  return fmt::format(
      "threshold {:.6g} outside the scaled preference range [{:.6g}, {:.6g}]",
      t, lo, hi);
}

const char* ToString(ChargeScope scope) {
  switch (scope) {
    case ChargeScope::kEdge:
      return "edge";
    case ChargeScope::kTuple:
      return "tuple";
    case ChargeScope::kGraph:
      return "graph";
  }
  return "?";
}

const char* ToString(Phase phase) {
  return phase == Phase::kDistance ? "distance" : "publication";
}

std::string BudgetCharge::stage() const {
  return fmt::format("{}/k={}", phase == Phase::kDistance ? "M1" : "M2", k);
}

void BudgetLedger::Charge(ChargeScope scope, Phase phase, int k,
                          double fraction) {
  if (!(fraction > 0.0)) {
    throw ArgumentError("ledger charge fraction must be positive");
  }
  charges_.push_back({scope, phase, k, fraction});
}

double BudgetLedger::TotalFraction() const {
  double total = 0.0;
  for (const auto& ch : charges_) total += ch.fraction;
  return total;
}

double BudgetLedger::PhaseFraction(Phase phase) const {
  double total = 0.0;
  for (const auto& ch : charges_) {
    if (ch.phase == phase) total += ch.fraction;
  }
  return total;
}

std::vector<double> BudgetLedger::UserTotals(const PrivacySpec& spec) const {
  std::vector<double> totals(spec.m(), 0.0);
  for (const auto& ch : charges_) {
    for (std::size_t row = 0; row < spec.m(); ++row) {
      totals[row] += ch.fraction * spec.row_preference(row);
    }
  }
  return totals;
}

std::vector<double> BudgetLedger::UserTotals(const PrivacySpec& spec,
                                             Phase phase) const {
  std::vector<double> totals(spec.m(), 0.0);
  for (const auto& ch : charges_) {
    if (ch.phase != phase) continue;
    for (std::size_t row = 0; row < spec.m(); ++row) {
      totals[row] += ch.fraction * spec.row_preference(row);
    }
  }
  return totals;
}

LedgerVerdict CheckLedgerWithinSpec(const BudgetLedger& ledger,
                                    const PrivacySpec& spec) {
  std::vector<double> totals(spec.m(), 0.0);
  for (const auto& ch : ledger.charges()) {
    for (std::size_t row = 0; row < spec.m(); ++row) {
      const double pref = spec.row_preference(row);
      totals[row] += ch.fraction * pref;
      if (totals[row] > pref * (1.0 + kLedgerTolerance)) {
        return {false,
                fmt::format("user {} exceeds preference {:.6g} at stage {}: "
                            "accumulated {:.6g}",
                            spec.private_ids()[row], pref, ch.stage(),
                            totals[row])};
      }
    }
  }
  return {};
}

void WriteLedgerCsv(std::ostream& out, const BudgetLedger& ledger) {
  out << "stage,scope,phase,k,fraction,cumulative_fraction\n";
  double cumulative = 0.0;
  for (const auto& ch : ledger.charges()) {
    cumulative += ch.fraction;
    out << fmt::format("{},{},{},{},{:.12g},{:.12g}\n", ch.stage(),
                       ToString(ch.scope), ToString(ch.phase), ch.k,
                       ch.fraction, cumulative);
  }
}

void WriteLedgerTotalsCsv(std::ostream& out, const BudgetLedger& ledger,
                          const PrivacySpec& spec, const Graph& g) {
  const auto m1 = ledger.UserTotals(spec, Phase::kDistance);
  const auto m2 = ledger.UserTotals(spec, Phase::kPublication);
  out << "node,preference,distance_epsilon,publication_epsilon,total_epsilon\n";
  for (std::size_t row = 0; row < spec.m(); ++row) {
    out << fmt::format("{},{:.12g},{:.12g},{:.12g},{:.12g}\n",
                       g.original_id(spec.private_ids()[row]),
                       spec.row_preference(row), m1[row], m2[row],
                       m1[row] + m2[row]);
  }
}

}  // namespace cfp

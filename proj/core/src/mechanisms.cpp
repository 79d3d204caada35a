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

#include "cfp/mechanisms.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "cfp/errors.hpp"
#include "cfp/ladder_sampler.hpp"

namespace cfp {
namespace {

ReleaseReport NewReport(Mechanism mechanism, const MechanismConfig& cfg,
                        const PublicLabeling& lab) {
  ReleaseReport report;
  report.mechanism = mechanism;
  report.c = cfg.c;
  report.t = cfg.t;
  report.m = lab.m();
  report.columns.resize(static_cast<std::size_t>(cfg.c));
  return report;
}

void CheckInputs(const Graph& g, const PublicLabeling& lab,
                 const PrivacySpec& spec, const MechanismConfig& cfg) {
  cfg.Validate();
  if (lab.node_count() != g.node_count()) {
    throw ArgumentError("labeling node count does not match graph");
  }
  if (spec.m() != lab.m() ||
      !std::equal(spec.private_ids().begin(), spec.private_ids().end(),
                  lab.private_ids().begin())) {
    throw ArgumentError("privacy spec does not match the labeling");
  }
}

void Warn(ReleaseReport& report, std::optional<std::string> message) {
  if (!message) return;
  if (std::find(report.warnings.begin(), report.warnings.end(), *message) ==
      report.warnings.end()) {
    report.warnings.push_back(std::move(*message));
  }
}

// Samples g at `scale` against threshold `threshold` and returns f_k of the
// sampled graph along with that graph.
struct SampledQuery {
  Graph graph;
  std::vector<Count> column;
};

SampledQuery SampleAndCount(const Graph& g, const PublicLabeling& lab,
                            const PrivacySpec& spec, double scale,
                            double threshold, int k, NoiseSource& rng,
                            ReleaseReport& report) {
  Warn(report, ThresholdBoundWarning(spec, scale, threshold));
  Graph sampled = SampleGraph(g, lab, spec, scale, threshold, rng);
  std::vector<Count> column = ComputeCfpColumn(sampled, lab, k);
  return {std::move(sampled), std::move(column)};
}

std::vector<double> AddLaplace(std::span<const Count> values, double scale,
                               NoiseSource& rng) {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    out[i] = static_cast<double>(values[i]) + rng.Laplace(scale);
  }
  return out;
}

// Publishes every query with a fixed share of the specification.
ReleaseReport RunFixedShares(Mechanism mechanism, const Graph& g,
                             const PublicLabeling& lab,
                             const PrivacySpec& spec,
                             const MechanismConfig& cfg,
                             std::span<const double> shares,
                             NoiseSource& rng) {
  ReleaseReport report = NewReport(mechanism, cfg, lab);
  for (int k = 1; k <= cfg.c; ++k) {
    const double share = shares[static_cast<std::size_t>(k - 1)];
    const double eps = cfg.t * share;
    const SampledQuery q =
        SampleAndCount(g, lab, spec, share, eps, k, rng, report);
    const auto delta = static_cast<double>(GlobalSensitivity(k, lab.m_p()));
    report.columns[static_cast<std::size_t>(k - 1)] =
        AddLaplace(q.column, delta / eps, rng);
    report.ledger.Charge(ChargeScope::kEdge, Phase::kPublication, k, share);
    StepRecord step;
    step.k = k;
    step.laplace_scale = delta / eps;
    step.published = true;
    step.epsilon_m2 = eps;
    step.share = share;
    report.steps.push_back(step);
  }
  return report;
}

const std::vector<double>& ReleasedColumn(const ReleaseReport& report, int r) {
  return *report.columns[static_cast<std::size_t>(r - 1)];
}

const CfpMatrix& EnsureTruth(const Graph& g, const PublicLabeling& lab,
                             int c, const CfpMatrix* truth,
                             std::optional<CfpMatrix>& storage) {
  if (truth != nullptr) {
    if (truth->c() < c || truth->m() != lab.m()) {
      throw ArgumentError("precomputed CFP matrix does not cover the query");
    }
    return *truth;
  }
  storage = ComputeCfpMatrix(g, lab, c);
  return *storage;
}

// Shared driver for the two absorption mechanisms. `publication_share(k, r)`
// is the absorbed share of queries r+1..k, and `publish` releases column k.
template <typename ShareFn, typename PublishFn>
ReleaseReport RunAbsorbing(Mechanism mechanism, const Graph& g,
                           const PublicLabeling& lab, const PrivacySpec& spec,
                           const MechanismConfig& cfg, NoiseSource& rng,
                           const CfpMatrix* truth, double first_share,
                           ShareFn publication_share, PublishFn publish) {
  CheckInputs(g, lab, spec, cfg);
  std::optional<CfpMatrix> storage;
  const CfpMatrix& f = EnsureTruth(g, lab, cfg.c, truth, storage);
  ReleaseReport report = NewReport(mechanism, cfg, lab);
  const double m_p = static_cast<double>(lab.m_p());

  // k = 1: no previous release to measure against, so no distance step.
  {
    const double eps = cfg.t * first_share;
    const SampledQuery q =
        SampleAndCount(g, lab, spec, first_share, eps, 1, rng, report);
    report.columns[0] = AddLaplace(q.column, 1.0 / eps, rng);
    report.ledger.Charge(ChargeScope::kEdge, Phase::kPublication, 1,
                         first_share);
    StepRecord step;
    step.k = 1;
    step.laplace_scale = 1.0 / eps;
    step.published = true;
    step.epsilon_m2 = eps;
    step.share = first_share;
    report.steps.push_back(step);
  }

  int last = 1;
  for (int k = 2; k <= cfg.c; ++k) {
    StepRecord step;
    step.k = k;

    const std::vector<Count> current = f.column(k);
    const double dist = PrivateDistance(k, current, ReleasedColumn(report, last),
                                        spec, cfg, lab.m_p(), rng);
    const double m1_share = 1.0 / (2.0 * cfg.c);
    report.ledger.Charge(ChargeScope::kTuple, Phase::kDistance, k, m1_share);
    step.epsilon_m1 = cfg.t * m1_share;
    step.noisy_dist = dist;

    const double share = publication_share(k, last);
    const double eps = cfg.t * share;
    const double threshold = m_p / eps;
    step.threshold = threshold;

    // The last query always publishes with whatever budget is left.
    if (k == cfg.c || dist > threshold) {
      report.columns[static_cast<std::size_t>(k - 1)] =
          publish(k, share, eps, step, report);
      report.ledger.Charge(ChargeScope::kEdge, Phase::kPublication, k, share);
      step.published = true;
      step.epsilon_m2 = eps;
      step.share = share;
      last = k;
    }
    report.steps.push_back(step);
  }
  return report;
}

}  // namespace

std::string_view ToString(Mechanism mechanism) {
  switch (mechanism) {
    case Mechanism::kUniform:
      return "uniform";
    case Mechanism::kExponential:
      return "exponential";
    case Mechanism::kDeba:
      return "deba";
    case Mechanism::kDubaLf:
      return "duba-lf";
  }
  return "?";
}

Mechanism ParseMechanism(std::string_view name) {
  if (name == "uniform") return Mechanism::kUniform;
  if (name == "exponential") return Mechanism::kExponential;
  if (name == "deba") return Mechanism::kDeba;
  if (name == "duba-lf" || name == "duba_lf") return Mechanism::kDubaLf;
  throw ConfigError(fmt::format("unknown mechanism '{}'", name));
}

void MechanismConfig::Validate() const {
  if (c < 2) throw ConfigError("counting range c must be >= 2");
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw ConfigError("sample threshold t must be positive");
  }
}

std::vector<double> ExponentialShares(int c) {
  std::vector<double> shares(static_cast<std::size_t>(c));
  for (int k = 1; k <= c; ++k) {
    shares[static_cast<std::size_t>(k - 1)] =
        std::ldexp(1.0, k < c ? -k : -(c - 1));
  }
  return shares;
}

ReleaseReport RunUniform(const Graph& g, const PublicLabeling& lab,
                         const PrivacySpec& spec, const MechanismConfig& cfg,
                         NoiseSource& rng) {
  CheckInputs(g, lab, spec, cfg);
  const std::vector<double> shares(static_cast<std::size_t>(cfg.c),
                                   1.0 / cfg.c);
  return RunFixedShares(Mechanism::kUniform, g, lab, spec, cfg, shares, rng);
}

ReleaseReport RunExponential(const Graph& g, const PublicLabeling& lab,
                             const PrivacySpec& spec,
                             const MechanismConfig& cfg, NoiseSource& rng) {
  CheckInputs(g, lab, spec, cfg);
  return RunFixedShares(Mechanism::kExponential, g, lab, spec, cfg,
                        ExponentialShares(cfg.c), rng);
}

double PrivateDistance(int k, std::span<const Count> current,
                       std::span<const double> last_release,
                       const PrivacySpec& spec, const MechanismConfig& cfg,
                       std::size_t m_p, NoiseSource& rng) {
  if (k < 2) {
    throw ContractViolation(
        "private distance needs a previous release and is undefined at k = 1");
  }
  if (current.size() != last_release.size() || current.size() != spec.m()) {
    throw ArgumentError("distance inputs have mismatched lengths");
  }
  const double scale = 1.0 / (2.0 * cfg.c);
  const double threshold = cfg.t * scale;
  const std::vector<bool> included =
      SampleTuples(current, spec, scale, threshold, rng);
  double sum = 0.0;
  for (std::size_t j = 0; j < current.size(); ++j) {
    if (included[j]) {
      sum += std::fabs(last_release[j] - static_cast<double>(current[j]));
    }
  }
  const double m = static_cast<double>(current.size());
  const double noise_scale =
      2.0 * static_cast<double>(m_p) * cfg.c / (m * cfg.t);
  return sum / m + rng.Laplace(noise_scale);
}

ReleaseReport RunDeba(const Graph& g, const PublicLabeling& lab,
                      const PrivacySpec& spec, const MechanismConfig& cfg,
                      NoiseSource& rng, const CfpMatrix* truth) {
  // Query j's reserved publication share is 1/2^(j+1).
  auto share = [](int k, int r) {
    double s = 0.0;
    for (int j = r + 1; j <= k; ++j) s += std::ldexp(1.0, -(j + 1));
    return s;
  };
  auto publish = [&](int k, double s, double eps, StepRecord& step,
                     ReleaseReport& report) {
    const SampledQuery q = SampleAndCount(g, lab, spec, s, eps, k, rng, report);
    step.laplace_scale = static_cast<double>(lab.m_p()) / eps;
    return AddLaplace(q.column, *step.laplace_scale, rng);
  };
  return RunAbsorbing(Mechanism::kDeba, g, lab, spec, cfg, rng, truth, 0.25,
                      share, publish);
}

ReleaseReport RunDubaLf(const Graph& g, const PublicLabeling& lab,
                        const PrivacySpec& spec, const MechanismConfig& cfg,
                        NoiseSource& rng, const CfpMatrix* truth) {
  const double unit = 1.0 / (2.0 * cfg.c);
  auto share = [unit](int k, int r) { return (k - r) * unit; };
  std::optional<Count> input_ls;
  auto publish = [&](int k, double s, double eps, StepRecord& step,
                     ReleaseReport& report) {
    const SampledQuery q = SampleAndCount(g, lab, spec, s, eps, k, rng, report);
    Count ls = 0;
    if (cfg.ladder_source == LadderSource::kSampledGraph) {
      ls = LocalSensitivity(q.graph, lab);
    } else {
      if (!input_ls) input_ls = LocalSensitivity(g, lab);
      ls = *input_ls;
    }
    step.ladder_ls = ls;
    const Ladder ladder(static_cast<Count>(lab.m_p()), ls);
    const std::vector<Count> noisy = LfNoising(q.column, eps, ladder, rng);
    return std::vector<double>(noisy.begin(), noisy.end());
  };
  return RunAbsorbing(Mechanism::kDubaLf, g, lab, spec, cfg, rng, truth, unit,
                      share, publish);
}

ReleaseReport RunMechanism(const Graph& g, const PublicLabeling& lab,
                           const PrivacySpec& spec, const MechanismConfig& cfg,
                           NoiseSource& rng, const CfpMatrix* truth) {
  switch (cfg.mechanism) {
    case Mechanism::kUniform:
      return RunUniform(g, lab, spec, cfg, rng);
    case Mechanism::kExponential:
      return RunExponential(g, lab, spec, cfg, rng);
    case Mechanism::kDeba:
      return RunDeba(g, lab, spec, cfg, rng, truth);
    case Mechanism::kDubaLf:
      return RunDubaLf(g, lab, spec, cfg, rng, truth);
  }
  throw ConfigError("unknown mechanism");
}

DenseMatrix<double> FillNulls(const ReleaseReport& report) {
  if (report.columns.empty() || !report.columns.front()) {
    throw ContractViolation("cannot fill nulls: column 1 was not released");
  }
  DenseMatrix<double> out(report.m, report.columns.size());
  const std::vector<double>* carry = nullptr;
  for (std::size_t k = 0; k < report.columns.size(); ++k) {
    if (report.columns[k]) carry = &*report.columns[k];
    out.set_column<double>(k, *carry);
  }
  return out;
}

}  // namespace cfp

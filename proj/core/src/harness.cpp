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

#include "cfp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include <fmt/format.h>

#include "cfp/cfp_engine.hpp"
#include "cfp/errors.hpp"

namespace cfp {
namespace {

void CheckShapes(const DenseMatrix<double>& a, const DenseMatrix<double>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ArgumentError(fmt::format("matrix shapes differ: {}x{} vs {}x{}",
                                    a.rows(), a.cols(), b.rows(), b.cols()));
  }
  if (a.rows() == 0 || a.cols() == 0) {
    throw ArgumentError("error metrics need a non-empty matrix");
  }
}

struct Moments {
  double mean = 0.0;
  double stdev = 0.0;
  double sem = 0.0;
};

Moments Summarize(const std::vector<double>& xs) {
  Moments out;
  const auto n = static_cast<double>(xs.size());
  out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.stdev = std::sqrt(ss / (n - 1.0));
    out.sem = out.stdev / std::sqrt(n);
  }
  return out;
}

DenseMatrix<double> TruthPrefix(const CfpMatrix& truth, int c) {
  DenseMatrix<double> out(truth.m(), static_cast<std::size_t>(c));
  for (std::size_t row = 0; row < truth.m(); ++row) {
    for (int k = 1; k <= c; ++k) {
      out(row, static_cast<std::size_t>(k - 1)) =
          static_cast<double>(truth.count(row, k));
    }
  }
  return out;
}

struct TrialResult {
  double mae = 0.0;
  double mre = 0.0;
  double runtime_ms = 0.0;
};

// Weighted index sampling over a cumulative weight table.
std::size_t PickWeighted(const std::vector<double>& cumulative,
                         NoiseSource& rng, std::size_t prefix) {
  const double u = rng.Uniform01() * cumulative[prefix - 1];
  const auto it =
      std::upper_bound(cumulative.begin(), cumulative.begin() + prefix, u);
  return std::min<std::size_t>(it - cumulative.begin(), prefix - 1);
}

}  // namespace

void GroupSpec::Validate() const {
  double sum = 0.0;
  for (double f : fractions) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw ConfigError("group fractions must lie in [0, 1]");
    }
    sum += f;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw ConfigError(fmt::format("group fractions sum to {}, not 1", sum));
  }
  if (!(levels[0] > 0.0)) throw ConfigError("privacy levels must be positive");
  if (!(levels[0] < levels[1] && levels[1] < levels[2])) {
    throw ConfigError("privacy levels must be strictly increasing");
  }
}

PrivacySpec GeneratePrivacySpec(const PublicLabeling& lab,
                                const GroupSpec& groups, NoiseSource& rng) {
  groups.Validate();
  const std::size_t m = lab.m();
  if (m == 0) throw ConfigError("no private users to assign to groups");

  std::array<std::size_t, 3> sizes{};
  std::size_t assigned = 0;
  for (std::size_t g = 0; g < 3; ++g) {
    sizes[g] = static_cast<std::size_t>(
        std::floor(groups.fractions[g] * static_cast<double>(m) + 1e-9));
    assigned += sizes[g];
  }
  for (std::size_t g = 0; assigned < m; g = (g + 1) % 3) {
    if (groups.fractions[g] > 0.0) {
      ++sizes[g];
      ++assigned;
    }
  }

  // Fisher-Yates over private rows.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = m - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.UniformInt(i + 1));
    std::swap(order[i], order[j]);
  }

  std::vector<double> prefs(m, 0.0);
  std::size_t cursor = 0;
  for (std::size_t g = 0; g < 3; ++g) {
    for (std::size_t i = 0; i < sizes[g]; ++i) {
      prefs[order[cursor++]] = groups.levels[g];
    }
  }
  return PrivacySpec(lab, std::move(prefs));
}

double Mae(const DenseMatrix<double>& truth,
           const DenseMatrix<double>& released) {
  CheckShapes(truth, released);
  double sum = 0.0;
  const auto a = truth.data();
  const auto b = released.data();
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::fabs(a[i] - b[i]);
  return sum / static_cast<double>(a.size());
}

double Mre(const DenseMatrix<double>& truth,
           const DenseMatrix<double>& released) {
  CheckShapes(truth, released);
  double sum = 0.0;
  const auto a = truth.data();
  const auto b = released.data();
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum += std::fabs(a[i] - b[i]) / std::max(a[i], 1.0);
  }
  return sum / static_cast<double>(a.size());
}

std::uint64_t TrialSeed(std::uint64_t master, int trial, Mechanism mechanism) {
  return DeriveSeed(master, static_cast<std::uint64_t>(trial),
                    ToString(mechanism));
}

std::uint64_t GroupSeed(std::uint64_t master, int trial) {
  return DeriveSeed(master, static_cast<std::uint64_t>(trial), "groups");
}

EvaluationReport RunTrials(const Dataset& dataset,
                           const EvaluationConfig& config) {
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  if (config.mechanisms.empty() || config.c_values.empty() ||
      config.t_values.empty()) {
    throw ConfigError("evaluation needs at least one mechanism, c and t");
  }
  config.groups.Validate();
  const Graph& g = dataset.graph;
  const PublicLabeling& lab = dataset.labeling;

  struct Setting {
    Mechanism mechanism;
    int c;
    double t;
  };
  std::vector<Setting> settings;
  for (Mechanism mech : config.mechanisms) {
    for (int c : config.c_values) {
      for (double t : config.t_values) {
        MechanismConfig probe{c, t, mech, 0, config.ladder_source};
        probe.Validate();
        settings.push_back({mech, c, t});
      }
    }
  }

  const int c_max = *std::max_element(config.c_values.begin(),
                                      config.c_values.end());
  const CfpMatrix truth = ComputeCfpMatrix(g, lab, c_max);
  std::vector<DenseMatrix<double>> truth_by_c(
      static_cast<std::size_t>(c_max) + 1);
  for (int c : config.c_values) {
    truth_by_c[static_cast<std::size_t>(c)] = TruthPrefix(truth, c);
  }

  const auto trials = static_cast<std::size_t>(config.trials);
  std::vector<PrivacySpec> specs;
  if (config.resample_groups) {
    specs.reserve(trials);
    for (std::size_t i = 0; i < trials; ++i) {
      NoiseSource group_rng(GroupSeed(config.master_seed, static_cast<int>(i)));
      specs.push_back(GeneratePrivacySpec(lab, config.groups, group_rng));
    }
  } else {
    NoiseSource group_rng(GroupSeed(config.master_seed, 0));
    specs.push_back(GeneratePrivacySpec(lab, config.groups, group_rng));
  }

  const std::size_t tasks = settings.size() * trials;
  std::vector<TrialResult> results(tasks);
  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr error;
  std::string error_context;

  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= tasks) return;
      const Setting& s = settings[task / trials];
      const auto trial = static_cast<int>(task % trials);
      try {
        const PrivacySpec& spec =
            specs[config.resample_groups ? static_cast<std::size_t>(trial) : 0];
        MechanismConfig cfg{s.c, s.t, s.mechanism,
                            TrialSeed(config.master_seed, trial, s.mechanism),
                            config.ladder_source};
        NoiseSource rng = config.zero_noise ? NoiseSource::ZeroNoise()
                                            : NoiseSource(cfg.seed);
        const auto start = std::chrono::steady_clock::now();
        const ReleaseReport report = RunMechanism(g, lab, spec, cfg, rng, &truth);
        const DenseMatrix<double> filled = FillNulls(report);
        const auto stop = std::chrono::steady_clock::now();
        const auto& t = truth_by_c[static_cast<std::size_t>(s.c)];
        results[task] = {
            Mae(t, filled), Mre(t, filled),
            std::chrono::duration<double, std::milli>(stop - start).count()};
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) {
          error = std::current_exception();
          error_context = fmt::format("mechanism={} c={} t={} trial={}",
                                      ToString(s.mechanism), s.c, s.t, trial);
        }
        next.store(tasks);
        return;
      }
    }
  };

  unsigned workers = config.workers != 0
                         ? config.workers
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(tasks, 1)));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (error) {
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      throw std::runtime_error(fmt::format("{} ({})", e.what(), error_context));
    }
  }

  EvaluationReport report;
  for (std::size_t si = 0; si < settings.size(); ++si) {
    std::vector<double> mae;
    std::vector<double> mre;
    double runtime = 0.0;
    for (std::size_t i = 0; i < trials; ++i) {
      const TrialResult& r = results[si * trials + i];
      mae.push_back(r.mae);
      mre.push_back(r.mre);
      runtime += r.runtime_ms;
    }
    const Moments a = Summarize(mae);
    const Moments b = Summarize(mre);
    EvaluationRow row;
    row.dataset = dataset.name;
    row.mechanism = settings[si].mechanism;
    row.c = settings[si].c;
    row.t = settings[si].t;
    row.trials = config.trials;
    row.mae_mean = a.mean;
    row.mae_stdev = a.stdev;
    row.mae_sem = a.sem;
    row.mre_mean = b.mean;
    row.mre_stdev = b.stdev;
    row.mre_sem = b.sem;
    row.mean_runtime_ms = runtime / static_cast<double>(trials);
    report.rows.push_back(row);
  }
  return report;
}

void WriteEvaluationCsv(std::ostream& out, const EvaluationReport& report,
                        bool include_runtime) {
  out << "dataset,mechanism,c,t,trials,mae_mean,mae_stdev,mae_sem,mre_mean,"
         "mre_stdev,mre_sem";
  if (include_runtime) out << ",mean_runtime_ms";
  out << '\n';
  for (const EvaluationRow& r : report.rows) {
    out << fmt::format("{},{},{},{:g},{},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g}",
                       r.dataset, ToString(r.mechanism), r.c, r.t, r.trials,
                       r.mae_mean, r.mae_stdev, r.mae_sem, r.mre_mean,
                       r.mre_stdev, r.mre_sem);
    if (include_runtime) out << fmt::format(",{:.3f}", r.mean_runtime_ms);
    out << '\n';
  }
}

DatasetStats ComputeDatasetStats(const Graph& g, const PublicLabeling& lab) {
  DatasetStats s;
  s.nodes = g.node_count();
  s.edges = g.edge_count();
  s.diameter = Diameter(g);
  const auto n = static_cast<double>(s.nodes);
  s.density = s.nodes > 1 ? 2.0 * static_cast<double>(s.edges) / (n * (n - 1.0))
                          : 0.0;
  s.public_users = lab.m_p();
  return s;
}

Graph SyntheticSocialGraph(const SyntheticGraphParams& params) {
  const std::size_t n = params.nodes;
  if (n < 2) throw ConfigError("synthetic graph needs at least two nodes");
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  if (params.edges < n - 1 || static_cast<double>(params.edges) > pairs / 4.0) {
    throw ConfigError("synthetic edge target must lie in [n - 1, n(n-1)/8]");
  }
  if (!(params.exponent > 1.0)) {
    throw ConfigError("degree exponent must exceed 1");
  }

  NoiseSource rng(params.seed);
  std::vector<double> weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    weight[i] = std::pow(static_cast<double>(i) + params.rank_offset,
                         -1.0 / (params.exponent - 1.0));
  }
  auto block = [](std::size_t v) { return v % 2; };

  std::vector<double> cumulative(n);
  std::partial_sum(weight.begin(), weight.end(), cumulative.begin());
  std::array<std::vector<std::size_t>, 2> members;
  std::array<std::vector<double>, 2> block_cumulative;
  for (std::size_t v = 0; v < n; ++v) {
    const double prev =
        block_cumulative[block(v)].empty() ? 0.0 : block_cumulative[block(v)].back();
    members[block(v)].push_back(v);
    block_cumulative[block(v)].push_back(prev + weight[v]);
  }

  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> edges;
  edges.reserve(params.edges);
  auto add = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    if (a > b) std::swap(a, b);
    if (seen.insert(static_cast<std::uint64_t>(a) * n + b).second) {
      edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
    }
  };

  // Backbone: a random recursive tree keeps the graph connected with no
  // isolated vertices.
  for (std::size_t i = 1; i < n; ++i) {
    const bool same = rng.Bernoulli(params.assortativity);
    std::size_t j = PickWeighted(cumulative, rng, i);
    for (int attempt = 0; attempt < 32 && (block(j) == block(i)) != same;
         ++attempt) {
      j = PickWeighted(cumulative, rng, i);
    }
    add(i, j);
  }
  while (edges.size() < params.edges) {
    const std::size_t u = PickWeighted(cumulative, rng, n);
    const std::size_t b =
        rng.Bernoulli(params.assortativity) ? block(u) : 1 - block(u);
    const std::size_t v =
        members[b][PickWeighted(block_cumulative[b], rng, members[b].size())];
    add(u, v);
  }
  return Graph::FromEdges(n, edges);
}

}  // namespace cfp

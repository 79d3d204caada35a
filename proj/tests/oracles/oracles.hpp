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

// Independent reference implementations used only by the tests. Nothing here
// calls into the BFS or CFP code under test.
#ifndef CFP_TESTS_ORACLES_HPP_
#define CFP_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "cfp/cfp_engine.hpp"
#include "cfp/graph.hpp"
#include "cfp/matrix.hpp"

namespace cfp::oracle {

inline constexpr int kUnreachable = std::numeric_limits<int>::max() / 4;

using AdjacencyMatrix = std::vector<std::vector<bool>>;

inline AdjacencyMatrix ToAdjacency(const Graph& g) {
  const std::size_t n = g.node_count();
  AdjacencyMatrix adj(n, std::vector<bool>(n, false));
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) adj[u][v] = true;
  }
  return adj;
}

inline Graph FromAdjacency(const AdjacencyMatrix& adj) {
  std::vector<Edge> edges;
  for (NodeId u = 0; u < adj.size(); ++u) {
    for (NodeId v = u + 1; v < adj.size(); ++v) {
      if (adj[u][v]) edges.push_back({u, v});
    }
  }
  return Graph::FromEdges(adj.size(), edges);
}

// All-pairs hop distances, kUnreachable for disconnected pairs.
inline std::vector<std::vector<int>> FloydWarshall(const AdjacencyMatrix& adj) {
  const std::size_t n = adj.size();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kUnreachable));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (adj[i][j]) d[i][j] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
      }
    }
  }
  return d;
}

inline std::vector<std::vector<int>> FloydWarshall(const Graph& g) {
  return FloydWarshall(ToAdjacency(g));
}

// counts[row][k-1] = number of public users at exact distance k.
inline DenseMatrix<Count> BruteCfp(const AdjacencyMatrix& adj,
                                   const std::vector<bool>& is_public, int c) {
  const auto d = FloydWarshall(adj);
  std::vector<std::size_t> privates;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    if (!is_public[v]) privates.push_back(v);
  }
  DenseMatrix<Count> out(privates.size(), static_cast<std::size_t>(c));
  for (std::size_t row = 0; row < privates.size(); ++row) {
    for (std::size_t p = 0; p < adj.size(); ++p) {
      if (!is_public[p]) continue;
      const int h = d[privates[row]][p];
      if (h >= 1 && h <= c) ++out(row, static_cast<std::size_t>(h - 1));
    }
  }
  return out;
}

// max_i |{public j : adj[i][j]}| over private i.
inline Count BrutePublicDegreeMax(const AdjacencyMatrix& adj,
                                  const std::vector<bool>& is_public) {
  Count best = 0;
  for (std::size_t i = 0; i < adj.size(); ++i) {
    if (is_public[i]) continue;
    Count p = 0;
    for (std::size_t j = 0; j < adj.size(); ++j) {
      if (adj[i][j] && is_public[j]) ++p;
    }
    best = std::max(best, p);
  }
  return best;
}

// Every graph at edge distance exactly one, as adjacency matrices.
inline std::vector<AdjacencyMatrix> SingleEdgeNeighbors(
    const AdjacencyMatrix& adj) {
  std::vector<AdjacencyMatrix> out;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    for (std::size_t v = u + 1; v < adj.size(); ++v) {
      AdjacencyMatrix n = adj;
      n[u][v] = n[v][u] = !adj[u][v];
      out.push_back(std::move(n));
    }
  }
  return out;
}

struct Instance {
  AdjacencyMatrix adj;
  std::vector<bool> is_public;

  Graph graph() const { return FromAdjacency(adj); }
  PublicLabeling labeling() const {
    std::vector<NodeId> pub;
    for (NodeId v = 0; v < is_public.size(); ++v) {
      if (is_public[v]) pub.push_back(v);
    }
    return PublicLabeling::FromPublicSet(is_public.size(), pub);
  }
  Count m_p() const {
    return std::count(is_public.begin(), is_public.end(), true);
  }
};

// Erdos-Renyi graph on [min_nodes, max_nodes] nodes with a random edge
// density and a random non-trivial public subset.
inline Instance RandomInstance(std::mt19937_64& rng, std::size_t min_nodes,
                               std::size_t max_nodes) {
  std::uniform_int_distribution<std::size_t> size(min_nodes, max_nodes);
  const std::size_t n = size(rng);
  std::uniform_real_distribution<double> density(0.05, 0.6);
  std::bernoulli_distribution edge(density(rng));
  Instance inst;
  inst.adj.assign(n, std::vector<bool>(n, false));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (edge(rng)) inst.adj[u][v] = inst.adj[v][u] = true;
    }
  }
  std::uniform_int_distribution<std::size_t> pub_count(1, n - 1);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  inst.is_public.assign(n, false);
  const std::size_t k = pub_count(rng);
  for (std::size_t i = 0; i < k; ++i) inst.is_public[order[i]] = true;
  return inst;
}

// Ladder-quality rung of an output at distance `delta` from the center,
// found by walking the rungs one integer band at a time.
inline Count BruteRung(Count delta, Count m_p, Count ls) {
  delta = delta < 0 ? -delta : delta;
  if (delta == 0) return 0;
  Count lo = 0;
  Count x = 1;
  for (; x <= m_p - ls; ++x) {
    const Count hi = lo + std::min(m_p, ls + x - 1);
    if (delta <= hi) return x;
    lo = hi;
  }
  return x + (delta - lo - 1) / m_p;
}

// Output distribution of the ladder exponential mechanism, normalized by
// summing e^(-eps q / 2) over a window wide enough that the neglected mass
// is below 1e-16.
class BruteLadderPmf {
 public:
  BruteLadderPmf(Count m_p, Count ls, double eps)
      : m_p_(m_p), ls_(ls), eps_(eps) {
    Count lo = 0;
    for (Count x = 0; x < m_p - ls; ++x) lo += std::min(m_p, ls + x);
    const auto extra_bands =
        static_cast<Count>(std::ceil(2.0 * 40.0 * std::log(10.0) / eps)) + 2;
    window_ = lo + extra_bands * m_p;
    for (Count d = -window_; d <= window_; ++d) total_ += Weight(d);
  }

  Count window() const { return window_; }
  double Weight(Count delta) const {
    return std::exp(-eps_ * static_cast<double>(BruteRung(delta, m_p_, ls_)) /
                    2.0);
  }
  double operator()(Count delta) const { return Weight(delta) / total_; }

 private:
  Count m_p_;
  Count ls_;
  double eps_;
  Count window_ = 0;
  double total_ = 0.0;
};

}  // namespace cfp::oracle

#endif  // CFP_TESTS_ORACLES_HPP_

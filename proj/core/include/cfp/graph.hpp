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

#ifndef CFP_GRAPH_HPP_
#define CFP_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cfp {

using NodeId = std::uint32_t;

struct Edge {
  NodeId u;
  NodeId v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable undirected, unweighted simple graph in CSR form. Node ids are
// dense in [0, node_count); `original_id` maps back to the ids of the file
// the graph was loaded from.
class Graph {
 public:
  Graph() = default;

  // Self-loops and duplicate edges (in either orientation) are dropped.
  // `original_ids` must be empty (identity) or have `node_count` entries.
  static Graph FromEdges(std::size_t node_count, std::span<const Edge> edges,
                         std::vector<std::uint64_t> original_ids = {});

  std::size_t node_count() const noexcept { return original_ids_.size(); }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {adjacency_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  bool has_edge(NodeId u, NodeId v) const;

  std::uint64_t original_id(NodeId u) const { return original_ids_[u]; }
  std::span<const std::uint64_t> original_ids() const { return original_ids_; }

  // Canonical edge list: u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  template <typename F>
  void ForEachEdge(F&& f) const {
    for (NodeId u = 0; u < node_count(); ++u) {
      for (NodeId v : neighbors(u)) {
        if (u < v) f(u, v);
      }
    }
  }

  // Builds from canonical (u < v, sorted, unique) edges without re-sorting.
  static Graph FromCanonicalEdges(std::size_t node_count,
                                  std::span<const Edge> edges,
                                  std::vector<std::uint64_t> original_ids);

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<std::uint64_t> original_ids_;
};

// Returns `g` with edge {e.u, e.v} added if absent or removed if present.
Graph ToggleEdge(const Graph& g, Edge e);

struct LoadStats {
  std::size_t lines = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
  // Ids that appeared only in self-loops and were therefore left isolated.
  std::size_t isolated_pruned = 0;
};

struct LoadedGraph {
  Graph graph;
  LoadStats stats;
};

// Reads a whitespace-separated edge list. Lines starting with '#' and blank
// lines are skipped. Ids are remapped densely in increasing original-id
// order, so canonical write-back followed by reload is the identity.
// Throws ParseError on a malformed line and ValidationError when no edge
// survives filtering.
LoadedGraph LoadEdgeList(std::istream& in);

// Writes "u v" per edge with u < v, sorted, using original ids.
void WriteEdgeList(std::ostream& out, const Graph& g);

enum class Role : std::uint8_t { kPrivate, kPublic };

class PublicLabeling {
 public:
  static constexpr std::size_t kNoRow = static_cast<std::size_t>(-1);

  PublicLabeling() = default;

  // Throws ValidationError unless both the public and private sets are
  // non-empty, and ArgumentError on an out-of-range or repeated id.
  static PublicLabeling FromPublicSet(std::size_t node_count,
                                      std::span<const NodeId> public_ids);

  std::size_t node_count() const noexcept { return roles_.size(); }
  Role role(NodeId v) const { return roles_[v]; }
  bool is_public(NodeId v) const { return roles_[v] == Role::kPublic; }

  // Both sorted ascending.
  std::span<const NodeId> public_ids() const { return public_ids_; }
  std::span<const NodeId> private_ids() const { return private_ids_; }

  std::size_t m_p() const noexcept { return public_ids_.size(); }
  std::size_t m() const noexcept { return private_ids_.size(); }

  // Row of `v` in per-private-user tables, or kNoRow for public users.
  std::size_t private_row(NodeId v) const { return row_of_[v]; }

  friend bool operator==(const PublicLabeling&,
                         const PublicLabeling&) = default;

 private:
  std::vector<Role> roles_;
  std::vector<NodeId> public_ids_;
  std::vector<NodeId> private_ids_;
  std::vector<std::size_t> row_of_;
};

// The floor(fraction * n) highest-degree nodes become public (at least one);
// degree ties go to the smaller id. Throws ConfigError if fraction is not in
// (0, 1).
PublicLabeling SelectPublicTopDegree(const Graph& g, double fraction);

// Reusable BFS scratch. Not thread-safe; use one per worker.
class BfsWorkspace {
 public:
  explicit BfsWorkspace(std::size_t node_count)
      : depth_(node_count, -1) {
    queue_.reserve(node_count);
  }

  // Calls visit(node, depth) for every node within `max_depth` hops of
  // `source`, in nondecreasing depth order, starting with (source, 0).
  template <typename Visit>
  void Run(const Graph& g, NodeId source, int max_depth, Visit&& visit) {
    queue_.clear();
    queue_.push_back(source);
    depth_[source] = 0;
    visit(source, 0);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const NodeId u = queue_[head];
      const int du = depth_[u];
      if (du >= max_depth) continue;
      for (NodeId w : g.neighbors(u)) {
        if (depth_[w] >= 0) continue;
        depth_[w] = du + 1;
        queue_.push_back(w);
        visit(w, du + 1);
      }
    }
    for (NodeId u : queue_) depth_[u] = -1;
  }

 private:
  std::vector<int> depth_;
  std::vector<NodeId> queue_;
};

using HopDistances = std::unordered_map<NodeId, int>;

// Exact hop distances from `source` for every node within `max_depth`.
// Nodes that are unreachable or farther away are absent. Throws
// ArgumentError for an invalid source or max_depth < 1.
HopDistances BfsHopDistances(const Graph& g, NodeId source, int max_depth);

// Largest finite eccentricity over all nodes (0 for an edgeless graph).
int Diameter(const Graph& g);

}  // namespace cfp

#endif  // CFP_GRAPH_HPP_

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

#include "cfp/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "cfp/errors.hpp"

namespace cfp {
namespace {

std::vector<std::uint64_t> IdentityIds(std::size_t n) {
  std::vector<std::uint64_t> ids(n);
  std::iota(ids.begin(), ids.end(), std::uint64_t{0});
  return ids;
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Parses the next unsigned integer token, advancing `s`. Returns false if
// no token is left; throws on a token that is not a non-negative integer.
bool NextId(std::string_view& s, std::size_t line, std::uint64_t& out) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return false;
  s.remove_prefix(begin);
  auto end = s.find_first_of(" \t\r");
  if (end == std::string_view::npos) end = s.size();
  const std::string_view token = s.substr(0, end);
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), out);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, "expected a non-negative integer node id, got '" +
                               std::string(token) + "'");
  }
  s.remove_prefix(end);
  return true;
}

}  // namespace

Graph Graph::FromEdges(std::size_t node_count, std::span<const Edge> edges,
                       std::vector<std::uint64_t> original_ids) {
  std::vector<Edge> canon;
  canon.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u >= node_count || e.v >= node_count) {
      throw ArgumentError("edge endpoint out of range");
    }
    if (e.u == e.v) continue;
    canon.push_back(e.u < e.v ? e : Edge{e.v, e.u});
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  return FromCanonicalEdges(node_count, canon, std::move(original_ids));
}

Graph Graph::FromCanonicalEdges(std::size_t node_count,
                                std::span<const Edge> edges,
                                std::vector<std::uint64_t> original_ids) {
  if (original_ids.empty()) original_ids = IdentityIds(node_count);
  if (original_ids.size() != node_count) {
    throw ArgumentError("original id table size does not match node count");
  }
  Graph g;
  g.original_ids_ = std::move(original_ids);
  g.offsets_.assign(node_count + 1, 0);
  for (const Edge& e : edges) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adjacency_.resize(g.offsets_.back());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Sorted (u, v) input keeps each adjacency list sorted: for node x, the
  // neighbors smaller than x arrive (as e.u) before the larger ones (as e.v)
  // and each group arrives in increasing order.
  for (const Edge& e : edges) {
    g.adjacency_[cursor[e.u]++] = e.v;
    g.adjacency_[cursor[e.v]++] = e.u;
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  ForEachEdge([&](NodeId u, NodeId v) { out.push_back({u, v}); });
  return out;
}

Graph ToggleEdge(const Graph& g, Edge e) {
  if (e.u == e.v) throw ArgumentError("cannot toggle a self-loop");
  if (e.u > e.v) std::swap(e.u, e.v);
  std::vector<Edge> edges = g.edges();
  const auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it != edges.end() && *it == e) {
    edges.erase(it);
  } else {
    edges.insert(it, e);
  }
  return Graph::FromCanonicalEdges(
      g.node_count(), edges,
      std::vector<std::uint64_t>(g.original_ids().begin(),
                                 g.original_ids().end()));
}

LoadedGraph LoadEdgeList(std::istream& in) {
  LoadStats stats;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::vector<std::uint64_t> loop_ids;
  std::string line;
  while (std::getline(in, line)) {
    ++stats.lines;
    std::string_view rest = Trim(line);
    if (rest.empty() || rest.front() == '#') continue;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t extra = 0;
    if (!NextId(rest, stats.lines, a) || !NextId(rest, stats.lines, b)) {
      throw ParseError(stats.lines, "expected two node ids");
    }
    if (NextId(rest, stats.lines, extra)) {
      throw ParseError(stats.lines, "expected exactly two node ids");
    }
    if (a == b) {
      ++stats.self_loops_dropped;
      loop_ids.push_back(a);
      continue;
    }
    raw.emplace_back(a, b);
  }
  if (raw.empty()) {
    throw ValidationError("edge list contains no edges");
  }

  std::vector<std::uint64_t> ids;
  ids.reserve(raw.size() * 2);
  for (const auto& [a, b] : raw) {
    ids.push_back(a);
    ids.push_back(b);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  std::sort(loop_ids.begin(), loop_ids.end());
  loop_ids.erase(std::unique(loop_ids.begin(), loop_ids.end()),
                 loop_ids.end());
  for (std::uint64_t id : loop_ids) {
    if (!std::binary_search(ids.begin(), ids.end(), id)) {
      ++stats.isolated_pruned;
    }
  }

  auto dense = [&ids](std::uint64_t id) {
    return static_cast<NodeId>(
        std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& [a, b] : raw) edges.push_back({dense(a), dense(b)});

  const std::size_t n = ids.size();
  Graph g = Graph::FromEdges(n, edges, std::move(ids));
  stats.duplicates_dropped = raw.size() - g.edge_count();
  return {std::move(g), stats};
}

void WriteEdgeList(std::ostream& out, const Graph& g) {
  g.ForEachEdge([&](NodeId u, NodeId v) {
    out << g.original_id(u) << ' ' << g.original_id(v) << '\n';
  });
}

PublicLabeling PublicLabeling::FromPublicSet(
    std::size_t node_count, std::span<const NodeId> public_ids) {
  PublicLabeling lab;
  lab.roles_.assign(node_count, Role::kPrivate);
  for (NodeId v : public_ids) {
    if (v >= node_count) throw ArgumentError("public id out of range");
    if (lab.roles_[v] == Role::kPublic) {
      throw ArgumentError("public id listed twice");
    }
    lab.roles_[v] = Role::kPublic;
  }
  lab.row_of_.assign(node_count, kNoRow);
  for (NodeId v = 0; v < node_count; ++v) {
    if (lab.roles_[v] == Role::kPublic) {
      lab.public_ids_.push_back(v);
    } else {
      lab.row_of_[v] = lab.private_ids_.size();
      lab.private_ids_.push_back(v);
    }
  }
  if (lab.public_ids_.empty()) {
    throw ValidationError("labeling has no public users");
  }
  if (lab.private_ids_.empty()) {
    throw ValidationError("labeling has no private users");
  }
  return lab;
}

PublicLabeling SelectPublicTopDegree(const Graph& g, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw ConfigError("public fraction must lie in (0, 1)");
  }
  const std::size_t n = g.node_count();
  // A small slack absorbs representation error, e.g. 0.2 * 5.
  const auto target = static_cast<std::size_t>(
      std::floor(fraction * static_cast<double>(n) + 1e-9));
  const std::size_t count = std::max<std::size_t>(target, 1);
  if (count >= n) {
    throw ConfigError("public fraction leaves no private users");
  }
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  std::partial_sort(order.begin(), order.begin() + count, order.end(),
                    [&g](NodeId a, NodeId b) {
                      const auto da = g.degree(a);
                      const auto db = g.degree(b);
                      return da != db ? da > db : a < b;
                    });
  order.resize(count);
  return PublicLabeling::FromPublicSet(n, order);
}

HopDistances BfsHopDistances(const Graph& g, NodeId source, int max_depth) {
  if (source >= g.node_count()) throw ArgumentError("BFS source out of range");
  if (max_depth < 1) throw ArgumentError("BFS max_depth must be >= 1");
  HopDistances out;
  BfsWorkspace ws(g.node_count());
  ws.Run(g, source, max_depth, [&out](NodeId v, int d) { out.emplace(v, d); });
  return out;
}

int Diameter(const Graph& g) {
  const int unbounded = static_cast<int>(g.node_count());
  BfsWorkspace ws(g.node_count());
  int best = 0;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    ws.Run(g, s, unbounded, [&best](NodeId, int d) { best = std::max(best, d); });
  }
  return best;
}

}  // namespace cfp

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

#include <fstream>
#include <random>
#include <sstream>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "cfp/errors.hpp"
#include "oracles/oracles.hpp"
#include "test_util.hpp"

namespace cfp {
namespace {

using ::cfp::testing::LoadString;
using ::cfp::testing::MakeGraph;
using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::Pair;
using ::testing::UnorderedElementsAre;

TEST(LoadEdgeListTest, TwoEdges) {
  const LoadedGraph loaded = LoadString("0 1\n1 2");
  EXPECT_EQ(loaded.graph.node_count(), 3u);
  EXPECT_EQ(loaded.graph.edge_count(), 2u);
}

TEST(LoadEdgeListTest, DropsSelfLoopsAndDuplicates) {
  const LoadedGraph loaded = LoadString("0 0\n0 1\n1 0");
  EXPECT_EQ(loaded.graph.node_count(), 2u);
  EXPECT_EQ(loaded.graph.edge_count(), 1u);
  EXPECT_EQ(loaded.stats.self_loops_dropped, 1u);
  EXPECT_EQ(loaded.stats.duplicates_dropped, 1u);
  EXPECT_EQ(loaded.stats.isolated_pruned, 0u);
}

TEST(LoadEdgeListTest, SkipsCommentsAndBlankLines) {
  const LoadedGraph loaded = LoadString("# header\n\n10 20\n  \n# x\n20 30\n");
  EXPECT_EQ(loaded.graph.edge_count(), 2u);
  EXPECT_THAT(testing::Vec(loaded.graph.original_ids()), ElementsAre(10u, 20u, 30u));
}

TEST(LoadEdgeListTest, RemapsSparseIdsInIncreasingOrder) {
  const LoadedGraph loaded = LoadString("900 7\n7 42\n");
  const Graph& g = loaded.graph;
  EXPECT_THAT(testing::Vec(g.original_ids()), ElementsAre(7u, 42u, 900u));
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_FALSE(g.has_edge(1, 2));
}

TEST(LoadEdgeListTest, PrunesNodesSeenOnlyInSelfLoops) {
  const LoadedGraph loaded = LoadString("5 5\n1 2\n");
  EXPECT_EQ(loaded.graph.node_count(), 2u);
  EXPECT_EQ(loaded.stats.isolated_pruned, 1u);
}

TEST(LoadEdgeListTest, MalformedLineReportsLineNumber) {
  try {
    LoadString("0 1\n# ok\n1 x\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_THAT(e.what(), HasSubstr("line 3"));
  }
}

TEST(LoadEdgeListTest, RejectsWrongTokenCounts) {
  EXPECT_THROW(LoadString("1\n"), ParseError);
  EXPECT_THROW(LoadString("1 2 3\n"), ParseError);
  EXPECT_THROW(LoadString("-1 2\n"), ParseError);
}

TEST(LoadEdgeListTest, EmptyGraphIsValidationError) {
  EXPECT_THROW(LoadString(""), ValidationError);
  EXPECT_THROW(LoadString("# nothing\n"), ValidationError);
  EXPECT_THROW(LoadString("3 3\n"), ValidationError);
}

TEST(LoadEdgeListTest, PolblogsTableCounts) {
  const auto path = testing::PolblogsPath();
  if (!path) GTEST_SKIP() << "Polblogs edge list not available";
  std::ifstream in(*path);
  const Graph g = LoadEdgeList(in).graph;
  EXPECT_EQ(g.node_count(), 1222u);
  EXPECT_EQ(g.edge_count(), 16724u);
  EXPECT_EQ(SelectPublicTopDegree(g, 0.05).m_p(), 61u);
  EXPECT_EQ(Diameter(g), 8);
}

TEST(LoadEdgeListTest, WriteBackThenReloadIsIdentity) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::ostringstream text;
    std::uniform_int_distribution<int> id(0, 40);
    for (int e = 0; e < 60; ++e) text << id(rng) * 3 << ' ' << id(rng) * 3 << '\n';
    LoadedGraph first;
    try {
      first = LoadString(text.str());
    } catch (const ValidationError&) {
      continue;
    }
    std::ostringstream canonical;
    WriteEdgeList(canonical, first.graph);
    const LoadedGraph second = LoadString(canonical.str());
    EXPECT_EQ(first.graph, second.graph);
    std::ostringstream again;
    WriteEdgeList(again, second.graph);
    EXPECT_EQ(canonical.str(), again.str());
  }
}

TEST(LoadEdgeListTest, CanonicalFormIsSortedWithSmallerIdFirst) {
  const LoadedGraph loaded = LoadString("3 1\n2 1\n1 0\n");
  std::ostringstream out;
  WriteEdgeList(out, loaded.graph);
  EXPECT_EQ(out.str(), "0 1\n1 2\n1 3\n");
}

TEST(GraphTest, AdjacencyIsSymmetricAndSorted) {
  const Graph g = MakeGraph(5, {{4, 0}, {0, 2}, {2, 4}, {1, 3}, {3, 1}, {2, 2}});
  EXPECT_EQ(g.edge_count(), 4u);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto nb = g.neighbors(u);
    EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
    for (NodeId v : nb) {
      EXPECT_NE(u, v);
      EXPECT_TRUE(g.has_edge(v, u));
    }
  }
  EXPECT_THAT(testing::Vec(g.neighbors(2)), ElementsAre(0u, 4u));
}

TEST(GraphTest, ToggleEdgeAddsAndRemoves) {
  const Graph g = MakeGraph(3, {{0, 1}});
  const Graph added = ToggleEdge(g, {2, 1});
  EXPECT_TRUE(added.has_edge(1, 2));
  EXPECT_EQ(added.edge_count(), 2u);
  const Graph removed = ToggleEdge(added, {0, 1});
  EXPECT_FALSE(removed.has_edge(0, 1));
  EXPECT_EQ(ToggleEdge(removed, {0, 1}), added);
}

TEST(SelectPublicTest, StarCenterIsPublic) {
  const Graph star = MakeGraph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const PublicLabeling lab = SelectPublicTopDegree(star, 0.2);
  EXPECT_THAT(testing::Vec(lab.public_ids()), ElementsAre(0u));
  EXPECT_THAT(testing::Vec(lab.private_ids()), ElementsAre(1u, 2u, 3u, 4u));
  EXPECT_EQ(lab.m_p(), 1u);
  EXPECT_EQ(lab.m(), 4u);
}

TEST(SelectPublicTest, PathMiddleIsPublic) {
  const Graph path = MakeGraph(3, {{0, 1}, {1, 2}});
  const PublicLabeling lab = SelectPublicTopDegree(path, 0.34);
  EXPECT_THAT(testing::Vec(lab.public_ids()), ElementsAre(1u));
}

TEST(SelectPublicTest, TiesGoToSmallerIds) {
  const Graph cycle = MakeGraph(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  EXPECT_THAT(testing::Vec(SelectPublicTopDegree(cycle, 0.5).public_ids()), ElementsAre(0u, 1u, 2u));
}

TEST(SelectPublicTest, AtLeastOnePublicUser) {
  const Graph path = MakeGraph(3, {{0, 1}, {1, 2}});
  EXPECT_EQ(SelectPublicTopDegree(path, 0.01).m_p(), 1u);
}

TEST(SelectPublicTest, FractionOutsideOpenIntervalIsConfigError) {
  const Graph path = MakeGraph(3, {{0, 1}, {1, 2}});
  EXPECT_THROW(SelectPublicTopDegree(path, 0.0), ConfigError);
  EXPECT_THROW(SelectPublicTopDegree(path, 1.0), ConfigError);
  EXPECT_THROW(SelectPublicTopDegree(path, -0.5), ConfigError);
}

TEST(PublicLabelingTest, RowsFollowSortedPrivateIds) {
  const PublicLabeling lab = testing::MakeLabeling(5, {3, 0});
  EXPECT_THAT(testing::Vec(lab.public_ids()), ElementsAre(0u, 3u));
  EXPECT_EQ(lab.private_row(1), 0u);
  EXPECT_EQ(lab.private_row(2), 1u);
  EXPECT_EQ(lab.private_row(4), 2u);
  EXPECT_EQ(lab.private_row(3), PublicLabeling::kNoRow);
  EXPECT_EQ(lab.role(3), Role::kPublic);
}

TEST(PublicLabelingTest, Errors) {
  const std::vector<NodeId> none;
  const std::vector<NodeId> all{0, 1};
  const std::vector<NodeId> dup{0, 0};
  const std::vector<NodeId> out_of_range{5};
  EXPECT_THROW(PublicLabeling::FromPublicSet(2, none), ValidationError);
  EXPECT_THROW(PublicLabeling::FromPublicSet(2, all), ValidationError);
  EXPECT_THROW(PublicLabeling::FromPublicSet(3, dup), ArgumentError);
  EXPECT_THROW(PublicLabeling::FromPublicSet(3, out_of_range), ArgumentError);
}

TEST(BfsHopDistancesTest, SourceIsAtDistanceZero) {
  const Graph g = MakeGraph(3, {{0, 1}});
  for (NodeId s = 0; s < 3; ++s) EXPECT_EQ(BfsHopDistances(g, s, 1).at(s), 0);
}

TEST(BfsHopDistancesTest, PathWithDepthLimit) {
  const Graph path = MakeGraph(4, {{0, 1}, {1, 2}, {2, 3}});
  EXPECT_THAT(BfsHopDistances(path, 0, 2),
              UnorderedElementsAre(Pair(0u, 0), Pair(1u, 1), Pair(2u, 2)));
}

TEST(BfsHopDistancesTest, UnreachableNodesAreAbsent) {
  const Graph g = MakeGraph(4, {{0, 1}, {2, 3}});
  const HopDistances d = BfsHopDistances(g, 0, 10);
  EXPECT_EQ(d.size(), 2u);
  EXPECT_FALSE(d.contains(2));
}

TEST(BfsHopDistancesTest, Errors) {
  const Graph g = MakeGraph(2, {{0, 1}});
  EXPECT_THROW(BfsHopDistances(g, 2, 1), ArgumentError);
  EXPECT_THROW(BfsHopDistances(g, 0, 0), ArgumentError);
}

TEST(BfsHopDistancesTest, MatchesFloydWarshallOnRandomGraphs) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const oracle::Instance inst = oracle::RandomInstance(rng, 2, 50);
    const Graph g = inst.graph();
    const auto fw = oracle::FloydWarshall(inst.adj);
    const int depth = static_cast<int>(g.node_count());
    for (NodeId s = 0; s < g.node_count(); ++s) {
      const HopDistances d = BfsHopDistances(g, s, depth);
      for (NodeId v = 0; v < g.node_count(); ++v) {
        if (fw[s][v] == oracle::kUnreachable) {
          EXPECT_FALSE(d.contains(v));
        } else {
          ASSERT_TRUE(d.contains(v));
          EXPECT_EQ(d.at(v), fw[s][v]);
        }
      }
    }
  }
}

TEST(BfsHopDistancesTest, DistancesAreSymmetric) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const Graph g = oracle::RandomInstance(rng, 2, 30).graph();
    std::uniform_int_distribution<NodeId> node(0, g.node_count() - 1);
    for (int pair = 0; pair < 20; ++pair) {
      const NodeId u = node(rng);
      const NodeId v = node(rng);
      const auto du = BfsHopDistances(g, u, 64);
      const auto dv = BfsHopDistances(g, v, 64);
      ASSERT_EQ(du.contains(v), dv.contains(u));
      if (du.contains(v)) {
        EXPECT_EQ(du.at(v), dv.at(u));
      }
    }
  }
}

TEST(DiameterTest, SmallGraphs) {
  EXPECT_EQ(Diameter(MakeGraph(4, {{0, 1}, {1, 2}, {2, 3}})), 3);
  EXPECT_EQ(Diameter(MakeGraph(4, {{0, 1}, {2, 3}})), 1);
  EXPECT_EQ(Diameter(MakeGraph(3, {})), 0);
}

TEST(DiameterTest, MatchesFloydWarshall) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const oracle::Instance inst = oracle::RandomInstance(rng, 2, 40);
    int expected = 0;
    for (const auto& row : oracle::FloydWarshall(inst.adj)) {
      for (int d : row) {
        if (d != oracle::kUnreachable) expected = std::max(expected, d);
      }
    }
    EXPECT_EQ(Diameter(inst.graph()), expected);
  }
}

}  // namespace
}  // namespace cfp

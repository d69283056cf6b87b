#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "awake/graph.hpp"
#include "awake/rng.hpp"

namespace awake {
namespace {

TEST(Graph, MergesDuplicatesAndSortsAdjacency) {
  const Graph g(4, {{2, 1}, {1, 2}, {0, 3}, {3, 1}});
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(g.max_degree(), 2u);
  ASSERT_EQ(g.neighbors(1).size(), 2u);
  EXPECT_EQ(g.neighbors(1)[0], 2u);
  EXPECT_EQ(g.neighbors(1)[1], 3u);
  EXPECT_TRUE(g.has_edge(3, 0));
  EXPECT_FALSE(g.has_edge(0, 1));
}

TEST(Graph, RejectsSelfLoopsAndBadIds) {
  EXPECT_THROW(Graph(3, {{1, 1}}), std::invalid_argument);
  EXPECT_THROW(Graph(3, {{0, 3}}), std::invalid_argument);
}

TEST(Graph, IncidentEdgesIndexEdges) {
  const Graph g = make_petersen();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    const auto nb = g.neighbors(v);
    const auto inc = g.incident_edges(v);
    ASSERT_EQ(nb.size(), inc.size());
    for (std::size_t k = 0; k < nb.size(); ++k) EXPECT_EQ(g.edges()[inc[k]], Edge(v, nb[k]));
  }
}

TEST(Graph, InducedRelabels) {
  const Graph g = make_cycle(5);
  std::vector<NodeId> to_parent;
  const Graph h = g.induced({true, false, true, true, false}, &to_parent);
  EXPECT_EQ(h.node_count(), 3u);
  EXPECT_EQ(to_parent, (std::vector<NodeId>{0, 2, 3}));
  EXPECT_EQ(h.edge_count(), 1u);
  EXPECT_TRUE(h.has_edge(1, 2));
}

TEST(Graph, EdgeSubgraphKeepsNodes) {
  const Graph g = make_path(4);
  const Graph h = g.edge_subgraph({true, false, true});
  EXPECT_EQ(h.node_count(), 4u);
  EXPECT_EQ(h.edge_count(), 2u);
  EXPECT_FALSE(h.has_edge(1, 2));
}

TEST(Generators, Shapes) {
  EXPECT_EQ(make_complete(6).edge_count(), 15u);
  EXPECT_EQ(make_star(5).max_degree(), 5u);
  EXPECT_EQ(make_cycle(7).edge_count(), 7u);
  const Graph p = make_petersen();
  EXPECT_EQ(p.node_count(), 10u);
  EXPECT_EQ(p.edge_count(), 15u);
  for (NodeId v = 0; v < 10; ++v) EXPECT_EQ(p.degree(v), 3u);
}

TEST(Generators, GnpIsDeterministicAndNearExpectedDensity) {
  const Graph a = gen_gnp(2000, 0.005, 11);
  const Graph b = gen_gnp(2000, 0.005, 11);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, gen_gnp(2000, 0.005, 12));
  const double expected = 0.005 * 2000.0 * 1999.0 / 2.0;  // 9995
  EXPECT_NEAR(static_cast<double>(a.edge_count()), expected, 5 * std::sqrt(expected));
  EXPECT_EQ(gen_gnp(10, 0.0, 1).edge_count(), 0u);
  EXPECT_EQ(gen_gnp(10, 1.0, 1).edge_count(), 45u);
}

TEST(Generators, BipartiteEdgesCrossSides) {
  const BipartiteGraph bg = gen_bipartite(30, 40, 0.1, 5);
  EXPECT_EQ(bg.graph.node_count(), 70u);
  for (const Edge& e : bg.graph.edges()) EXPECT_NE(bg.right[e.u], bg.right[e.v]);
  const auto colouring = two_coloring(bg.graph);
  EXPECT_TRUE(colouring.has_value());
}

TEST(Generators, TwoColoringRejectsOddCycles) {
  EXPECT_FALSE(two_coloring(make_cycle(5)).has_value());
  EXPECT_TRUE(two_coloring(make_cycle(6)).has_value());
}

TEST(GraphIo, RoundTrip) {
  const Graph g = gen_gnp(50, 0.1, 3);
  std::stringstream s;
  write_graph(s, g);
  EXPECT_EQ(read_graph(s), g);
}

TEST(GraphIo, RejectsTruncatedInput) {
  std::stringstream s("3 2\n0 1\n");
  EXPECT_ANY_THROW(read_graph(s));
}

TEST(Matching, MatesRejectSharedEndpoints) {
  const Matching bad({{0, 1}, {1, 2}});
  EXPECT_THROW(bad.mates(3), std::invalid_argument);
  const Matching ok({{0, 1}, {2, 3}});
  const auto mate = ok.mates(4);
  EXPECT_EQ(mate[0], 1u);
  EXPECT_EQ(Matching::from_mates(mate), ok);
}

TEST(Rng, StreamsAreIndependentAndStable) {
  EXPECT_EQ(node_rng(1, 2, "a", 3), node_rng(1, 2, "a", 3));
  EXPECT_NE(node_rng(1, 2, "a", 3), node_rng(1, 2, "b", 3));
  EXPECT_NE(node_rng(1, 2, "a", 3), node_rng(1, 3, "a", 3));
  EXPECT_NE(node_rng(1, 2, "a", 3), node_rng(2, 2, "a", 3));
  EXPECT_NE(node_rng(1, 2, "a", 3), node_rng(1, 2, "a", 4));
}

TEST(Rng, BernoulliFrequency) {
  int hits = 0;
  for (std::uint64_t i = 0; i < 100000; ++i) hits += bernoulli(node_rng(9, i, "coin", 0), 0.3) ? 1 : 0;
  // 0.3 +- 5 sigma with sigma = sqrt(0.21 / 1e5) ~ 0.00145
  EXPECT_NEAR(hits / 100000.0, 0.3, 0.0073);
  EXPECT_FALSE(bernoulli(0, 0.0));
  EXPECT_TRUE(bernoulli(~std::uint64_t{0}, 1.0));
}

TEST(Rng, BelowIsInRangeAndUniform) {
  CounterRng rng(4, label_hash("test"));
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) {
    const auto x = rng.below(7);
    ASSERT_LT(x, 7u);
    ++counts[x];
  }
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
}

}  // namespace
}  // namespace awake

#include <algorithm>

#include <gtest/gtest.h>

#include "awake/augmentation.hpp"
#include "awake/errors.hpp"
#include "awake/oracles.hpp"
#include "awake/rng.hpp"

namespace awake {
namespace {

// Left = even ids, right = odd ids on a path.
Sides path_sides(std::size_t n) {
  Sides s(n);
  for (NodeId v = 0; v < n; ++v) s[v] = v % 2 == 1;
  return s;
}

Graph residual_of(const Graph& g, const Matching& m) {
  std::vector<bool> keep(g.node_count(), true);
  for (const Edge& e : m.edges()) keep[e.u] = keep[e.v] = false;
  return g.induced(keep);
}

// Structural checks of a layer graph against its host.
void check_layers(const Graph& h, const Sides& right, const LayerGraph& lg) {
  const std::size_t last = lg.last_layer();
  ASSERT_EQ(lg.layers.size(), last + 1);
  for (NodeId v = 0; v < h.node_count(); ++v) {
    const bool expected_root = !right[v] && !lg.mate[v] && h.degree(v) > 0;
    ASSERT_EQ(expected_root, lg.layer_of[v] == 0) << "node " << v;
  }
  if (lg.exhausted) return;
  for (std::size_t k = 0; k <= last; ++k) {
    for (NodeId v : lg.layers[k]) {
      ASSERT_EQ(lg.layer_of[v], static_cast<int>(k));
      ASSERT_EQ(right[v], k % 2 == 1);
      if (k == last) {
        ASSERT_FALSE(lg.mate[v]) << "matched node in the last layer";
      } else if (k % 2 == 1) {
        ASSERT_TRUE(lg.mate[v]);
        ASSERT_EQ(lg.layer_of[*lg.mate[v]], static_cast<int>(k + 1));
      }
      for (NodeId w : lg.forward[v]) {
        ASSERT_TRUE(h.has_edge(v, w));
        ASSERT_EQ(lg.layer_of[w], static_cast<int>(k + 1));
        ASSERT_EQ(lg.mate[v] == w, k % 2 == 1);
      }
      if (k > 0) {
        bool reached = false;
        for (NodeId u : lg.layers[k - 1])
          reached = reached || std::find(lg.forward[u].begin(), lg.forward[u].end(), v) != lg.forward[u].end();
        ASSERT_TRUE(reached) << "node " << v << " in layer " << k << " has no predecessor";
      }
    }
  }
}

// ---- match box -------------------------------------------------------------------

TEST(MatchBox, ModesAndCounting) {
  const MatchBox exact = MatchBox::exact();
  const MatchBox greedy = MatchBox::greedy_maximal();
  const MatchBox sleeping = MatchBox::sleeping(Epsilon(1, 20));
  EXPECT_EQ(to_string(exact.mode()), "exact");
  EXPECT_EQ(to_string(greedy.mode()), "greedy_maximal");
  EXPECT_EQ(to_string(sleeping.mode()), "sleeping");
  EXPECT_EQ(exact.approximation(), 1.0);
  EXPECT_EQ(greedy.approximation(), 2.0);
  EXPECT_DOUBLE_EQ(sleeping.approximation(), 350.0);
  EXPECT_TRUE(greedy.maximal());
  EXPECT_FALSE(sleeping.maximal());
  const Graph g = make_cycle(6);
  exact(g, nullptr, 1);
  exact(g, nullptr, 2);
  EXPECT_EQ(exact.invocations(), 2u);
  const MatchBox copy = exact;
  copy(g, nullptr, 3);
  EXPECT_EQ(exact.invocations(), 3u);
}

TEST(MatchBox, IsolatedNodesAreNotCharged) {
  const Graph g(6, {Edge(1, 4)});
  AwakeLedger ledger(6);
  const Matching m = MatchBox::sleeping(Epsilon(1, 20))(g, nullptr, 7, &ledger);
  EXPECT_TRUE(verify_matching(g, m));
  for (NodeId v : {0u, 2u, 3u, 5u}) EXPECT_EQ(ledger.awake(v), 0u);
  EXPECT_GT(ledger.awake(1), 0u);
  EXPECT_TRUE(ledger.consistent());
}

TEST(MatchBox, SleepingOutputIsValid) {
  const MatchBox box = MatchBox::sleeping(Epsilon(1, 20));
  for (std::uint64_t s = 0; s < 30; ++s) {
    const BipartiteGraph b = gen_bipartite(15, 15, 0.2, s);
    EXPECT_TRUE(verify_matching(b.graph, box(b.graph, &b.right, s)));
  }
}

// ---- delta-maximal ---------------------------------------------------------------

TEST(DeltaMaximal, ExactBoxClearsGraphInOneCall) {
  const MatchBox box = MatchBox::exact();
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Graph g = gen_gnp(16, 0.3, s);
    const std::uint64_t before = box.invocations();
    const Matching m = delta_maximal(g, nullptr, box, 0.1, s);
    EXPECT_EQ(residual_of(g, m).edge_count(), 0u);
    EXPECT_EQ(m.size(), max_matching_branch_and_bound(g).size());
    EXPECT_LE(box.invocations() - before, 1u);
  }
}

TEST(DeltaMaximal, EmptyGraph) {
  EXPECT_TRUE(delta_maximal(Graph(5, {}), nullptr, MatchBox::greedy_maximal(), 0.1, 0).empty());
}

TEST(DeltaMaximal, GreedyBoxIsDeltaMaximal) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Graph g = gen_gnp(20, 0.3, s);
    const Matching m = delta_maximal(g, nullptr, MatchBox::greedy_maximal(), 0.1, s);
    ASSERT_TRUE(verify_matching(g, m));
    EXPECT_LE(static_cast<double>(exact_max_matching(residual_of(g, m)).size()), 0.1 * static_cast<double>(m.size()));
  }
}

TEST(DeltaMaximal, SleepingBoxIsDeltaMaximal) {
  const MatchBox box = MatchBox::sleeping(Epsilon(1, 20));
  for (std::uint64_t s = 0; s < 20; ++s) {
    const BipartiteGraph b = gen_bipartite(10, 10, 0.3, s);
    const Matching m = delta_maximal(b.graph, &b.right, box, 0.1, s);
    ASSERT_TRUE(verify_matching(b.graph, m));
    EXPECT_LE(static_cast<double>(exact_max_matching(residual_of(b.graph, m)).size()),
              0.1 * static_cast<double>(m.size()));
  }
}

TEST(DeltaMaximal, RejectsBadDelta) {
  EXPECT_THROW(delta_maximal(make_path(3), nullptr, MatchBox::exact(), 0.0, 0), std::invalid_argument);
  EXPECT_THROW(delta_maximal(make_path(3), nullptr, MatchBox::exact(), 1.0, 0), std::invalid_argument);
}

// ---- layer graph -----------------------------------------------------------------

TEST(LayerGraph, PerfectMatchingLeavesNoRoots) {
  const Graph g(4, {Edge(0, 1), Edge(0, 3), Edge(1, 2), Edge(2, 3)});
  const LayerGraph lg = build_layer_graph(g, path_sides(4), Matching({Edge(0, 1), Edge(2, 3)}), 1);
  EXPECT_TRUE(lg.layers[0].empty());
  EXPECT_TRUE(lg.exhausted);
}

TEST(LayerGraph, PathExample) {
  const Graph g = make_path(4);
  const LayerGraph lg = build_layer_graph(g, path_sides(4), Matching({Edge(1, 2)}), 1);
  ASSERT_EQ(lg.layers.size(), 4u);
  EXPECT_EQ(lg.layers[0], std::vector<NodeId>{0});
  EXPECT_EQ(lg.layers[1], std::vector<NodeId>{1});
  EXPECT_EQ(lg.layers[2], std::vector<NodeId>{2});
  EXPECT_EQ(lg.layers[3], std::vector<NodeId>{3});
  EXPECT_FALSE(lg.exhausted);
  check_layers(g, path_sides(4), lg);
}

TEST(LayerGraph, DropsMatchedNodesAtLastLayer) {
  // 0-1 free pair would give a length-1 path, so match it; 2 is free left,
  // its neighbour 1 is matched and sits at layer 1 = last layer for level 0.
  const Graph g(4, {Edge(0, 1), Edge(1, 2)});
  const Sides right{false, true, false, true};
  const LayerGraph lg = build_layer_graph(g, right, Matching({Edge(0, 1)}), 0);
  EXPECT_EQ(lg.layers[0], std::vector<NodeId>{2});
  EXPECT_TRUE(lg.layers[1].empty());
  EXPECT_EQ(lg.layer_of[1], -1);
}

TEST(LayerGraph, ShorterPathIsAPreconditionViolation) {
  EXPECT_THROW(build_layer_graph(make_path(2), path_sides(2), Matching{}, 1), PreconditionViolated);
}

// ---- maximal path sets -----------------------------------------------------------

TEST(MaximalPaths, LevelZeroIsMaximalMatchingBetweenFreeNodes) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const BipartiteGraph b = gen_bipartite(12, 12, 0.2, s);
    const LayerGraph lg = build_layer_graph(b.graph, b.right, Matching{}, 0);
    const PathSearchResult r = find_maximal_paths(b.graph, b.right, lg, MatchBox::greedy_maximal(), 0.2, s);
    std::vector<bool> on_path(b.graph.node_count(), false);
    for (const Path& p : r.paths) {
      ASSERT_EQ(p.length(), 1u);
      on_path[p.nodes[0]] = on_path[p.nodes[1]] = true;
    }
    for (const Edge& e : b.graph.edges()) EXPECT_TRUE(on_path[e.u] || on_path[e.v]);
  }
}

TEST(MaximalPaths, EmptyRootLayer) {
  const Graph g(4, {Edge(0, 1), Edge(2, 3)});
  const Sides right{false, true, false, true};
  const Matching m({Edge(0, 1), Edge(2, 3)});
  const LayerGraph lg = build_layer_graph(g, right, m, 0);
  const PathSearchResult r = find_maximal_paths(g, right, lg, MatchBox::greedy_maximal(), 0.2, 0);
  EXPECT_TRUE(r.paths.empty());
  EXPECT_EQ(r.residual, g);
}

TEST(MaximalPaths, SleepingBoxPathsAugment) {
  const MatchBox box = MatchBox::sleeping(Epsilon(1, 20));
  for (std::uint64_t s = 0; s < 10; ++s) {
    const BipartiteGraph b = gen_bipartite(10, 10, 0.25, s);
    const Matching m = greedy_maximal_matching(b.graph);
    const LayerGraph lg = build_layer_graph(b.graph, b.right, m, 1);
    const PathSearchResult r = find_maximal_paths(b.graph, b.right, lg, box, 0.5, s);
    for (const Path& p : r.paths) ASSERT_TRUE(is_augmenting_path(b.graph, m, p));
    const Matching bigger = augment(m, r.paths);
    EXPECT_EQ(bigger.size(), m.size() + r.paths.size());
    EXPECT_TRUE(verify_matching(b.graph, bigger));
  }
}

// ---- augment ---------------------------------------------------------------------

TEST(Augment, Examples) {
  const Matching m({Edge(1, 2)});
  EXPECT_EQ(augment(m, {}), m);
  EXPECT_EQ(augment(Matching{}, {Path{{0, 1}}, Path{{2, 3}}, Path{{5, 4}}}).size(), 3u);
  EXPECT_EQ(augment(m, {Path{{0, 1, 2, 3}}}), Matching({Edge(0, 1), Edge(2, 3)}));
}

TEST(Augment, RejectsBadPaths) {
  const Matching m({Edge(1, 2)});
  EXPECT_THROW(augment(m, {Path{{0, 1, 2}}}), InvalidPath);           // even number of edges
  EXPECT_THROW(augment(m, {Path{{1, 2}}}), InvalidPath);              // matched endpoints
  EXPECT_THROW(augment(m, {Path{{0, 3}}, Path{{3, 4}}}), InvalidPath);  // shared node
  EXPECT_THROW(augment(Matching({Edge(1, 2), Edge(3, 4)}), {Path{{0, 1, 3, 5}}}), InvalidPath);
  EXPECT_THROW(augment(m, {Path{{0}}}), InvalidPath);
}

// ---- bipartite loop --------------------------------------------------------------

TEST(Bipartite, CompleteTwoByTwo) {
  const Graph g(4, {Edge(0, 1), Edge(0, 3), Edge(1, 2), Edge(2, 3)});
  std::vector<std::size_t> sizes;
  BipartiteOptions opts;
  opts.on_level = [&](std::size_t, const Graph&, const Matching& m) { sizes.push_back(m.size()); };
  const AmplifyResult r = bipartite_one_plus_eps(g, path_sides(4), MatchBox::greedy_maximal(), 0.2, 1, opts);
  EXPECT_EQ(r.matching.size(), 2u);
  ASSERT_FALSE(sizes.empty());
  EXPECT_EQ(sizes.front(), 2u);
}

TEST(Bipartite, EdgelessGivesEmpty) {
  EXPECT_TRUE(bipartite_one_plus_eps(Graph(6, {}), path_sides(6), MatchBox::greedy_maximal(), 0.2, 1).matching.empty());
}

TEST(Bipartite, LevelsRespectLayersAndProgress) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const BipartiteGraph b = gen_bipartite(12, 12, 0.15, s);
    std::size_t previous = 0;
    BipartiteOptions opts;
    opts.on_level = [&](std::size_t i, const Graph& h, const Matching& m) {
      ASSERT_TRUE(verify_matching(b.graph, m));
      ASSERT_GE(m.size(), previous);
      previous = m.size();
      EXPECT_FALSE(find_short_augmenting_path(h, m, 2 * i + 1)) << "seed " << s << " level " << i;
      check_layers(h, b.right, build_layer_graph(h, b.right, m, i + 1));
    };
    bipartite_one_plus_eps(b.graph, b.right, MatchBox::greedy_maximal(), 0.2, s, opts);
  }
}

TEST(Bipartite, ApproximationAgainstExactOracle) {
  const double eps = 0.2;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const std::size_t side = 5 + s % 36;
    const BipartiteGraph b = gen_bipartite(side, side, 3.0 / static_cast<double>(side), s);
    const AmplifyResult r = bipartite_one_plus_eps(b.graph, b.right, MatchBox::greedy_maximal(), eps, s);
    ASSERT_TRUE(verify_matching(b.graph, r.matching));
    const double opt = static_cast<double>(max_matching_bipartite(b.graph, b.right).size());
    EXPECT_GE(static_cast<double>(r.matching.size()), opt / (1 + 7 * eps)) << "seed " << s;
  }
}

TEST(Bipartite, InitialMatchingIsKept) {
  const Graph g = make_path(4);
  BipartiteOptions opts;
  opts.initial = Matching({Edge(1, 2)});
  const AmplifyResult r = bipartite_one_plus_eps(g, path_sides(4), MatchBox::greedy_maximal(), 0.2, 0, opts);
  EXPECT_EQ(r.matching, Matching({Edge(0, 1), Edge(2, 3)}));
  opts.initial = Matching({Edge(0, 2)});
  EXPECT_THROW(bipartite_one_plus_eps(g, path_sides(4), MatchBox::greedy_maximal(), 0.2, 0, opts),
               std::invalid_argument);
}

// ---- general graphs --------------------------------------------------------------

TEST(General, TriangleAlwaysOne) {
  for (std::uint64_t s = 0; s < 100; ++s)
    EXPECT_EQ(general_one_plus_eps(make_complete(3), MatchBox::greedy_maximal(), 0.5, s).matching.size(), 1u);
}

TEST(General, SeedMeanNearOptimum) {
  const double eps = 0.25;
  int below = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const Graph g = gen_gnp(8 + i % 13, 0.25, i);
    const double opt = static_cast<double>(max_matching_branch_and_bound(g).size());
    double sum = 0.0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const AmplifyResult r = general_one_plus_eps(g, MatchBox::greedy_maximal(), eps, node_rng(i, s, "t", 0));
      ASSERT_TRUE(verify_matching(g, r.matching));
      sum += static_cast<double>(r.matching.size());
    }
    if (sum / 20 < opt / (1 + eps)) ++below;
  }
  EXPECT_EQ(below, 0);
}

TEST(General, LedgerAndCounters) {
  const Graph g = gen_gnp(30, 0.1, 4);
  const MatchBox box = MatchBox::greedy_maximal();
  const AmplifyResult r = general_one_plus_eps(g, box, 0.5, 4);
  EXPECT_EQ(r.box_calls, box.invocations());
  EXPECT_GE(r.iterations, 8u);  // at least the stall limit ceil(4/eps)
  EXPECT_TRUE(r.ledger.consistent());
}

// ---- pipeline --------------------------------------------------------------------

TEST(Pipeline, SingleEdge) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const PipelineResult r = full_matching_pipeline(Graph(2, {Edge(0, 1)}), Epsilon(1, 20), s);
    EXPECT_EQ(r.matching.size(), 1u);
    EXPECT_TRUE(r.metrics.valid);
    EXPECT_TRUE(r.ledger.consistent());
    EXPECT_EQ(r.metrics.total_awake, r.ledger.total_awake());
  }
}

TEST(Pipeline, FourCycleMean) {
  double sum = 0;
  for (std::uint64_t s = 0; s < 20; ++s) sum += static_cast<double>(full_matching_pipeline(make_cycle(4), Epsilon(1, 20), s).matching.size());
  EXPECT_GE(sum / 20, 2.0 / 1.05);
}

}  // namespace
}  // namespace awake

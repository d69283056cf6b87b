#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "awake/engine.hpp"
#include "awake/fractional.hpp"
#include "awake/graph.hpp"

namespace awake {

enum class BoxMode { exact, greedy_maximal, sleeping };

std::string to_string(BoxMode mode);

/// Black-box matcher for bipartite graphs. Node ids of the returned matching
/// and ledger are those of the input graph; isolated nodes take no part and
/// are never charged.
class MatchBox {
 public:
  /// Maximum matching (Hopcroft-Karp with the given sides, else the oracle).
  static MatchBox exact();
  /// Sequential greedy maximal matching.
  static MatchBox greedy_maximal();
  /// Sampled fractional matching followed by randomized rounding.
  static MatchBox sleeping(Epsilon eps, SampleParams params = {});

  BoxMode mode() const { return mode_; }
  /// c such that the box finds at least |M*|/c (in expectation).
  double approximation() const { return approximation_; }
  /// Exact and greedy outputs are maximal, so no delta-maximal wrapper is needed.
  bool maximal() const { return mode_ != BoxMode::sleeping; }
  std::uint64_t invocations() const { return *calls_; }

  /// Runs on g. If ledger is non-null the run's awake rounds are appended to
  /// it (same node ids as g).
  Matching operator()(const Graph& g, const Sides* sides, std::uint64_t seed, AwakeLedger* ledger = nullptr) const;

 private:
  using Impl = std::function<Matching(const Graph&, const Sides*, std::uint64_t, AwakeLedger*)>;
  MatchBox(BoxMode mode, double approximation, Impl impl);

  BoxMode mode_;
  double approximation_;
  Impl impl_;
  std::shared_ptr<std::uint64_t> calls_;
};

/// Repeatedly applies the box to the graph induced by still-unmatched nodes
/// for ceil(3 c ln(1/delta)) iterations, stopping early once no edge is left.
Matching delta_maximal(const Graph& g, const Sides* sides, const MatchBox& box, double delta, std::uint64_t seed,
                       AwakeLedger* ledger = nullptr);

struct LayerGraph {
  std::size_t level = 0;
  /// L_0 .. L_{2*level+1}.
  std::vector<std::vector<NodeId>> layers;
  /// Layer index per host node, -1 if absent.
  std::vector<int> layer_of;
  /// Layer-graph edges from a node to the next layer.
  std::vector<std::vector<NodeId>> forward;
  std::vector<std::optional<NodeId>> mate;
  /// Some layer before the last came out empty: no augmenting path of any
  /// length exists.
  bool exhausted = false;

  std::size_t last_layer() const { return 2 * level + 1; }
};

/// BFS from the free left nodes: non-matching edges lead left to right,
/// matching edges right to left, for 2*level+1 steps. The last layer keeps
/// only free right nodes. Throws PreconditionViolated on reaching a free
/// right node earlier (a shorter augmenting path exists).
LayerGraph build_layer_graph(const Graph& h, const Sides& right, const Matching& m, std::size_t level);

struct PathSearchOptions {
  /// Defaults to ceil(10 / eps^3).
  std::optional<std::size_t> iteration_cap;
  /// delta for the delta-maximal extension matchings of non-maximal boxes;
  /// defaults to eps^5 / 32.
  std::optional<double> delta;
};

struct PathSearchResult {
  /// Vertex-disjoint augmenting paths, node k in layer k.
  std::vector<Path> paths;
  /// H': the host minus the nodes on unfinished paths and minus the edges
  /// dropped between unmatched pairs.
  Graph residual;
  std::vector<Edge> removed_edges;
  std::size_t removed_nodes = 0;
  std::size_t iterations = 0;
  /// Middle-layer node additions and removals plus path completions and
  /// deletions.
  std::size_t updates = 0;
};

PathSearchResult find_maximal_paths(const Graph& h, const Sides& right, const LayerGraph& lg, const MatchBox& box,
                                    double eps, std::uint64_t seed, AwakeLedger* ledger = nullptr,
                                    const PathSearchOptions& options = {});

/// Flips every path. Throws InvalidPath unless the paths are vertex-disjoint,
/// of odd length, start and end at free nodes and alternate non-matching and
/// matching edges.
Matching augment(const Matching& m, const std::vector<Path>& paths);

struct BipartiteOptions {
  PathSearchOptions search;
  /// Starting matching (must be valid in h); empty by default.
  Matching initial;
  /// Called after every level with (level, H', matching).
  std::function<void(std::size_t, const Graph&, const Matching&)> on_level;
};

struct AmplifyResult {
  Matching matching;
  AwakeLedger ledger;
  std::size_t levels = 0;
  std::size_t iterations = 0;
  std::uint64_t box_calls = 0;
};

/// Levels i = 0 .. ceil(2/eps): layer graph, maximal path set, augment, and
/// continue on H'. Stops early once no augmenting path of any length is left.
AmplifyResult bipartite_one_plus_eps(const Graph& h, const Sides& right, const MatchBox& box, double eps,
                                     std::uint64_t seed, const BipartiteOptions& options = {});

struct GeneralOptions {
  /// Upper bound on improvement rounds (full schedule is 2^(8/eps)).
  std::size_t iteration_cap = 10'000;
  /// Stop after this many rounds without growth; defaults to ceil(4/eps).
  std::optional<std::size_t> stall_limit;
  PathSearchOptions search;
};

/// Random bipartition, box on the crossing edges, then improvement rounds on
/// fresh bipartitions that keep same-side matched edges out of play.
AmplifyResult general_one_plus_eps(const Graph& g, const MatchBox& box, double eps, std::uint64_t seed,
                                   const GeneralOptions& options = {});

struct PipelineResult {
  Matching matching;
  AwakeLedger ledger;
  RunMetrics metrics;
};

/// Sleeping-model box amplified by general_one_plus_eps.
PipelineResult full_matching_pipeline(const Graph& g, Epsilon eps, std::uint64_t seed,
                                      const GeneralOptions& options = {}, const SampleParams& params = {});

}  // namespace awake

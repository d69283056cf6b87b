#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "awake/engine.hpp"
#include "awake/graph.hpp"

namespace awake {

enum class MisStatus : std::uint8_t { undecided, in_set, out_set };

/// Tunables for awake_mis. Unset fields take their n-dependent defaults
/// (see resolve_mis_params).
struct MisParams {
  /// Fraction of key space that runs greedy in Part I; default 1/ceil(log2 n).
  std::optional<double> part1_fraction;
  /// Part I schedule length is ceil(part1_round_factor * log2 n) + 1 rounds.
  double part1_round_factor = 4.0;
  /// C: phase i of a Part II iteration has C*(L-i)^2 rounds.
  unsigned part2_phase_constant = 4;
  /// d: degree bound for Part II; default ceil((log2 n)^2) clamped to
  /// [2, Delta].
  std::optional<std::size_t> part2_degree_bound;
  /// K: default 2*ceil(log2 log2 n), at least 1.
  std::optional<unsigned> part2_iterations;
  Round luby_round_cap = 100'000;
  /// Record per-node awake rounds (for wake-pattern checks).
  bool record_trace = false;
};

struct ResolvedMisParams {
  double part1_fraction = 1.0;
  Round part1_rounds = 1;
  unsigned phase_constant = 4;
  std::size_t degree_bound = 2;
  unsigned iterations = 1;
  Round luby_round_cap = 100'000;
  bool degree_bound_raised = false;
};

/// Fills in the defaults for a graph of n nodes and max degree Delta. The
/// degree bound is raised to the Part I residual max degree if that exceeds it.
ResolvedMisParams resolve_mis_params(const MisParams& params, std::size_t n, std::size_t max_degree,
                                     std::size_t residual_max_degree);

/// Lengths of the Part II phases: max(1, C*(L-i)^2) for i = 1..L with
/// L = ceil(log2 d).
std::vector<Round> part2_phase_lengths(std::size_t degree_bound, unsigned phase_constant);
/// Rounds in one Part II iteration, including the final cleanup round.
Round part2_iteration_length(std::size_t degree_bound, unsigned phase_constant);

struct MisResult {
  VertexSet set;
  AwakeLedger ledger;
  RunMetrics metrics;
  std::vector<std::vector<Round>> trace;
};

/// Luby: each round every undecided node draws a fresh key and joins if its
/// key beats all undecided neighbours (ties by id). Everyone stays awake
/// until decided.
MisResult luby_mis(const Graph& g, std::uint64_t seed, Round round_cap = 100'000,
                   std::string_view part_label = "luby");

struct PartialMisResult {
  VertexSet in_set;
  /// Nodes decided out of the set (participants that lost, and neighbours of
  /// the set found in the final global round).
  VertexSet removed;
  /// Residual: nodes that neither participated nor neighbour the set, plus
  /// any participant the schedule did not finish.
  Graph residual;
  std::vector<NodeId> residual_to_parent;
  std::size_t residual_max_degree = 0;
  std::size_t participants = 0;
  std::size_t unfinished_participants = 0;
  AwakeLedger ledger;
  std::vector<std::vector<Round>> trace;
};

/// Part I: partial randomized greedy restricted to nodes whose key lies in
/// the lowest p-fraction of key space, then one global round.
PartialMisResult greedy_partial_mis(const Graph& g, std::uint64_t seed, double p, Round greedy_rounds,
                                    bool record_trace = false);
/// Same with the default greedy schedule length for g.
PartialMisResult greedy_partial_mis(const Graph& g, std::uint64_t seed, double p);

struct Part2Result {
  VertexSet added;
  VertexSet removed;
  Graph residual;
  std::vector<NodeId> residual_to_parent;
  AwakeLedger ledger;
  Round rounds = 0;
  std::vector<std::vector<Round>> trace;
};

/// Part II: K iterations of log d marking phases on a graph of max degree
/// <= d, using the resolved parameters.
Part2Result part2_reduce(const Graph& g, std::uint64_t seed, const ResolvedMisParams& params,
                         bool record_trace = false);

/// Full three-part MIS; always returns a maximal independent set.
MisResult awake_mis(const Graph& g, std::uint64_t seed, const MisParams& params = {});

}  // namespace awake

#pragma once

#include <cstddef>
#include <optional>

#include "awake/graph.hpp"

namespace awake {

/// Size cap for the exponential oracles on non-bipartite graphs.
struct OracleOptions {
  std::size_t node_cap = 24;
};

// ---- validity predicates ----------------------------------------------------

/// Independent and maximal.
bool verify_mis(const Graph& g, const VertexSet& s);
bool verify_independent(const Graph& g, const VertexSet& s);
/// Every edge belongs to g and no two edges share an endpoint.
bool verify_matching(const Graph& g, const Matching& m);
/// Every edge of g has at least one endpoint in c.
bool verify_vertex_cover(const Graph& g, const VertexSet& c);

// ---- exact oracles ----------------------------------------------------------

/// Maximum-cardinality matching. Bipartite inputs (detected by 2-colouring)
/// use augmenting-path search with no size cap; anything else goes through
/// branch-and-bound and throws OracleTooLarge above options.node_cap.
Matching exact_max_matching(const Graph& g, const OracleOptions& options = {});

/// Hopcroft-Karp on an explicitly labelled bipartite graph.
Matching max_matching_bipartite(const Graph& g, const Sides& right);

/// Exhaustive branch-and-bound over edge inclusion with a greedy lower bound.
Matching max_matching_branch_and_bound(const Graph& g, const OracleOptions& options = {});

/// Minimum vertex cover by branching on a max-degree vertex (take it, or
/// take all its neighbours). Throws OracleTooLarge above the cap.
VertexSet exact_min_vertex_cover(const Graph& g, const OracleOptions& options = {});

/// Sequential greedy maximal matching scanning edges in index order.
Matching greedy_maximal_matching(const Graph& g);

/// Some augmenting path of length <= max_len w.r.t. m, or nullopt if none
/// exists. Bipartite graphs use an alternating BFS (returns a shortest one);
/// general graphs use exhaustive alternating DFS.
std::optional<Path> find_short_augmenting_path(const Graph& g, const Matching& m, std::size_t max_len);

/// True iff p is an augmenting path w.r.t. m in g.
bool is_augmenting_path(const Graph& g, const Matching& m, const Path& p);

}  // namespace awake

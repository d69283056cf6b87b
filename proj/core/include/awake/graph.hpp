#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace awake {

using NodeId = std::uint32_t;

/// Undirected edge stored canonically with first < second.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable undirected simple graph on dense ids 0..n-1.
///
/// Edges are kept sorted and unique; adjacency lists are sorted. Every
/// edge has a stable index into edges() which per-edge arrays (fractional
/// weights, freeze rounds) use.
class Graph {
 public:
  Graph() = default;

  /// Builds from an arbitrary edge list. Duplicates are merged; self-loops
  /// and out-of-range endpoints throw std::invalid_argument.
  Graph(std::size_t node_count, std::vector<Edge> edges);

  std::size_t node_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t max_degree() const { return max_degree_; }
  std::size_t degree(NodeId v) const { return adjacency_[v].size(); }

  std::span<const Edge> edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_[v]; }
  /// Edge indices parallel to neighbors(v).
  std::span<const std::size_t> incident_edges(NodeId v) const { return incident_[v]; }

  bool has_edge(NodeId a, NodeId b) const;
  /// Index of edge {a,b} in edges(), if present.
  std::optional<std::size_t> edge_index(NodeId a, NodeId b) const;

  /// Subgraph induced by keep[v] == true, relabelled densely. `to_parent`
  /// receives the original id of each new node.
  Graph induced(const std::vector<bool>& keep, std::vector<NodeId>* to_parent = nullptr) const;

  /// Same node set, only the edges whose index has keep_edge[e] == true.
  Graph edge_subgraph(const std::vector<bool>& keep_edge) const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.edges_ == b.edges_ && a.node_count() == b.node_count(); }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::vector<std::size_t>> incident_;
  std::size_t max_degree_ = 0;
};

/// Side label for bipartite graphs: false = left, true = right.
using Sides = std::vector<bool>;

struct BipartiteGraph {
  Graph graph;
  Sides right;  // right[v] == true iff v is on the right side
};

/// A set of pairwise disjoint edges, stored sorted.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<Edge> edges);

  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  std::span<const Edge> edges() const { return edges_; }
  bool contains(const Edge& e) const;

  /// mate[v] for a graph on n nodes; nullopt for free nodes. Throws
  /// std::invalid_argument if two edges share an endpoint.
  std::vector<std::optional<NodeId>> mates(std::size_t node_count) const;

  static Matching from_mates(const std::vector<std::optional<NodeId>>& mate);

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<Edge> edges_;
};

/// Sorted set of node ids.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(std::vector<NodeId> members);
  static VertexSet from_mask(const std::vector<bool>& mask);

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  std::span<const NodeId> members() const { return members_; }
  bool contains(NodeId v) const;
  std::vector<bool> mask(std::size_t node_count) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<NodeId> members_;
};

/// Ordered node sequence. Length is the number of edges.
struct Path {
  std::vector<NodeId> nodes;

  std::size_t length() const { return nodes.empty() ? 0 : nodes.size() - 1; }
  friend bool operator==(const Path&, const Path&) = default;
};

// ---- generators -----------------------------------------------------------

/// Erdos-Renyi G(n, p). Deterministic for fixed (n, p, seed).
Graph gen_gnp(std::size_t n, double p, std::uint64_t seed);

/// Random bipartite graph: left ids 0..n_left-1, right ids n_left..n-1,
/// each cross pair present independently with probability p.
BipartiteGraph gen_bipartite(std::size_t n_left, std::size_t n_right, double p, std::uint64_t seed);

Graph make_path(std::size_t n);
Graph make_cycle(std::size_t n);
Graph make_complete(std::size_t n);
Graph make_star(std::size_t leaves);
Graph make_petersen();

/// BFS 2-colouring; nullopt if the graph has an odd cycle.
std::optional<Sides> two_coloring(const Graph& g);

// ---- text format ----------------------------------------------------------
// First line "n m", then m lines "u v" with u < v, sorted.

void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);
std::string to_string(const Graph& g);

/// Debug dump of per-edge values: "u v x frozen_round" per line.
void write_edge_values(std::ostream& out, const Graph& g, std::span<const double> x,
                       std::span<const std::int64_t> frozen_round);

}  // namespace awake

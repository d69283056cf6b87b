#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "awake/graph.hpp"

namespace awake {

void write_graph(std::ostream& out, const Graph& g) {
  out << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

Graph read_graph(std::istream& in) {
  std::size_t n = 0;
  std::size_t m = 0;
  if (!(in >> n >> m)) throw std::invalid_argument("graph file: missing 'n m' header");
  std::vector<Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    long long u = 0;
    long long v = 0;
    if (!(in >> u >> v)) throw std::invalid_argument("graph file: expected " + std::to_string(m) + " edges");
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
      throw std::invalid_argument("graph file: endpoint out of range on edge " + std::to_string(i));
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return Graph(n, std::move(edges));
}

std::string to_string(const Graph& g) {
  std::ostringstream os;
  write_graph(os, g);
  return os.str();
}

void write_edge_values(std::ostream& out, const Graph& g, std::span<const double> x,
                       std::span<const std::int64_t> frozen_round) {
  const auto flags = out.flags();
  out << std::setprecision(17);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edges()[i];
    out << e.u << ' ' << e.v << ' ' << x[i] << ' ' << frozen_round[i] << '\n';
  }
  out.flags(flags);
}

}  // namespace awake

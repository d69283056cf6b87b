#include "awake/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

#include "awake/rng.hpp"

namespace awake {

Graph::Graph(std::size_t node_count, std::vector<Edge> edges) : adjacency_(node_count), incident_(node_count) {
  for (const Edge& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("self-loop at node " + std::to_string(e.u));
    if (e.v >= node_count) throw std::invalid_argument("edge endpoint " + std::to_string(e.v) + " out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  std::vector<std::size_t> deg(node_count, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    adjacency_[v].reserve(deg[v]);
    incident_[v].reserve(deg[v]);
  }
  // Edges are sorted by (u, v), so pushing in order keeps lists sorted for
  // the smaller endpoint; the larger endpoint needs a merge below.
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    adjacency_[e.u].push_back(e.v);
    incident_[e.u].push_back(i);
    adjacency_[e.v].push_back(e.u);
    incident_[e.v].push_back(i);
  }
  for (std::size_t v = 0; v < node_count; ++v) {
    auto& adj = adjacency_[v];
    auto& inc = incident_[v];
    if (!std::is_sorted(adj.begin(), adj.end())) {
      std::vector<std::size_t> order(adj.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return adj[a] < adj[b]; });
      std::vector<NodeId> a2(adj.size());
      std::vector<std::size_t> i2(adj.size());
      for (std::size_t k = 0; k < order.size(); ++k) {
        a2[k] = adj[order[k]];
        i2[k] = inc[order[k]];
      }
      adj = std::move(a2);
      inc = std::move(i2);
    }
    max_degree_ = std::max(max_degree_, adj.size());
  }
}

bool Graph::has_edge(NodeId a, NodeId b) const { return edge_index(a, b).has_value(); }

std::optional<std::size_t> Graph::edge_index(NodeId a, NodeId b) const {
  if (a >= node_count() || b >= node_count()) return std::nullopt;
  const auto& adj = adjacency_[a];
  auto it = std::lower_bound(adj.begin(), adj.end(), b);
  if (it == adj.end() || *it != b) return std::nullopt;
  return incident_[a][static_cast<std::size_t>(it - adj.begin())];
}

Graph Graph::induced(const std::vector<bool>& keep, std::vector<NodeId>* to_parent) const {
  std::vector<NodeId> relabel(node_count(), 0);
  std::vector<NodeId> parent;
  for (NodeId v = 0; v < node_count(); ++v) {
    if (keep[v]) {
      relabel[v] = static_cast<NodeId>(parent.size());
      parent.push_back(v);
    }
  }
  std::vector<Edge> kept;
  for (const Edge& e : edges_) {
    if (keep[e.u] && keep[e.v]) kept.emplace_back(relabel[e.u], relabel[e.v]);
  }
  const std::size_t n = parent.size();
  if (to_parent) *to_parent = std::move(parent);
  return Graph(n, std::move(kept));
}

Graph Graph::edge_subgraph(const std::vector<bool>& keep_edge) const {
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (keep_edge[i]) kept.push_back(edges_[i]);
  }
  return Graph(node_count(), std::move(kept));
}

// ---- Matching / VertexSet ---------------------------------------------------

Matching::Matching(std::vector<Edge> edges) : edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool Matching::contains(const Edge& e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

std::vector<std::optional<NodeId>> Matching::mates(std::size_t node_count) const {
  std::vector<std::optional<NodeId>> mate(node_count);
  for (const Edge& e : edges_) {
    if (e.v >= node_count) throw std::invalid_argument("matching edge outside graph");
    if (mate[e.u] || mate[e.v]) throw std::invalid_argument("matching edges share an endpoint");
    mate[e.u] = e.v;
    mate[e.v] = e.u;
  }
  return mate;
}

Matching Matching::from_mates(const std::vector<std::optional<NodeId>>& mate) {
  std::vector<Edge> edges;
  for (NodeId v = 0; v < mate.size(); ++v) {
    if (mate[v] && *mate[v] > v) edges.emplace_back(v, *mate[v]);
  }
  return Matching(std::move(edges));
}

VertexSet::VertexSet(std::vector<NodeId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

VertexSet VertexSet::from_mask(const std::vector<bool>& mask) {
  std::vector<NodeId> m;
  for (NodeId v = 0; v < mask.size(); ++v) {
    if (mask[v]) m.push_back(v);
  }
  return VertexSet(std::move(m));
}

bool VertexSet::contains(NodeId v) const { return std::binary_search(members_.begin(), members_.end(), v); }

std::vector<bool> VertexSet::mask(std::size_t node_count) const {
  std::vector<bool> m(node_count, false);
  for (NodeId v : members_) {
    if (v < node_count) m[v] = true;
  }
  return m;
}

// ---- generators -------------------------------------------------------------

namespace {

// Number of failures before the next success of a Bernoulli(p) sequence.
std::uint64_t geometric_skip(CounterRng& rng, double log_q) {
  const double r = rng.unit();
  return static_cast<std::uint64_t>(std::floor(std::log1p(-r) / log_q));
}

}  // namespace

Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("gen_gnp: p must be in [0,1]");
  std::vector<Edge> edges;
  if (n < 2 || p == 0.0) return Graph(n, {});
  if (p == 1.0) {
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = a + 1; b < n; ++b) edges.emplace_back(a, b);
    return Graph(n, std::move(edges));
  }
  // Batagelj-Brandes skipping over the lower triangle.
  CounterRng rng(seed, label_hash("gen_gnp"));
  const double log_q = std::log1p(-p);
  std::uint64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    w += 1 + static_cast<std::int64_t>(geometric_skip(rng, log_q));
    while (w >= static_cast<std::int64_t>(v) && v < n) {
      w -= static_cast<std::int64_t>(v);
      ++v;
    }
    if (v < n) edges.emplace_back(static_cast<NodeId>(w), static_cast<NodeId>(v));
  }
  return Graph(n, std::move(edges));
}

BipartiteGraph gen_bipartite(std::size_t n_left, std::size_t n_right, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("gen_bipartite: p must be in [0,1]");
  const std::size_t n = n_left + n_right;
  Sides right(n, false);
  for (std::size_t v = n_left; v < n; ++v) right[v] = true;
  std::vector<Edge> edges;
  if (p > 0.0 && n_left > 0 && n_right > 0) {
    const std::uint64_t total = static_cast<std::uint64_t>(n_left) * n_right;
    auto emit = [&](std::uint64_t k) {
      edges.emplace_back(static_cast<NodeId>(k / n_right), static_cast<NodeId>(n_left + k % n_right));
    };
    if (p == 1.0) {
      for (std::uint64_t k = 0; k < total; ++k) emit(k);
    } else {
      CounterRng rng(seed, label_hash("gen_bipartite"));
      const double log_q = std::log1p(-p);
      std::uint64_t k = geometric_skip(rng, log_q);
      while (k < total) {
        emit(k);
        const std::uint64_t skip = geometric_skip(rng, log_q);
        if (skip >= total) break;
        k += 1 + skip;
      }
    }
  }
  return BipartiteGraph{Graph(n, std::move(edges)), std::move(right)};
}

Graph make_path(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  return Graph(n, std::move(e));
}

Graph make_cycle(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId v = 1; v < n; ++v) e.emplace_back(v - 1, v);
  if (n >= 3) e.emplace_back(static_cast<NodeId>(n - 1), 0);
  return Graph(n, std::move(e));
}

Graph make_complete(std::size_t n) { return gen_gnp(n, 1.0, 0); }

Graph make_star(std::size_t leaves) {
  std::vector<Edge> e;
  for (NodeId v = 1; v <= leaves; ++v) e.emplace_back(0, v);
  return Graph(leaves + 1, std::move(e));
}

Graph make_petersen() {
  std::vector<Edge> e;
  for (NodeId i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);              // outer cycle
    e.emplace_back(i, i + 5);                    // spokes
    e.emplace_back(5 + i, 5 + (i + 2) % 5);      // inner pentagram
  }
  return Graph(10, std::move(e));
}

std::optional<Sides> two_coloring(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<int> color(n, -1);
  std::queue<NodeId> q;
  for (NodeId s = 0; s < n; ++s) {
    if (color[s] != -1) continue;
    color[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const NodeId v = q.front();
      q.pop();
      for (NodeId u : g.neighbors(v)) {
        if (color[u] == -1) {
          color[u] = 1 - color[v];
          q.push(u);
        } else if (color[u] == color[v]) {
          return std::nullopt;
        }
      }
    }
  }
  Sides sides(n);
  for (std::size_t v = 0; v < n; ++v) sides[v] = color[v] == 1;
  return sides;
}

}  // namespace awake

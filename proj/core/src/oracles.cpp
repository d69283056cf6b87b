#include "awake/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <queue>
#include <string>

#include "awake/errors.hpp"

namespace awake {

bool verify_independent(const Graph& g, const VertexSet& s) {
  const auto in = s.mask(g.node_count());
  for (NodeId v : s.members())
    if (v >= g.node_count()) return false;
  for (const Edge& e : g.edges())
    if (in[e.u] && in[e.v]) return false;
  return true;
}

bool verify_mis(const Graph& g, const VertexSet& s) {
  if (!verify_independent(g, s)) return false;
  const auto in = s.mask(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (in[v]) continue;
    bool dominated = false;
    for (NodeId u : g.neighbors(v)) {
      if (in[u]) {
        dominated = true;
        break;
      }
    }
    if (!dominated) return false;
  }
  return true;
}

bool verify_matching(const Graph& g, const Matching& m) {
  std::vector<bool> used(g.node_count(), false);
  for (const Edge& e : m.edges()) {
    if (!g.has_edge(e.u, e.v)) return false;
    if (used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = true;
  }
  return true;
}

bool verify_vertex_cover(const Graph& g, const VertexSet& c) {
  const auto in = c.mask(g.node_count());
  for (const Edge& e : g.edges())
    if (!in[e.u] && !in[e.v]) return false;
  return true;
}

Matching greedy_maximal_matching(const Graph& g) {
  std::vector<bool> used(g.node_count(), false);
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) {
    if (!used[e.u] && !used[e.v]) {
      used[e.u] = used[e.v] = true;
      out.push_back(e);
    }
  }
  return Matching(std::move(out));
}

// ---- Hopcroft-Karp ----------------------------------------------------------

Matching max_matching_bipartite(const Graph& g, const Sides& right) {
  const std::size_t n = g.node_count();
  constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::optional<NodeId>> mate(n);
  std::vector<std::uint32_t> dist(n);
  std::vector<NodeId> left;
  for (NodeId v = 0; v < n; ++v)
    if (!right[v]) left.push_back(v);

  auto bfs = [&]() {
    std::queue<NodeId> q;
    bool found = false;
    for (NodeId u : left) {
      if (!mate[u]) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    while (!q.empty()) {
      const NodeId u = q.front();
      q.pop();
      for (NodeId r : g.neighbors(u)) {
        if (!mate[r]) {
          found = true;
        } else if (dist[*mate[r]] == kInf) {
          dist[*mate[r]] = dist[u] + 1;
          q.push(*mate[r]);
        }
      }
    }
    return found;
  };

  // Iterative DFS along the BFS layering.
  std::vector<std::size_t> cursor(n);
  auto dfs = [&](NodeId root) {
    std::vector<NodeId> stack{root};
    std::vector<NodeId> via;  // right vertex used to leave stack[k]
    while (!stack.empty()) {
      const NodeId u = stack.back();
      bool advanced = false;
      auto nbrs = g.neighbors(u);
      while (cursor[u] < nbrs.size()) {
        const NodeId r = nbrs[cursor[u]++];
        if (!mate[r]) {
          via.push_back(r);
          for (std::size_t k = 0; k < stack.size(); ++k) {
            mate[stack[k]] = via[k];
            mate[via[k]] = stack[k];
          }
          return true;
        }
        const NodeId next = *mate[r];
        if (dist[next] == dist[u] + 1) {
          via.push_back(r);
          stack.push_back(next);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        dist[u] = kInf;
        stack.pop_back();
        if (!via.empty()) via.pop_back();
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(cursor.begin(), cursor.end(), 0);
    for (NodeId u : left)
      if (!mate[u]) dfs(u);
  }
  return Matching::from_mates(mate);
}

// ---- branch and bound -------------------------------------------------------

namespace {

using Mask = std::uint64_t;

struct MaskGraph {
  std::vector<Mask> adj;
};

MaskGraph to_masks(const Graph& g) {
  MaskGraph mg;
  mg.adj.assign(g.node_count(), 0);
  for (const Edge& e : g.edges()) {
    mg.adj[e.u] |= Mask{1} << e.v;
    mg.adj[e.v] |= Mask{1} << e.u;
  }
  return mg;
}

void check_cap(const Graph& g, const OracleOptions& options, const char* what) {
  const std::size_t cap = std::min<std::size_t>(options.node_cap, 64);
  if (g.node_count() > cap)
    throw OracleTooLarge(std::string(what) + ": n=" + std::to_string(g.node_count()) + " exceeds oracle cap " +
                         std::to_string(cap));
}

class MatchingSearch {
 public:
  explicit MatchingSearch(const Graph& g) : mg_(to_masks(g)), n_(g.node_count()) {}

  std::vector<std::pair<NodeId, NodeId>> solve(std::vector<std::pair<NodeId, NodeId>> initial) {
    best_ = std::move(initial);
    Mask all = n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1);
    recurse(all);
    return best_;
  }

 private:
  void recurse(Mask free) {
    // Vertices that still have a free neighbour.
    Mask live = 0;
    for (Mask f = free; f; f &= f - 1) {
      const int v = std::countr_zero(f);
      if (mg_.adj[v] & free) live |= Mask{1} << v;
    }
    const std::size_t bound = current_.size() + static_cast<std::size_t>(std::popcount(live)) / 2;
    if (bound <= best_.size()) return;
    if (live == 0) {
      best_ = current_;
      return;
    }
    const int v = std::countr_zero(live);
    const Mask rest = free & ~(Mask{1} << v);
    for (Mask cand = mg_.adj[v] & free; cand; cand &= cand - 1) {
      const int u = std::countr_zero(cand);
      current_.emplace_back(static_cast<NodeId>(v), static_cast<NodeId>(u));
      recurse(rest & ~(Mask{1} << u));
      current_.pop_back();
    }
    recurse(rest);
  }

  MaskGraph mg_;
  std::size_t n_;
  std::vector<std::pair<NodeId, NodeId>> current_;
  std::vector<std::pair<NodeId, NodeId>> best_;
};

class CoverSearch {
 public:
  explicit CoverSearch(const Graph& g) : mg_(to_masks(g)), n_(g.node_count()) {}

  Mask solve() {
    best_ = n_ == 64 ? ~Mask{0} : ((Mask{1} << n_) - 1);
    best_size_ = static_cast<std::size_t>(std::popcount(best_));
    recurse(0, best_);
    return best_;
  }

 private:
  // Greedy matching in the uncovered graph: a lower bound on what is left.
  std::size_t matching_bound(Mask alive) const {
    std::size_t size = 0;
    for (Mask f = alive; f; f &= f - 1) {
      const int v = std::countr_zero(f);
      if (!(alive >> v & 1)) continue;
      const Mask nb = mg_.adj[v] & alive & ~(Mask{1} << v);
      if (nb) {
        const int u = std::countr_zero(nb);
        alive &= ~(Mask{1} << v);
        alive &= ~(Mask{1} << u);
        ++size;
      }
    }
    return size;
  }

  void recurse(Mask chosen, Mask alive) {
    const std::size_t taken = static_cast<std::size_t>(std::popcount(chosen));
    int pick = -1;
    int pick_deg = 0;
    for (Mask f = alive; f; f &= f - 1) {
      const int v = std::countr_zero(f);
      const int d = std::popcount(mg_.adj[v] & alive);
      if (d > pick_deg) {
        pick_deg = d;
        pick = v;
      }
    }
    if (pick < 0) {
      if (taken < best_size_) {
        best_size_ = taken;
        best_ = chosen;
      }
      return;
    }
    if (taken + matching_bound(alive) >= best_size_) return;
    const Mask nb = mg_.adj[pick] & alive;
    // Take the vertex.
    recurse(chosen | (Mask{1} << pick), alive & ~(Mask{1} << pick));
    // Or all of its remaining neighbours.
    recurse(chosen | nb, (alive & ~nb) & ~(Mask{1} << pick));
  }

  MaskGraph mg_;
  std::size_t n_;
  Mask best_ = 0;
  std::size_t best_size_ = 0;
};

}  // namespace

Matching max_matching_branch_and_bound(const Graph& g, const OracleOptions& options) {
  check_cap(g, options, "max_matching_branch_and_bound");
  std::vector<std::pair<NodeId, NodeId>> greedy;
  const Matching initial = greedy_maximal_matching(g);
  for (const Edge& e : initial.edges()) greedy.emplace_back(e.u, e.v);
  MatchingSearch search(g);
  std::vector<Edge> out;
  for (auto [a, b] : search.solve(std::move(greedy))) out.emplace_back(a, b);
  return Matching(std::move(out));
}

Matching exact_max_matching(const Graph& g, const OracleOptions& options) {
  if (auto sides = two_coloring(g)) return max_matching_bipartite(g, *sides);
  return max_matching_branch_and_bound(g, options);
}

VertexSet exact_min_vertex_cover(const Graph& g, const OracleOptions& options) {
  check_cap(g, options, "exact_min_vertex_cover");
  if (g.edge_count() == 0) return VertexSet{};
  CoverSearch search(g);
  const Mask best = search.solve();
  std::vector<NodeId> members;
  for (Mask f = best; f; f &= f - 1) members.push_back(static_cast<NodeId>(std::countr_zero(f)));
  return VertexSet(std::move(members));
}

// ---- augmenting paths -------------------------------------------------------

bool is_augmenting_path(const Graph& g, const Matching& m, const Path& p) {
  const auto& nodes = p.nodes;
  if (nodes.size() < 2 || nodes.size() % 2 != 0) return false;
  std::vector<std::optional<NodeId>> mate;
  try {
    mate = m.mates(g.node_count());
  } catch (const std::invalid_argument&) {
    return false;
  }
  std::vector<bool> seen(g.node_count(), false);
  for (NodeId v : nodes) {
    if (v >= g.node_count() || seen[v]) return false;
    seen[v] = true;
  }
  if (mate[nodes.front()] || mate[nodes.back()]) return false;
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    if (!g.has_edge(nodes[k], nodes[k + 1])) return false;
    const bool in_matching = mate[nodes[k]] && *mate[nodes[k]] == nodes[k + 1];
    if (in_matching != (k % 2 == 1)) return false;
  }
  return true;
}

namespace {

std::optional<Path> bipartite_shortest_augmenting(const Graph& g, const Sides& right,
                                                  const std::vector<std::optional<NodeId>>& mate,
                                                  std::size_t max_len) {
  const std::size_t n = g.node_count();
  constexpr NodeId kNone = std::numeric_limits<NodeId>::max();
  // BFS over left vertices; parent_right[r] = left vertex we came from.
  std::vector<NodeId> parent_left(n, kNone);  // for left vertex: right vertex used to reach it
  std::vector<NodeId> parent_right(n, kNone);
  std::vector<std::size_t> depth(n, 0);
  std::vector<bool> seen(n, false);
  std::queue<NodeId> q;
  for (NodeId v = 0; v < n; ++v) {
    if (!right[v] && !mate[v]) {
      seen[v] = true;
      q.push(v);
    }
  }
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    if (2 * depth[u] + 1 > max_len) continue;
    for (NodeId r : g.neighbors(u)) {
      if (seen[r]) continue;
      if (mate[r] && *mate[r] == u) continue;
      seen[r] = true;
      parent_right[r] = u;
      if (!mate[r]) {
        Path p;
        NodeId cur = r;
        while (true) {
          p.nodes.push_back(cur);
          const NodeId l = parent_right[cur];
          p.nodes.push_back(l);
          if (parent_left[l] == kNone) break;
          cur = parent_left[l];
        }
        std::reverse(p.nodes.begin(), p.nodes.end());
        return p;
      }
      const NodeId l = *mate[r];
      if (!seen[l]) {
        seen[l] = true;
        parent_left[l] = r;
        depth[l] = depth[u] + 1;
        q.push(l);
      }
    }
  }
  return std::nullopt;
}

class AlternatingDfs {
 public:
  AlternatingDfs(const Graph& g, const std::vector<std::optional<NodeId>>& mate, std::size_t max_len)
      : g_(g), mate_(mate), max_len_(max_len), on_path_(g.node_count(), false) {}

  std::optional<Path> run() {
    for (NodeId s = 0; s < g_.node_count(); ++s) {
      if (mate_[s]) continue;
      path_.assign(1, s);
      on_path_[s] = true;
      if (extend(s)) return Path{path_};
      on_path_[s] = false;
    }
    return std::nullopt;
  }

 private:
  // path_ ends at an outer vertex (free start or reached via matching edge).
  bool extend(NodeId v) {
    if (path_.size() > max_len_) return false;  // one more edge would be too long
    for (NodeId u : g_.neighbors(v)) {
      if (on_path_[u]) continue;
      if (mate_[v] && *mate_[v] == u) continue;
      if (!mate_[u]) {
        path_.push_back(u);
        return true;
      }
      const NodeId w = *mate_[u];
      if (on_path_[w]) continue;
      path_.push_back(u);
      path_.push_back(w);
      on_path_[u] = on_path_[w] = true;
      if (extend(w)) return true;
      on_path_[u] = on_path_[w] = false;
      path_.pop_back();
      path_.pop_back();
    }
    return false;
  }

  const Graph& g_;
  const std::vector<std::optional<NodeId>>& mate_;
  std::size_t max_len_;
  std::vector<bool> on_path_;
  std::vector<NodeId> path_;
};

}  // namespace

std::optional<Path> find_short_augmenting_path(const Graph& g, const Matching& m, std::size_t max_len) {
  if (max_len == 0) return std::nullopt;
  const auto mate = m.mates(g.node_count());
  if (auto sides = two_coloring(g)) {
    // Endpoints of an augmenting path lie on opposite colours, so searching
    // from the free vertices of one colour is exhaustive.
    return bipartite_shortest_augmenting(g, *sides, mate, max_len);
  }
  return AlternatingDfs(g, mate, max_len).run();
}

}  // namespace awake

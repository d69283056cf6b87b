#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "awake/augmentation.hpp"
#include "awake/errors.hpp"
#include "awake/rng.hpp"

namespace awake {

namespace {

constexpr int kAbsent = -1;
constexpr int kDropped = -2;  // matched node reached at the last layer

std::size_t ceil_count(double value) {
  if (!(value < 1e15)) return static_cast<std::size_t>(1e15);
  return static_cast<std::size_t>(std::ceil(value));
}

}  // namespace

LayerGraph build_layer_graph(const Graph& h, const Sides& right, const Matching& m, std::size_t level) {
  const std::size_t n = h.node_count();
  if (right.size() != n) throw std::invalid_argument("build_layer_graph: one side label per node expected");
  LayerGraph lg;
  lg.level = level;
  lg.layers.resize(lg.last_layer() + 1);
  lg.layer_of.assign(n, kAbsent);
  lg.forward.resize(n);
  lg.mate = m.mates(n);

  for (NodeId v = 0; v < n; ++v) {
    if (!right[v] && !lg.mate[v] && h.degree(v) > 0) {
      lg.layers[0].push_back(v);
      lg.layer_of[v] = 0;
    }
  }

  const std::size_t last = lg.last_layer();
  for (std::size_t k = 0; k < last; ++k) {
    if (lg.layers[k].empty()) {
      lg.exhausted = true;
      break;
    }
    const int next = static_cast<int>(k + 1);
    if (k % 2 == 0) {
      for (NodeId u : lg.layers[k]) {
        for (NodeId w : h.neighbors(u)) {
          if (lg.mate[u] == w || !right[w] || lg.layer_of[w] != kAbsent) continue;
          if (!lg.mate[w]) {
            if (k + 1 < last)
              throw PreconditionViolated("free right node " + std::to_string(w) + " reached at layer " +
                                         std::to_string(k + 1) + " before the last layer");
          } else if (k + 1 == last) {
            lg.layer_of[w] = kDropped;
            continue;
          }
          lg.layer_of[w] = next;
          lg.layers[k + 1].push_back(w);
        }
        for (NodeId w : h.neighbors(u))
          if (lg.mate[u] != w && lg.layer_of[w] == next) lg.forward[u].push_back(w);
      }
    } else {
      for (NodeId w : lg.layers[k]) {
        const NodeId x = *lg.mate[w];
        if (lg.layer_of[x] == kAbsent) {
          lg.layer_of[x] = next;
          lg.layers[k + 1].push_back(x);
        }
        if (lg.layer_of[x] == next) lg.forward[w].push_back(x);
      }
    }
  }
  for (int& l : lg.layer_of)
    if (l == kDropped) l = kAbsent;
  for (auto& layer : lg.layers) std::sort(layer.begin(), layer.end());
  return lg;
}

PathSearchResult find_maximal_paths(const Graph& h, const Sides& right, const LayerGraph& lg, const MatchBox& box,
                                    double eps, std::uint64_t seed, AwakeLedger* ledger,
                                    const PathSearchOptions& options) {
  if (!(eps > 0.0)) throw std::invalid_argument("find_maximal_paths: eps must be positive");
  const std::size_t n = h.node_count();
  const std::size_t last = lg.last_layer();
  const std::size_t cap = options.iteration_cap.value_or(ceil_count(10.0 / (eps * eps * eps)));
  const bool delta_mode = !box.maximal();
  const double delta = std::max(options.delta.value_or(std::pow(eps, 5.0) / 32.0), 1e-300);

  enum class State { active, done, deleted };
  std::vector<std::vector<NodeId>> paths;
  std::vector<State> state;
  std::vector<bool> used(n, false), deactivated(n, false);
  for (NodeId v : lg.layers[0]) {
    paths.push_back({v});
    state.push_back(State::active);
    used[v] = true;
  }

  PathSearchResult out;
  std::set<Edge> removed;
  for (std::size_t it = 0; it < cap; ++it) {
    std::vector<std::size_t> active;
    for (std::size_t p = 0; p < paths.size(); ++p)
      if (state[p] == State::active) active.push_back(p);
    if (active.empty()) break;
    ++out.iterations;

    std::vector<Edge> ext_edges;
    for (std::size_t p : active) {
      const NodeId u = paths[p].back();
      for (NodeId w : lg.forward[u])
        if (!used[w] && !deactivated[w] && !removed.contains(Edge(u, w))) ext_edges.emplace_back(u, w);
    }
    const Graph ext(n, ext_edges);
    const std::uint64_t step_seed = node_rng(seed, 0, "extend", it);
    const Matching ext_match =
        delta_mode ? delta_maximal(ext, &right, box, delta, step_seed, ledger) : box(ext, &right, step_seed, ledger);
    const auto ext_mate = ext_match.mates(n);

    if (delta_mode) {
      for (const Edge& e : ext.edges()) {
        if (!ext_mate[e.u] && !ext_mate[e.v]) {
          removed.insert(e);
          out.removed_edges.push_back(e);
        }
      }
    }

    for (std::size_t p : active) {
      auto& nodes = paths[p];
      const NodeId u = nodes.back();
      if (ext_mate[u]) {
        const NodeId w = *ext_mate[u];
        used[w] = true;
        nodes.push_back(w);
        if (static_cast<std::size_t>(lg.layer_of[w]) == last) {
          state[p] = State::done;
          out.updates += 1;
        } else {
          const NodeId x = *lg.mate[w];
          used[x] = true;
          nodes.push_back(x);
          out.updates += 2;
        }
      } else if (nodes.size() == 1) {
        used[u] = false;
        deactivated[u] = true;
        state[p] = State::deleted;
        out.updates += 1;
      } else {
        for (int k = 0; k < 2; ++k) {
          used[nodes.back()] = false;
          deactivated[nodes.back()] = true;
          nodes.pop_back();
        }
        out.updates += 2;
      }
    }
  }

  std::size_t matched_edges = 0;
  for (const auto& mt : lg.mate)
    if (mt) ++matched_edges;
  matched_edges /= 2;
  if (out.updates > 6 * matched_edges + lg.layers[0].size())
    throw std::logic_error("find_maximal_paths: update count exceeds 6|M| + |L0|");

  std::vector<bool> gone(n, false);
  for (std::size_t p = 0; p < paths.size(); ++p) {
    if (state[p] == State::done) {
      for (std::size_t k = 0; k < paths[p].size(); ++k)
        if (lg.layer_of[paths[p][k]] != static_cast<int>(k)) throw std::logic_error("path leaves its layer");
      out.paths.push_back(Path{paths[p]});
    } else if (state[p] == State::active) {
      for (NodeId v : paths[p]) gone[v] = true;
      out.removed_nodes += paths[p].size();
    }
  }
  std::vector<bool> keep_edge(h.edge_count());
  for (std::size_t e = 0; e < h.edge_count(); ++e) {
    const Edge& ed = h.edges()[e];
    keep_edge[e] = !gone[ed.u] && !gone[ed.v] && !removed.contains(ed);
  }
  out.residual = h.edge_subgraph(keep_edge);
  return out;
}

}  // namespace awake

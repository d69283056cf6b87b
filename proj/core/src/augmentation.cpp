#include "awake/augmentation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "awake/errors.hpp"
#include "awake/oracles.hpp"
#include "awake/rng.hpp"

namespace awake {

namespace {

std::size_t ceil_count(double value) {
  if (!(value < 1e15)) return static_cast<std::size_t>(1e15);
  return static_cast<std::size_t>(std::ceil(value));
}

Sides random_sides(std::size_t n, std::uint64_t seed, std::uint64_t iteration) {
  Sides side(n);
  for (NodeId v = 0; v < n; ++v) side[v] = bernoulli(node_rng(seed, v, "bipartition", iteration), 0.5);
  return side;
}

}  // namespace

Matching augment(const Matching& m, const std::vector<Path>& paths) {
  std::size_t n = 0;
  for (const Edge& e : m.edges()) n = std::max<std::size_t>(n, e.v + 1);
  for (const Path& p : paths)
    for (NodeId v : p.nodes) n = std::max<std::size_t>(n, v + 1);
  auto mate = m.mates(n);
  std::vector<bool> seen(n, false);

  for (const Path& p : paths) {
    const auto& nodes = p.nodes;
    if (nodes.size() < 2 || nodes.size() % 2 != 0) throw InvalidPath("augmenting path must have odd length");
    for (NodeId v : nodes) {
      if (seen[v]) throw InvalidPath("paths share node " + std::to_string(v));
      seen[v] = true;
    }
    if (mate[nodes.front()] || mate[nodes.back()]) throw InvalidPath("path endpoints must be free");
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
      const bool in_m = mate[nodes[k]] == nodes[k + 1];
      if (in_m != (k % 2 == 1)) throw InvalidPath("path does not alternate at position " + std::to_string(k));
    }
  }
  for (const Path& p : paths)
    for (std::size_t k = 0; k + 1 < p.nodes.size(); k += 2) {
      mate[p.nodes[k]] = p.nodes[k + 1];
      mate[p.nodes[k + 1]] = p.nodes[k];
    }
  return Matching::from_mates(mate);
}

AmplifyResult bipartite_one_plus_eps(const Graph& h, const Sides& right, const MatchBox& box, double eps,
                                     std::uint64_t seed, const BipartiteOptions& options) {
  if (!(eps > 0.0)) throw std::invalid_argument("bipartite_one_plus_eps: eps must be positive");
  if (!verify_matching(h, options.initial))
    throw std::invalid_argument("bipartite_one_plus_eps: initial matching is not valid in h");
  const std::size_t n = h.node_count();
  const std::size_t levels = std::min(ceil_count(2.0 / eps) + 1, n / 2 + 1);
  const std::uint64_t calls_before = box.invocations();

  AmplifyResult out;
  out.ledger = AwakeLedger(n);
  out.matching = options.initial;
  Graph current = h;
  for (std::size_t i = 0; i < levels; ++i) {
    const LayerGraph lg = build_layer_graph(current, right, out.matching, i);
    if (lg.exhausted) break;
    PathSearchResult found = find_maximal_paths(current, right, lg, box, eps, node_rng(seed, 0, "level", i),
                                                &out.ledger, options.search);
    const std::size_t before = out.matching.size();
    out.matching = augment(out.matching, found.paths);
    if (out.matching.size() != before + found.paths.size()) throw std::logic_error("augment lost an edge");
    current = std::move(found.residual);
    ++out.levels;
    out.iterations += found.iterations;
    if (options.on_level) options.on_level(i, current, out.matching);
  }
  out.box_calls = box.invocations() - calls_before;
  return out;
}

AmplifyResult general_one_plus_eps(const Graph& g, const MatchBox& box, double eps, std::uint64_t seed,
                                   const GeneralOptions& options) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("general_one_plus_eps: eps must lie in (0, 1)");
  const std::size_t n = g.node_count();
  const std::uint64_t calls_before = box.invocations();
  AmplifyResult out;
  out.ledger = AwakeLedger(n);

  auto crossing = [&](const Sides& side, const std::vector<bool>& blocked) {
    std::vector<bool> keep(g.edge_count());
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const Edge& ed = g.edges()[e];
      keep[e] = side[ed.u] != side[ed.v] && !blocked[ed.u] && !blocked[ed.v];
    }
    return g.edge_subgraph(keep);
  };

  const Sides first = random_sides(n, seed, 0);
  out.matching = box(crossing(first, std::vector<bool>(n, false)), &first, node_rng(seed, 0, "initial", 0), &out.ledger);

  const double path_bound = 8.0 / eps + 1.0;
  const double inner_eps = eps / 8.0 * std::exp2(-path_bound);
  const std::size_t rounds = std::min(ceil_count(std::exp2(8.0 / eps)), options.iteration_cap);
  const std::size_t stall_limit = options.stall_limit.value_or(ceil_count(4.0 / eps));
  BipartiteOptions inner;
  inner.search = options.search;

  std::size_t stall = 0;
  for (std::size_t t = 1; t <= rounds && stall < stall_limit; ++t) {
    const Sides side = random_sides(n, seed, t);
    std::vector<bool> blocked(n, false);
    std::vector<Edge> crossing_part, kept_part;
    for (const Edge& e : out.matching.edges()) {
      if (side[e.u] == side[e.v]) {
        blocked[e.u] = blocked[e.v] = true;
        kept_part.push_back(e);
      } else {
        crossing_part.push_back(e);
      }
    }
    const Graph h = crossing(side, blocked);
    inner.initial = Matching(crossing_part);
    AmplifyResult improved = bipartite_one_plus_eps(h, side, box, inner_eps, node_rng(seed, 0, "improve", t), inner);
    out.ledger.append(improved.ledger);
    out.iterations += 1;
    if (improved.matching.size() > crossing_part.size()) {
      for (const Edge& e : improved.matching.edges()) kept_part.push_back(e);
      out.matching = Matching(std::move(kept_part));
      stall = 0;
    } else {
      ++stall;
    }
    if (!verify_matching(g, out.matching)) throw std::logic_error("general_one_plus_eps produced an invalid matching");
  }
  out.box_calls = box.invocations() - calls_before;
  return out;
}

PipelineResult full_matching_pipeline(const Graph& g, Epsilon eps, std::uint64_t seed, const GeneralOptions& options,
                                      const SampleParams& params) {
  const MatchBox box = MatchBox::sleeping(eps, params);
  AmplifyResult r = general_one_plus_eps(g, box, eps.value(), seed, options);
  PipelineResult out;
  out.matching = std::move(r.matching);
  out.ledger = std::move(r.ledger);
  out.metrics = summarize(out.ledger);
  out.metrics.valid = verify_matching(g, out.matching);
  out.metrics.solution_size = out.matching.size();
  out.metrics.counters["box_calls"] = static_cast<std::int64_t>(r.box_calls);
  out.metrics.counters["improvement_rounds"] = static_cast<std::int64_t>(r.iterations);
  return out;
}

}  // namespace awake

#include <cmath>
#include <stdexcept>

#include "awake/augmentation.hpp"
#include "awake/oracles.hpp"
#include "awake/rng.hpp"

namespace awake {

std::string to_string(BoxMode mode) {
  switch (mode) {
    case BoxMode::exact:
      return "exact";
    case BoxMode::greedy_maximal:
      return "greedy_maximal";
    case BoxMode::sleeping:
      return "sleeping";
  }
  return "unknown";
}

MatchBox::MatchBox(BoxMode mode, double approximation, Impl impl)
    : mode_(mode), approximation_(approximation), impl_(std::move(impl)), calls_(std::make_shared<std::uint64_t>(0)) {}

MatchBox MatchBox::exact() {
  return MatchBox(BoxMode::exact, 1.0, [](const Graph& g, const Sides* sides, std::uint64_t, AwakeLedger*) {
    return sides ? max_matching_bipartite(g, *sides) : exact_max_matching(g);
  });
}

MatchBox MatchBox::greedy_maximal() {
  return MatchBox(BoxMode::greedy_maximal, 2.0,
                  [](const Graph& g, const Sides*, std::uint64_t, AwakeLedger*) { return greedy_maximal_matching(g); });
}

MatchBox MatchBox::sleeping(Epsilon eps, SampleParams params) {
  // Sampled fractional matching is a (2+100 eps)-approximation and rounding
  // keeps a 1/50 fraction in expectation.
  const double c = 50.0 * (2.0 + 100.0 * eps.value());
  return MatchBox(BoxMode::sleeping, c,
                  [eps, params](const Graph& g, const Sides*, std::uint64_t seed, AwakeLedger* ledger) {
                    SampledResult frac =
                        sampled_fractional(g, eps, params, node_rng(seed, 0, "box/fractional", 0), "fractional");
                    RoundingResult rounded =
                        round_matching_with_ledger(frac.assignment, node_rng(seed, 0, "box/rounding", 0), "rounding");
                    if (ledger) {
                      ledger->append(frac.ledger);
                      ledger->append(rounded.ledger);
                    }
                    return rounded.matching;
                  });
}

Matching MatchBox::operator()(const Graph& g, const Sides* sides, std::uint64_t seed, AwakeLedger* ledger) const {
  ++*calls_;
  std::vector<bool> keep(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) keep[v] = g.degree(v) > 0;
  std::vector<NodeId> to_parent;
  const Graph compact = g.induced(keep, &to_parent);
  if (compact.edge_count() == 0) return Matching{};

  Sides compact_sides;
  if (sides) {
    compact_sides.resize(to_parent.size());
    for (std::size_t v = 0; v < to_parent.size(); ++v) compact_sides[v] = (*sides)[to_parent[v]];
  }
  AwakeLedger local(compact.node_count());
  const Matching inner = impl_(compact, sides ? &compact_sides : nullptr, seed, ledger ? &local : nullptr);
  if (!verify_matching(compact, inner)) throw std::logic_error("match box returned an invalid matching");
  if (ledger) ledger->append_mapped(local, to_parent);

  std::vector<Edge> edges;
  edges.reserve(inner.size());
  for (const Edge& e : inner.edges()) edges.push_back(Edge(to_parent[e.u], to_parent[e.v]));
  return Matching(std::move(edges));
}

Matching delta_maximal(const Graph& g, const Sides* sides, const MatchBox& box, double delta, std::uint64_t seed,
                       AwakeLedger* ledger) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta_maximal: delta must lie in (0, 1)");
  const auto iterations = static_cast<std::size_t>(std::ceil(3.0 * box.approximation() * std::log(1.0 / delta)));
  std::vector<bool> matched(g.node_count(), false);
  std::vector<Edge> out;
  for (std::size_t it = 0; it < iterations; ++it) {
    std::vector<bool> keep_edge(g.edge_count());
    bool any = false;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      keep_edge[e] = !matched[g.edges()[e].u] && !matched[g.edges()[e].v];
      any = any || keep_edge[e];
    }
    if (!any) break;
    const Graph residual = g.edge_subgraph(keep_edge);
    const Matching step = box(residual, sides, node_rng(seed, 0, "delta_maximal", it), ledger);
    for (const Edge& e : step.edges()) {
      matched[e.u] = matched[e.v] = true;
      out.push_back(e);
    }
  }
  return Matching(std::move(out));
}

}  // namespace awake

#include <optional>
#include <string>

#include "awake/errors.hpp"
#include "awake/fractional.hpp"
#include "awake/rng.hpp"

namespace awake {

namespace {

constexpr double kValueSlack = 1e-9;

}  // namespace

RoundingResult round_matching_with_ledger(const FractionalAssignment& a, std::uint64_t seed,
                                          std::string_view part_label) {
  const std::size_t n = a.node_count;
  std::vector<double> value(n, 0.0);
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t e = 0; e < a.edges.size(); ++e) {
    if (a.x[e] < 0.0) throw InvalidAssignment("negative edge weight");
    value[a.edges[e].u] += a.x[e];
    value[a.edges[e].v] += a.x[e];
    incident[a.edges[e].u].push_back(e);
    incident[a.edges[e].v].push_back(e);
  }
  for (NodeId v = 0; v < n; ++v)
    if (value[v] > 1.0 + kValueSlack)
      throw InvalidAssignment("node " + std::to_string(v) + " has c_v = " + std::to_string(value[v]) + " > 1");

  std::vector<bool> marked(a.edges.size(), false);
  for (NodeId v = 0; v < n; ++v) {
    const double r = 10.0 * to_unit(node_rng(seed, v, "propose", 0));
    double cumulative = 0.0;
    for (std::size_t e : incident[v]) {
      cumulative += a.x[e];
      if (r < cumulative) {
        marked[e] = true;
        break;
      }
    }
  }
  std::vector<unsigned> marked_at(n, 0);
  for (std::size_t e = 0; e < a.edges.size(); ++e) {
    if (!marked[e]) continue;
    ++marked_at[a.edges[e].u];
    ++marked_at[a.edges[e].v];
  }
  std::vector<Edge> kept;
  for (std::size_t e = 0; e < a.edges.size(); ++e)
    if (marked[e] && marked_at[a.edges[e].u] == 1 && marked_at[a.edges[e].v] == 1) kept.push_back(a.edges[e]);

  RoundingResult out{Matching(std::move(kept)), AwakeLedger(n)};
  // One round to propose, one to learn whether a neighbouring edge was marked.
  out.ledger.add_rounds(2);
  for (NodeId v = 0; v < n; ++v)
    if (value[v] > 0.0) out.ledger.charge(v, part_label, 2);
  return out;
}

Matching round_matching(const FractionalAssignment& assignment, std::uint64_t seed) {
  return round_matching_with_ledger(assignment, seed).matching;
}

}  // namespace awake

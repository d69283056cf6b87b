#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "awake/engine.hpp"
#include "awake/graph.hpp"

namespace awake {

using Rational = boost::multiprecision::cpp_rational;

/// A rational epsilon num/den, kept exact so freeze decisions do not drift.
struct Epsilon {
  std::uint64_t num = 1;
  std::uint64_t den = 20;

  Epsilon() = default;
  /// Reduced; throws std::invalid_argument unless 0 < num/den < 1.
  Epsilon(std::uint64_t num, std::uint64_t den);

  /// Accepts "0.05", "1/20" or "5e-2" style input.
  static Epsilon parse(std::string_view text);
  /// Nearest fraction with denominator 10^9.
  static Epsilon from_double(double value);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  Rational exact() const { return Rational(num) / den; }
  std::string str() const;

  friend bool operator==(const Epsilon&, const Epsilon&) = default;
};

/// Per-edge weights plus the round each edge froze in.
struct FractionalAssignment {
  std::size_t node_count = 0;
  std::vector<Edge> edges;
  std::vector<double> x;
  /// Round j whose weight w_j the edge kept; -1 if never frozen (hand-built
  /// assignments).
  std::vector<Round> frozen_round;
  /// Edge weight zeroed because an endpoint ended heavy.
  std::vector<bool> zeroed;
  std::vector<double> node_value;
  VertexSet frozen_nodes;

  /// Exact data, present when produced by vanilla/sampled runs.
  std::optional<Epsilon> epsilon;
  std::size_t max_degree = 0;

  /// Hand-built assignment on g; frozen_round is -1 everywhere.
  static FractionalAssignment from_weights(const Graph& g, std::vector<double> weights);

  double total() const;
  /// x_e = (1+eps)^j / Delta as a rational; requires epsilon.
  Rational exact_weight(std::size_t e) const;
  Rational exact_total() const;
  std::vector<Rational> exact_node_values() const;

  friend bool operator==(const FractionalAssignment&, const FractionalAssignment&) = default;
};

/// log^(i) n: i-fold log2 of n, floored at 2 (and log^(0) n = n).
double iterated_log(double n, unsigned i);

/// Smallest i >= 1 with (1+eps)^j / Delta <= 1 / (log^(i) n)^5; the last phase
/// (first i where the iterated log hits its floor) if none qualifies.
unsigned phase_of_round(Round j, std::size_t n, double eps, std::size_t max_degree);

/// Last phase: first i >= 1 with log^(i) n == 2.
unsigned last_phase(std::size_t n);

struct SampleParams {
  /// C in p_i = C / (log^(i) n)^4.
  double estimator_constant = 64.0;
  /// Overrides p_i for phases 1..size(); later phases use the formula.
  std::vector<double> forced_probabilities;
  /// Overrides the stop phase (first phase run with vanilla semantics).
  std::optional<unsigned> stop_phase;
};

/// Weights, phases and probabilities for one run.
class SampleSchedule {
 public:
  SampleSchedule(std::size_t n, std::size_t max_degree, Epsilon eps, const SampleParams& params = {});

  /// w_j = (1+eps)^j / Delta; w_{-1} = 0.
  double weight(Round j) const;
  unsigned phase(Round j) const { return phase_[static_cast<std::size_t>(j)]; }
  /// p_i, clamped to at most 1.
  double probability(unsigned i) const;
  unsigned stop_phase() const { return stop_phase_; }
  /// First j with w_j >= 1; every edge still active there is frozen.
  Round final_round() const { return final_round_; }
  /// First round run with vanilla semantics (exact c_v, threshold 1 - eps).
  Round vanilla_start() const { return vanilla_start_; }

  /// Integers W_k = (den+num)^k * den^(J-k); w_k = W_k / scale().
  const boost::multiprecision::cpp_int& scaled_weight(Round k) const { return scaled_[static_cast<std::size_t>(k)]; }
  const boost::multiprecision::cpp_int& scale() const { return scale_; }

 private:
  std::size_t n_;
  Epsilon eps_;
  double eps_value_;
  std::size_t max_degree_;
  SampleParams params_;
  Round final_round_ = 0;
  Round vanilla_start_ = 0;
  unsigned stop_phase_ = 1;
  std::vector<unsigned> phase_;
  std::vector<double> weight_;
  std::vector<boost::multiprecision::cpp_int> scaled_;
  boost::multiprecision::cpp_int scale_;
};

/// Vanilla algorithm: all edges start at 1/Delta; every round nodes with
/// c_v >= 1 - eps freeze, the remaining active edges grow by (1+eps).
FractionalAssignment vanilla_fractional(const Graph& g, Epsilon eps);

struct SampledResult {
  FractionalAssignment assignment;
  AwakeLedger ledger;
  Diagnostics diagnostics;
  Round rounds = 0;
};

/// Low-awake variant: nodes estimate c_v from sampled neighbours and freeze
/// when the estimate exceeds 1 - 10 eps; from the schedule's vanilla start on
/// it runs the vanilla rule. Heavy nodes (c_v > 1) drop their edges at the end.
SampledResult sampled_fractional(const Graph& g, Epsilon eps, const SampleParams& params, std::uint64_t seed,
                                 std::string_view part_label = "fractional");

/// All frozen nodes; a vertex cover whenever every edge froze.
VertexSet extract_vertex_cover(const FractionalAssignment& assignment);

struct RoundingResult {
  Matching matching;
  AwakeLedger ledger;
};

/// Each node proposes along e with probability x_e / 10; marked edges without
/// a marked neighbour edge are kept. Throws InvalidAssignment if some
/// c_v > 1 (beyond 1e-9 of float slack).
Matching round_matching(const FractionalAssignment& assignment, std::uint64_t seed);
/// Same, plus the two awake rounds charged to every node with weight.
RoundingResult round_matching_with_ledger(const FractionalAssignment& assignment, std::uint64_t seed,
                                          std::string_view part_label = "rounding");

/// "u v x frozen_round" lines in canonical edge order.
void write_assignment(std::ostream& out, const FractionalAssignment& assignment);

}  // namespace awake

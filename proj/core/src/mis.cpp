#include "awake/mis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "awake/oracles.hpp"
#include "awake/rng.hpp"

namespace awake {

namespace {

constexpr std::uint64_t kJoin = 1;
constexpr std::uint64_t kInSet = 2;
constexpr std::uint64_t kMarked = 3;
constexpr std::uint64_t kAlive = 4;

double log2_of(std::size_t n) { return n <= 1 ? 0.0 : std::log2(static_cast<double>(n)); }

unsigned ceil_log2(std::size_t x) {
  unsigned l = 0;
  while ((std::size_t{1} << l) < x) ++l;
  return l;
}

// Total order on (key, id): strictly smaller wins, ties broken by id.
bool beats(std::uint64_t key_a, NodeId a, std::uint64_t key_b, NodeId b) {
  return key_a < key_b || (key_a == key_b && a < b);
}

VertexSet collect(const std::vector<MisStatus>& status, MisStatus want) {
  std::vector<NodeId> out;
  for (NodeId v = 0; v < status.size(); ++v)
    if (status[v] == want) out.push_back(v);
  return VertexSet(std::move(out));
}

// ---- Luby ---------------------------------------------------------------------

class LubyProtocol final : public Protocol {
 public:
  LubyProtocol(const Graph& g, std::uint64_t seed)
      : seed_(seed), status_(g.node_count(), MisStatus::undecided), candidate_(g.node_count(), false) {}

  int subrounds() const override { return 2; }
  bool terminated(NodeId v) const override { return status_[v] != MisStatus::undecided; }
  bool wakes(NodeId, Round) override { return true; }

  void send(NodeId v, Round r, int subround, Outbox& out) override {
    if (subround == 1) {
      out.broadcast(key(v, r), 64);
    } else if (candidate_[v]) {
      out.broadcast(kJoin, 1);
    }
  }

  void receive(NodeId v, Round r, int subround, std::span<const Envelope> inbox) override {
    if (subround == 1) {
      const std::uint64_t mine = key(v, r);
      bool wins = true;
      for (const Envelope& e : inbox) {
        if (!beats(mine, v, e.payload, e.sender)) {
          wins = false;
          break;
        }
      }
      candidate_[v] = wins;
      return;
    }
    if (candidate_[v]) {
      status_[v] = MisStatus::in_set;
    } else if (!inbox.empty()) {
      status_[v] = MisStatus::out_set;
    }
  }

  const std::vector<MisStatus>& status() const { return status_; }

 private:
  std::uint64_t key(NodeId v, Round r) const { return node_rng(seed_, v, "luby", static_cast<std::uint64_t>(r)); }

  std::uint64_t seed_;
  std::vector<MisStatus> status_;
  std::vector<bool> candidate_;
};

// ---- Part I -------------------------------------------------------------------

class GreedyPartialProtocol final : public Protocol {
 public:
  GreedyPartialProtocol(const Graph& g, std::uint64_t seed, double p, Round greedy_rounds)
      : greedy_rounds_(greedy_rounds),
        key_(g.node_count()),
        participant_(g.node_count(), false),
        status_(g.node_count(), MisStatus::undecided),
        done_(g.node_count(), false),
        candidate_(g.node_count(), false),
        residual_degree_(g.node_count(), 0) {
    // I_p: the lowest floor(p * 2^64) keys.
    const bool everyone = p >= 1.0;
    const auto threshold =
        everyone ? std::numeric_limits<std::uint64_t>::max()
                 : static_cast<std::uint64_t>(std::ldexp(static_cast<long double>(std::max(p, 0.0)), 64));
    for (NodeId v = 0; v < g.node_count(); ++v) {
      key_[v] = node_rng(seed, v, "greedy_key", 0);
      participant_[v] = everyone || key_[v] < threshold;
    }
  }

  int subrounds() const override { return 2; }
  std::optional<Round> horizon() const override { return greedy_rounds_ + 1; }
  bool terminated(NodeId v) const override { return done_[v]; }

  bool wakes(NodeId v, Round r) override {
    if (r == greedy_rounds_) return true;  // the global removal round
    return participant_[v] && status_[v] == MisStatus::undecided;
  }

  void send(NodeId v, Round r, int subround, Outbox& out) override {
    if (r == greedy_rounds_) {
      if (subround == 1 && status_[v] == MisStatus::in_set) out.broadcast(kInSet, 3);
      if (subround == 2 && status_[v] == MisStatus::undecided) out.broadcast(kAlive, 3);
      return;
    }
    if (subround == 1) {
      out.broadcast(key_[v], 64);
    } else if (candidate_[v]) {
      out.broadcast(kJoin, 1);
    }
  }

  void receive(NodeId v, Round r, int subround, std::span<const Envelope> inbox) override {
    if (r == greedy_rounds_) {
      if (subround == 1) {
        if (status_[v] == MisStatus::undecided && !inbox.empty()) {
          status_[v] = MisStatus::out_set;
          done_[v] = true;
        }
      } else {
        residual_degree_[v] = inbox.size();
        if (status_[v] == MisStatus::in_set) done_[v] = true;
      }
      return;
    }
    if (subround == 1) {
      bool wins = true;
      for (const Envelope& e : inbox) {
        if (!beats(key_[v], v, e.payload, e.sender)) {
          wins = false;
          break;
        }
      }
      candidate_[v] = wins;
      return;
    }
    if (candidate_[v]) {
      status_[v] = MisStatus::in_set;  // sleeps until the global round
      candidate_[v] = false;
    } else if (!inbox.empty()) {
      status_[v] = MisStatus::out_set;
      done_[v] = true;
    }
  }

  const std::vector<MisStatus>& status() const { return status_; }
  const std::vector<bool>& participants() const { return participant_; }

 private:
  Round greedy_rounds_;
  std::vector<std::uint64_t> key_;
  std::vector<bool> participant_;
  std::vector<MisStatus> status_;
  std::vector<bool> done_;
  std::vector<bool> candidate_;
  std::vector<std::size_t> residual_degree_;
};

// ---- Part II ------------------------------------------------------------------

class MarkingProtocol final : public Protocol {
 public:
  MarkingProtocol(const Graph& g, std::uint64_t seed, const ResolvedMisParams& params)
      : seed_(seed),
        degree_bound_(params.degree_bound),
        iterations_(params.iterations),
        status_(g.node_count(), MisStatus::undecided),
        done_(g.node_count(), false),
        first_mark_(g.node_count(), 0),
        isolated_(g.node_count(), false) {
    for (NodeId v = 0; v < g.node_count(); ++v) isolated_[v] = g.degree(v) == 0;
    const auto lengths = part2_phase_lengths(params.degree_bound, params.phase_constant);
    for (std::size_t i = 0; i < lengths.size(); ++i) {
      const double prob = std::ldexp(1.0, static_cast<int>(i + 1)) / static_cast<double>(degree_bound_);
      // Capped at 1/2: at probability 1 two neighbours always collide.
      for (Round t = 0; t < lengths[i]; ++t) mark_probability_.push_back(std::min(0.5, prob));
    }
    iteration_length_ = static_cast<Round>(mark_probability_.size()) + 1;
  }

  int subrounds() const override { return 2; }
  std::optional<Round> horizon() const override { return iteration_length_ * iterations_; }
  bool terminated(NodeId v) const override { return done_[v]; }

  Round iteration_length() const { return iteration_length_; }

  bool wakes(NodeId v, Round r) override {
    const Round t = r % iteration_length_;
    if (t == 0) first_mark_[v] = first_marked_round(v, r / iteration_length_);
    if (t == iteration_length_ - 1) return true;
    return t >= first_mark_[v];
  }

  void send(NodeId v, Round r, int subround, Outbox& out) override {
    const Round t = r % iteration_length_;
    if (subround == 1) {
      if (status_[v] == MisStatus::in_set) out.broadcast(kInSet, 3);
      return;
    }
    if (status_[v] != MisStatus::undecided) return;
    if (t == iteration_length_ - 1) {
      out.broadcast(kAlive, 3);
    } else if (marked(v, r)) {
      out.broadcast(kMarked, 3);
    }
  }

  void receive(NodeId v, Round r, int subround, std::span<const Envelope> inbox) override {
    const Round t = r % iteration_length_;
    const bool cleanup = t == iteration_length_ - 1;
    if (subround == 1) {
      if (status_[v] == MisStatus::undecided && !inbox.empty()) {
        status_[v] = MisStatus::out_set;
        done_[v] = true;
      }
      return;
    }
    if (status_[v] == MisStatus::undecided) {
      if (cleanup) {
        if (inbox.empty()) status_[v] = MisStatus::in_set;  // isolated
      } else if (marked(v, r) && inbox.empty()) {
        status_[v] = MisStatus::in_set;
      }
    }
    if (cleanup && status_[v] == MisStatus::in_set) done_[v] = true;
  }

  const std::vector<MisStatus>& status() const { return status_; }

 private:
  // Isolated nodes skip marking and join in the cleanup round.
  bool marked(NodeId v, Round r) const {
    if (isolated_[v]) return false;
    const Round t = r % iteration_length_;
    return bernoulli(node_rng(seed_, v, "part2_mark", static_cast<std::uint64_t>(r)),
                     mark_probability_[static_cast<std::size_t>(t)]);
  }

  // First marked round (iteration-relative) of iteration k; the cleanup round
  // index if the node is never marked.
  Round first_marked_round(NodeId v, Round k) const {
    for (Round t = 0; t + 1 < iteration_length_; ++t)
      if (marked(v, k * iteration_length_ + t)) return t;
    return iteration_length_ - 1;
  }

  std::uint64_t seed_;
  std::size_t degree_bound_;
  unsigned iterations_;
  std::vector<double> mark_probability_;
  Round iteration_length_ = 1;
  std::vector<MisStatus> status_;
  std::vector<bool> done_;
  std::vector<Round> first_mark_;
  std::vector<bool> isolated_;
};

std::vector<bool> undecided_mask(const std::vector<MisStatus>& status) {
  std::vector<bool> m(status.size());
  for (std::size_t v = 0; v < status.size(); ++v) m[v] = status[v] == MisStatus::undecided;
  return m;
}

Round default_greedy_rounds(std::size_t n, double factor) {
  return static_cast<Round>(std::ceil(factor * std::max(1.0, log2_of(n))));
}

}  // namespace

// ---- parameters -----------------------------------------------------------------

ResolvedMisParams resolve_mis_params(const MisParams& params, std::size_t n, std::size_t max_degree,
                                     std::size_t residual_max_degree) {
  ResolvedMisParams r;
  const double log_n = log2_of(n);
  const double ceil_log_n = std::ceil(log_n);
  r.part1_fraction = params.part1_fraction.value_or(ceil_log_n <= 1.0 ? 1.0 : 1.0 / ceil_log_n);
  if (!(r.part1_fraction > 0.0 && r.part1_fraction <= 1.0))
    throw std::invalid_argument("part1_fraction must lie in (0, 1]");
  r.part1_rounds = default_greedy_rounds(n, params.part1_round_factor);
  if (params.part2_phase_constant < 1) throw std::invalid_argument("part2_phase_constant must be >= 1");
  r.phase_constant = params.part2_phase_constant;

  if (params.part2_degree_bound) {
    r.degree_bound = std::max<std::size_t>(2, *params.part2_degree_bound);
  } else {
    const auto analytic = static_cast<std::size_t>(std::ceil(log_n * log_n));
    r.degree_bound = std::max<std::size_t>(2, std::min(analytic, max_degree));
  }
  if (residual_max_degree > r.degree_bound) {
    r.degree_bound = residual_max_degree;
    r.degree_bound_raised = true;
  }

  if (params.part2_iterations) {
    r.iterations = std::max(1u, *params.part2_iterations);
  } else {
    const double loglog = log_n > 1.0 ? std::ceil(std::log2(log_n)) : 0.0;
    r.iterations = std::max(1u, static_cast<unsigned>(2.0 * loglog));
  }
  r.luby_round_cap = params.luby_round_cap;
  return r;
}

std::vector<Round> part2_phase_lengths(std::size_t degree_bound, unsigned phase_constant) {
  const unsigned phases = std::max(1u, ceil_log2(std::max<std::size_t>(degree_bound, 2)));
  std::vector<Round> lengths;
  for (unsigned i = 1; i <= phases; ++i) {
    const Round gap = static_cast<Round>(phases - i);
    lengths.push_back(std::max<Round>(1, static_cast<Round>(phase_constant) * gap * gap));
  }
  return lengths;
}

Round part2_iteration_length(std::size_t degree_bound, unsigned phase_constant) {
  Round total = 1;
  for (Round len : part2_phase_lengths(degree_bound, phase_constant)) total += len;
  return total;
}

// ---- public entry points ----------------------------------------------------------

MisResult luby_mis(const Graph& g, std::uint64_t seed, Round round_cap, std::string_view part_label) {
  LubyProtocol protocol(g, seed);
  RunOptions options;
  options.round_cap = round_cap;
  options.part = std::string(part_label);
  RunResult rr = run(g, protocol, options);
  MisResult out;
  out.set = collect(protocol.status(), MisStatus::in_set);
  out.ledger = std::move(rr.ledger);
  out.metrics = summarize(out.ledger);
  out.metrics.valid = verify_mis(g, out.set);
  out.metrics.solution_size = out.set.size();
  return out;
}

PartialMisResult greedy_partial_mis(const Graph& g, std::uint64_t seed, double p, Round greedy_rounds,
                                    bool record_trace) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("greedy_partial_mis: p must lie in (0, 1]");
  GreedyPartialProtocol protocol(g, seed, p, greedy_rounds);
  RunOptions options;
  options.part = "part1";
  options.record_trace = record_trace;
  RunResult rr = run(g, protocol, options);

  PartialMisResult out;
  const auto& status = protocol.status();
  out.in_set = collect(status, MisStatus::in_set);
  out.removed = collect(status, MisStatus::out_set);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (protocol.participants()[v]) {
      ++out.participants;
      if (status[v] == MisStatus::undecided) ++out.unfinished_participants;
    }
  }
  out.residual = g.induced(undecided_mask(status), &out.residual_to_parent);
  out.residual_max_degree = out.residual.max_degree();
  out.ledger = std::move(rr.ledger);
  out.trace = std::move(rr.trace);
  return out;
}

PartialMisResult greedy_partial_mis(const Graph& g, std::uint64_t seed, double p) {
  return greedy_partial_mis(g, seed, p, default_greedy_rounds(g.node_count(), MisParams{}.part1_round_factor));
}

Part2Result part2_reduce(const Graph& g, std::uint64_t seed, const ResolvedMisParams& params, bool record_trace) {
  if (g.max_degree() > params.degree_bound)
    throw std::invalid_argument("part2_reduce: residual max degree exceeds the degree bound");
  MarkingProtocol protocol(g, seed, params);
  RunOptions options;
  options.part = "part2";
  options.record_trace = record_trace;
  RunResult rr = run(g, protocol, options);

  Part2Result out;
  const auto& status = protocol.status();
  out.added = collect(status, MisStatus::in_set);
  out.removed = collect(status, MisStatus::out_set);
  out.residual = g.induced(undecided_mask(status), &out.residual_to_parent);
  out.rounds = rr.rounds;
  out.ledger = std::move(rr.ledger);
  out.trace = std::move(rr.trace);
  return out;
}

MisResult awake_mis(const Graph& g, std::uint64_t seed, const MisParams& params) {
  const std::size_t n = g.node_count();
  const std::uint64_t seed1 = node_rng(seed, 0, "awake_mis/part1", 0);
  const std::uint64_t seed2 = node_rng(seed, 0, "awake_mis/part2", 0);
  const std::uint64_t seed3 = node_rng(seed, 0, "awake_mis/part3", 0);

  ResolvedMisParams resolved = resolve_mis_params(params, n, g.max_degree(), 0);
  PartialMisResult p1 = greedy_partial_mis(g, seed1, resolved.part1_fraction, resolved.part1_rounds,
                                           params.record_trace);
  resolved = resolve_mis_params(params, n, g.max_degree(), p1.residual_max_degree);

  Part2Result p2 = part2_reduce(p1.residual, seed2, resolved, params.record_trace);
  MisResult p3 = luby_mis(p2.residual, seed3, resolved.luby_round_cap, "part3");

  std::vector<bool> in(n, false);
  for (NodeId v : p1.in_set.members()) in[v] = true;
  for (NodeId v : p2.added.members()) in[p1.residual_to_parent[v]] = true;
  for (NodeId v : p3.set.members()) in[p1.residual_to_parent[p2.residual_to_parent[v]]] = true;

  MisResult out;
  out.set = VertexSet::from_mask(in);
  out.ledger = std::move(p1.ledger);
  out.ledger.append_mapped(p2.ledger, p1.residual_to_parent);
  std::vector<NodeId> p3_to_root(p2.residual_to_parent.size());
  for (std::size_t v = 0; v < p3_to_root.size(); ++v) p3_to_root[v] = p1.residual_to_parent[p2.residual_to_parent[v]];
  out.ledger.append_mapped(p3.ledger, p3_to_root);

  if (params.record_trace) {
    // Shift the later parts' rounds by the rounds that came before them.
    out.trace = std::move(p1.trace);
    const Round offset2 = out.ledger.total_rounds() - p2.ledger.total_rounds() - p3.ledger.total_rounds();
    for (std::size_t v = 0; v < p2.trace.size(); ++v)
      for (Round r : p2.trace[v]) out.trace[p1.residual_to_parent[v]].push_back(offset2 + r);
  }

  out.metrics = summarize(out.ledger);
  out.metrics.valid = verify_mis(g, out.set);
  out.metrics.solution_size = out.set.size();
  out.metrics.counters["part1_participants"] = static_cast<std::int64_t>(p1.participants);
  out.metrics.counters["part1_unfinished"] = static_cast<std::int64_t>(p1.unfinished_participants);
  out.metrics.counters["part1_residual_nodes"] = static_cast<std::int64_t>(p1.residual.node_count());
  out.metrics.counters["part1_residual_max_degree"] = static_cast<std::int64_t>(p1.residual_max_degree);
  out.metrics.counters["part2_degree_bound"] = static_cast<std::int64_t>(resolved.degree_bound);
  out.metrics.counters["part2_degree_bound_raised"] = resolved.degree_bound_raised ? 1 : 0;
  out.metrics.counters["part2_iterations"] = resolved.iterations;
  out.metrics.counters["part2_rounds"] = p2.rounds;
  out.metrics.counters["part2_residual_nodes"] = static_cast<std::int64_t>(p2.residual.node_count());
  out.metrics.counters["part3_rounds"] = p3.ledger.total_rounds();
  return out;
}

}  // namespace awake

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "awake/errors.hpp"
#include "awake/graph.hpp"

namespace awake {

using Round = std::int64_t;

/// Per-node awake-round counts A_v plus the total round count R, with a
/// breakdown by algorithm part ("part1", "luby", ...).
class AwakeLedger {
 public:
  AwakeLedger() = default;
  explicit AwakeLedger(std::size_t node_count) : awake_(node_count, 0) {}

  std::size_t node_count() const { return awake_.size(); }
  Round total_rounds() const { return rounds_; }
  void add_rounds(Round r) { rounds_ += r; }

  void charge(NodeId v, std::string_view part, std::uint64_t count = 1);

  std::uint64_t awake(NodeId v) const { return awake_[v]; }
  std::span<const std::uint64_t> awake_rounds() const { return awake_; }
  const std::map<std::string, std::vector<std::uint64_t>, std::less<>>& parts() const { return parts_; }
  /// Sum over nodes for one part (0 if the part never ran).
  std::uint64_t part_total(std::string_view part) const;

  std::uint64_t total_awake() const;
  std::uint64_t max_awake() const;
  /// (1/n) * sum_v A_v; 0 for the empty graph.
  double average_awake() const;

  /// Appends a later stage run on the same node set.
  void append(const AwakeLedger& later);
  /// Appends a stage that ran on a subgraph; to_parent maps its ids to ours.
  void append_mapped(const AwakeLedger& later, std::span<const NodeId> to_parent);

  /// A_v <= R for every v and the per-part counts sum to A_v.
  bool consistent() const;

  friend bool operator==(const AwakeLedger&, const AwakeLedger&) = default;

 private:
  std::vector<std::uint64_t> awake_;
  std::map<std::string, std::vector<std::uint64_t>, std::less<>> parts_;
  Round rounds_ = 0;
};

/// A message. Protocols encode their content into one machine word and
/// declare how many bits of it are meaningful.
struct Envelope {
  NodeId sender = 0;
  NodeId receiver = 0;
  std::uint8_t subround = 1;
  std::uint8_t bits = 0;
  std::uint64_t payload = 0;

  friend bool operator==(const Envelope&, const Envelope&) = default;
};

class Outbox;

/// Per-node behaviour run by the engine. Implementations hold all node state;
/// each callback may only touch the state of the node it is called for.
class Protocol {
 public:
  virtual ~Protocol() = default;

  /// 1 or 2 subrounds per round. Both count as a single round.
  virtual int subrounds() const { return 1; }
  /// Fixed schedule length; the run stops there even if nodes remain.
  virtual std::optional<Round> horizon() const { return std::nullopt; }

  virtual bool terminated(NodeId v) const = 0;
  /// Wake decision for round r from v's local state and coins.
  virtual bool wakes(NodeId v, Round r) = 0;
  virtual void send(NodeId v, Round r, int subround, Outbox& out) = 0;
  /// Called for every awake, non-terminated node, even with an empty inbox.
  virtual void receive(NodeId v, Round r, int subround, std::span<const Envelope> inbox) = 0;
};

/// Send side handed to Protocol::send for one node.
class Outbox {
 public:
  Outbox(const Graph& g, std::vector<Envelope>& sink, std::uint8_t payload_bit_limit)
      : graph_(g), sink_(sink), limit_(payload_bit_limit) {}

  void bind(NodeId sender, std::uint8_t subround) {
    sender_ = sender;
    subround_ = subround;
  }

  /// To one neighbour; throws std::logic_error for a non-neighbour or an
  /// oversized payload.
  void send(NodeId to, std::uint64_t payload, unsigned bits);
  /// To every neighbour. Sleeping receivers drop it.
  void broadcast(std::uint64_t payload, unsigned bits);

 private:
  void check_bits(unsigned bits) const;

  const Graph& graph_;
  std::vector<Envelope>& sink_;
  std::uint8_t limit_;
  NodeId sender_ = 0;
  std::uint8_t subround_ = 1;
};

struct RunOptions {
  Round round_cap = 1'000'000;
  /// Part label charged in the ledger.
  std::string part = "main";
  /// Payload limit is max(64, congest_factor * ceil(log2 n)) bits.
  unsigned congest_factor = 10;
  /// Record, per node, the list of rounds it was awake.
  bool record_trace = false;
};

struct RunResult {
  AwakeLedger ledger;
  Round rounds = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
  std::vector<std::vector<Round>> trace;
};

/// Thrown when the round cap is hit; carries the partial ledger.
class RoundCapExceeded : public Error {
 public:
  RoundCapExceeded(const std::string& what, AwakeLedger partial) : Error(what), partial_(std::move(partial)) {}
  const AwakeLedger& partial_ledger() const { return partial_; }

 private:
  AwakeLedger partial_;
};

/// Runs the protocol in synchronous rounds under sleeping semantics.
///
/// Per round: collect the wake set, then for each subround let awake nodes
/// send, drop envelopes addressed to sleeping or terminated nodes, and
/// deliver the rest. Each awake node is charged one round, including the
/// round in which it terminates. The run ends when every node has
/// terminated or the protocol's horizon is reached.
RunResult run(const Graph& g, Protocol& protocol, const RunOptions& options = {});

std::uint8_t payload_bit_limit(std::size_t node_count, unsigned congest_factor);

/// Heavy/light accounting for the fractional matching runs.
struct Diagnostics {
  std::uint64_t heavy_events = 0;
  std::uint64_t light_events = 0;
  double spoiled_value = 0.0;

  friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
};

/// Summary of one run; consistent with the ledger it is built from.
struct RunMetrics {
  Round rounds = 0;
  std::uint64_t total_awake = 0;
  double avg_awake = 0.0;
  std::uint64_t max_awake = 0;
  std::map<std::string, std::uint64_t, std::less<>> part_awake;
  bool valid = false;
  std::size_t solution_size = 0;
  Diagnostics diagnostics;
  /// Algorithm-specific counts (residual sizes, raised bounds, ...).
  std::map<std::string, std::int64_t, std::less<>> counters;

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

RunMetrics summarize(const AwakeLedger& ledger);

}  // namespace awake

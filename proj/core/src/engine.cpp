#include "awake/engine.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace awake {

// ---- AwakeLedger ------------------------------------------------------------

void AwakeLedger::charge(NodeId v, std::string_view part, std::uint64_t count) {
  awake_[v] += count;
  auto it = parts_.find(part);
  if (it == parts_.end()) it = parts_.emplace(std::string(part), std::vector<std::uint64_t>(awake_.size(), 0)).first;
  it->second[v] += count;
}

std::uint64_t AwakeLedger::part_total(std::string_view part) const {
  auto it = parts_.find(part);
  if (it == parts_.end()) return 0;
  std::uint64_t s = 0;
  for (auto c : it->second) s += c;
  return s;
}

std::uint64_t AwakeLedger::total_awake() const {
  std::uint64_t s = 0;
  for (auto c : awake_) s += c;
  return s;
}

std::uint64_t AwakeLedger::max_awake() const {
  return awake_.empty() ? 0 : *std::max_element(awake_.begin(), awake_.end());
}

double AwakeLedger::average_awake() const {
  if (awake_.empty()) return 0.0;
  return static_cast<double>(total_awake()) / static_cast<double>(awake_.size());
}

void AwakeLedger::append(const AwakeLedger& later) {
  if (later.node_count() != node_count()) throw std::invalid_argument("AwakeLedger::append: node count mismatch");
  for (std::size_t v = 0; v < awake_.size(); ++v) awake_[v] += later.awake_[v];
  for (const auto& [part, counts] : later.parts_) {
    auto& mine = parts_.try_emplace(part, std::vector<std::uint64_t>(awake_.size(), 0)).first->second;
    for (std::size_t v = 0; v < counts.size(); ++v) mine[v] += counts[v];
  }
  rounds_ += later.rounds_;
}

void AwakeLedger::append_mapped(const AwakeLedger& later, std::span<const NodeId> to_parent) {
  if (later.node_count() != to_parent.size())
    throw std::invalid_argument("AwakeLedger::append_mapped: mapping size mismatch");
  for (std::size_t v = 0; v < to_parent.size(); ++v) awake_[to_parent[v]] += later.awake_[v];
  for (const auto& [part, counts] : later.parts_) {
    auto& mine = parts_.try_emplace(part, std::vector<std::uint64_t>(awake_.size(), 0)).first->second;
    for (std::size_t v = 0; v < counts.size(); ++v) mine[to_parent[v]] += counts[v];
  }
  rounds_ += later.rounds_;
}

bool AwakeLedger::consistent() const {
  for (std::size_t v = 0; v < awake_.size(); ++v) {
    if (static_cast<Round>(awake_[v]) > rounds_) return false;
    std::uint64_t s = 0;
    for (const auto& [part, counts] : parts_) s += counts[v];
    if (s != awake_[v]) return false;
  }
  return true;
}

RunMetrics summarize(const AwakeLedger& ledger) {
  RunMetrics m;
  m.rounds = ledger.total_rounds();
  m.total_awake = ledger.total_awake();
  m.avg_awake = ledger.average_awake();
  m.max_awake = ledger.max_awake();
  for (const auto& [part, counts] : ledger.parts()) {
    std::uint64_t s = 0;
    for (auto c : counts) s += c;
    m.part_awake[part] = s;
  }
  return m;
}

// ---- Outbox -----------------------------------------------------------------

std::uint8_t payload_bit_limit(std::size_t node_count, unsigned congest_factor) {
  const unsigned log_n = node_count <= 2 ? 1u : static_cast<unsigned>(std::bit_width(node_count - 1));
  return static_cast<std::uint8_t>(std::clamp<unsigned>(congest_factor * log_n, 64, 255));
}

void Outbox::check_bits(unsigned bits) const {
  if (bits > limit_ || bits > 64) throw std::logic_error("payload exceeds CONGEST bound");
}

void Outbox::send(NodeId to, std::uint64_t payload, unsigned bits) {
  check_bits(bits);
  if (!graph_.has_edge(sender_, to)) throw std::logic_error("message to a non-neighbour");
  sink_.push_back(Envelope{sender_, to, subround_, static_cast<std::uint8_t>(bits), payload});
}

void Outbox::broadcast(std::uint64_t payload, unsigned bits) {
  check_bits(bits);
  for (NodeId to : graph_.neighbors(sender_))
    sink_.push_back(Envelope{sender_, to, subround_, static_cast<std::uint8_t>(bits), payload});
}

// ---- run --------------------------------------------------------------------

RunResult run(const Graph& g, Protocol& protocol, const RunOptions& options) {
  if (options.round_cap <= 0) throw std::invalid_argument("run: round_cap must be positive");
  const std::size_t n = g.node_count();
  const int subrounds = protocol.subrounds();
  if (subrounds < 1 || subrounds > 2) throw std::invalid_argument("run: protocols use 1 or 2 subrounds");
  const auto horizon = protocol.horizon();

  RunResult result;
  result.ledger = AwakeLedger(n);
  if (options.record_trace) result.trace.assign(n, {});

  std::vector<Envelope> outgoing;
  std::vector<Envelope> inbox;
  std::vector<std::size_t> offset(n + 1, 0);
  std::vector<bool> is_awake(n, false);
  std::vector<NodeId> awake;
  Outbox outbox(g, outgoing, payload_bit_limit(n, options.congest_factor));

  Round r = 0;
  for (;; ++r) {
    bool any_alive = false;
    for (NodeId v = 0; v < n && !any_alive; ++v) any_alive = !protocol.terminated(v);
    if (!any_alive) break;
    if (horizon && r >= *horizon) break;
    if (r >= options.round_cap) {
      result.ledger.add_rounds(r);
      throw RoundCapExceeded("round cap " + std::to_string(options.round_cap) + " exceeded", result.ledger);
    }

    awake.clear();
    for (NodeId v = 0; v < n; ++v) {
      if (!protocol.terminated(v) && protocol.wakes(v, r)) {
        awake.push_back(v);
        is_awake[v] = true;
      }
    }

    for (int s = 1; s <= subrounds; ++s) {
      outgoing.clear();
      for (NodeId v : awake) {
        if (protocol.terminated(v)) continue;
        outbox.bind(v, static_cast<std::uint8_t>(s));
        protocol.send(v, r, s, outbox);
      }
      // Bucket by receiver; senders were visited in id order so each inbox
      // is sorted by sender.
      std::fill(offset.begin(), offset.end(), 0);
      for (const Envelope& e : outgoing) {
        assert(is_awake[e.sender]);
        if (is_awake[e.receiver] && !protocol.terminated(e.receiver)) {
          ++offset[e.receiver + 1];
        } else {
          ++result.dropped;
        }
      }
      for (std::size_t v = 0; v < n; ++v) offset[v + 1] += offset[v];
      inbox.resize(offset[n]);
      {
        std::vector<std::size_t> cursor(offset.begin(), offset.end() - 1);
        for (const Envelope& e : outgoing) {
          if (is_awake[e.receiver] && !protocol.terminated(e.receiver)) inbox[cursor[e.receiver]++] = e;
        }
      }
      result.delivered += inbox.size();
      for (NodeId v : awake) {
        if (protocol.terminated(v)) continue;
        protocol.receive(v, r, s, std::span<const Envelope>(inbox.data() + offset[v], offset[v + 1] - offset[v]));
      }
    }

    for (NodeId v : awake) {
      result.ledger.charge(v, options.part);
      if (options.record_trace) result.trace[v].push_back(r);
      is_awake[v] = false;
    }
  }
  result.rounds = r;
  result.ledger.add_rounds(r);
  return result;
}

}  // namespace awake

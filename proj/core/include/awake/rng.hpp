#pragma once

#include <cstdint>
#include <string_view>

namespace awake {

/// 64-bit FNV-1a; used to turn stream labels into integers at compile time.
constexpr std::uint64_t label_hash(std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-mode randomness: a pure function of (seed, node, stream, index).
///
/// Every coin an algorithm flips comes from here, so a node's random choices
/// are fixed up front (as if pre-sampled) and a run is reproducible from its
/// master seed alone.
constexpr std::uint64_t node_rng(std::uint64_t master_seed, std::uint64_t node_id, std::uint64_t stream,
                                 std::uint64_t index) {
  std::uint64_t x = mix64(master_seed ^ 0x6a09e667f3bcc909ULL);
  x = mix64(x ^ node_id);
  x = mix64(x ^ stream);
  return mix64(x ^ index);
}

constexpr std::uint64_t node_rng(std::uint64_t master_seed, std::uint64_t node_id, std::string_view stream,
                                 std::uint64_t index) {
  return node_rng(master_seed, node_id, label_hash(stream), index);
}

/// Uniform double in [0, 1) from the top 53 bits.
constexpr double to_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

/// True with probability p (p <= 0 never, p >= 1 always).
constexpr bool bernoulli(std::uint64_t bits, double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return to_unit(bits) < p;
}

/// Seed for trial t of an experiment with the given master seed.
constexpr std::uint64_t trial_seed(std::uint64_t master_seed, std::uint64_t trial) {
  return node_rng(master_seed, 0, label_hash("trial"), trial);
}

/// Small sequential generator built on node_rng, for code that just needs a
/// stream of values (graph generators, shuffles).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next() { return node_rng(seed_, 0, stream_, counter_++); }
  double unit() { return to_unit(next()); }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace awake

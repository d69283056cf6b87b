#include "awake/rng.hpp"

namespace awake {

namespace {
__extension__ typedef unsigned __int128 u128;
}

std::uint64_t CounterRng::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  // Lemire-style rejection on the 128-bit product.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const u128 m = static_cast<u128>(next()) * bound;
    if (static_cast<std::uint64_t>(m) >= threshold) return static_cast<std::uint64_t>(m >> 64);
  }
}

}  // namespace awake

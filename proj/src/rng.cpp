#include "netpolicy/rng.hpp"

#include <cmath>
#include <limits>

namespace netpolicy {

std::uint64_t derive_seed(std::uint64_t parent,
                          std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(parent ^ 0x6a09e667f3bcc909ULL);
  for (std::uint64_t step : path) h = mix64(h ^ mix64(step + 0x3c6ef372fe94f82bULL));
  return h;
}

std::size_t uniform_index(Rng& rng, std::size_t bound) {
  // Rejection sampling removes modulo bias.
  const std::uint64_t b = bound;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % b;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return static_cast<std::size_t>(x % b);
}

double exponential(Rng& rng, double rate) {
  return -std::log1p(-uniform01(rng)) / rate;
}

}  // namespace netpolicy

#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace netpolicy {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Child seed for the stream addressed by `path` under `parent`. Streams with
/// distinct paths are statistically independent.
std::uint64_t derive_seed(std::uint64_t parent,
                          std::initializer_list<std::uint64_t> path);

inline Rng make_rng(std::uint64_t seed) { return Rng(mix64(seed)); }

// The helpers below avoid std:: distributions so that streams are identical
// across standard library implementations.

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer on [0, bound), bound > 0.
std::size_t uniform_index(Rng& rng, std::size_t bound);

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

/// Exponential with the given rate (> 0).
double exponential(Rng& rng, double rate);

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = uniform_index(rng, i);
    std::swap(items[i - 1], items[j]);
  }
}

/// Calls `visit(k)` for every k in [0, count) independently with probability
/// p, skipping ahead geometrically so sparse draws cost O(hits).
template <typename Visit>
void for_each_bernoulli(std::uint64_t count, double p, Rng& rng, Visit&& visit);

}  // namespace netpolicy

#include <cmath>

namespace netpolicy {

template <typename Visit>
void for_each_bernoulli(std::uint64_t count, double p, Rng& rng, Visit&& visit) {
  if (p <= 0.0 || count == 0) return;
  if (p >= 1.0) {
    for (std::uint64_t k = 0; k < count; ++k) visit(k);
    return;
  }
  const double log_q = std::log1p(-p);
  std::uint64_t k = 0;
  while (true) {
    // Number of failures before the next success.
    double u = uniform01(rng);
    double skip = std::floor(std::log1p(-u) / log_q);
    if (skip >= static_cast<double>(count - k)) return;
    k += static_cast<std::uint64_t>(skip);
    visit(k);
    ++k;
    if (k >= count) return;
  }
}

}  // namespace netpolicy

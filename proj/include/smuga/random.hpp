#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace smuga {

using Rng = std::mt19937_64;

// The helpers below avoid the standard distributions so that a seed yields the
// same trajectory on every standard library.

/// Uniform integer in [0, n). n must be positive.
inline std::size_t uniformIndex(Rng& rng, std::size_t n) {
  // Lemire's nearly-divisionless bounded draw.
  const std::uint64_t range = n;
  __uint128_t m = static_cast<__uint128_t>(rng()) * range;
  auto low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      m = static_cast<__uint128_t>(rng()) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::size_t>(m >> 64);
}

/// Uniform real in [0, 1).
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniformIndex(rng, i)]);
  }
}

std::uint64_t splitmix64(std::uint64_t x);

/// Stream seeded from a root seed and a stream name.
Rng substream(std::uint64_t rootSeed, std::string_view name);

/// Independent random streams used by one optimisation run.
struct RandomStreams {
  Rng hostInit;
  Rng parasiteInit;
  Rng selection;
  Rng crossover;
  Rng mutation;
  Rng replacement;
  Rng infection;
  Rng parasiteEvolution;

  static RandomStreams fromSeed(std::uint64_t seed);
};

}  // namespace smuga

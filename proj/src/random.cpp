#include "smuga/random.hpp"

namespace smuga {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng substream(std::uint64_t rootSeed, std::string_view name) {
  // FNV-1a over the name, folded into the root seed.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  const std::uint64_t s = splitmix64(rootSeed ^ splitmix64(h));
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  return Rng(seq);
}

RandomStreams RandomStreams::fromSeed(std::uint64_t seed) {
  return RandomStreams{
      .hostInit = substream(seed, "host-init"),
      .parasiteInit = substream(seed, "parasite-init"),
      .selection = substream(seed, "selection"),
      .crossover = substream(seed, "crossover"),
      .mutation = substream(seed, "mutation"),
      .replacement = substream(seed, "replacement"),
      .infection = substream(seed, "infection"),
      .parasiteEvolution = substream(seed, "parasite-evolution"),
  };
}

}  // namespace smuga

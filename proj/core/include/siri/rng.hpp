#pragma once

#include <cstdint>
#include <random>

namespace siri {

// All stochastic components draw from std::mt19937_64. Independent streams
// (replications, folds) are seeded with derive_seed(master, stream), a
// SplitMix64 finalizer over the pair, so a stream's numbers depend only on
// (master, stream) and never on evaluation order.
using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ (stream * 0xd1b54a32d192ed03ULL));
}

}  // namespace siri

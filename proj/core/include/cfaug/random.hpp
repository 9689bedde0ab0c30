#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cfaug {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seed for an independent RNG stream, keyed by a coordinate string such as
/// "cell|ds=pima|m=smote|c=knn|fold=2". Key-based derivation keeps every
/// stream stable when unrelated parts of a run configuration change.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view coordinates) {
  return splitmix64(base ^ fnv1a64(coordinates));
}

}  // namespace cfaug

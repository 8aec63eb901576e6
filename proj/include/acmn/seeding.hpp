#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace acmn {

using RandomEngine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stable child seed for a work item addressed by a list of indices.
/// Independent of evaluation order and thread count.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = splitmix64(master);
  for (std::uint64_t idx : path) {
    h = splitmix64(h ^ splitmix64(idx + 0x632be59bd9b4e019ULL));
  }
  return h;
}

inline RandomEngine make_engine(std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  return RandomEngine(seq);
}

}  // namespace acmn

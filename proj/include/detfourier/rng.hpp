#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace detfourier {

using Rng = std::mt19937_64;

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for an independent substream keyed by (master, key...). Changing one
/// key never perturbs streams with other keys.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = mix64(master);
  for (auto k : keys) h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
  return h;
}

inline Rng make_rng(std::uint64_t master, std::initializer_list<std::uint64_t> keys) {
  return Rng(derive_seed(master, keys));
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace detfourier

#include <cstddef>
#include <unordered_map>
#include <vector>

namespace detfourier {

/// First `count` draws of a Fisher-Yates shuffle of 0..population-1: a
/// uniform size-`count` subset, in draw order. Swaps are kept in a map, so
/// the cost is O(count).
inline std::vector<std::size_t> sample_without_replacement(std::size_t population,
                                                           std::size_t count, Rng& rng) {
  std::vector<std::size_t> out;
  out.reserve(count);
  std::unordered_map<std::size_t, std::size_t> swapped;
  auto value_at = [&](std::size_t i) {
    auto it = swapped.find(i);
    return it == swapped.end() ? i : it->second;
  };
  for (std::size_t i = 0; i < count; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, population - 1);
    const std::size_t j = pick(rng);
    const std::size_t vi = value_at(i);
    const std::size_t vj = value_at(j);
    swapped[j] = vi;
    swapped[i] = vj;
    out.push_back(vj);
  }
  return out;
}

}  // namespace detfourier

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace aklt {

using Engine = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

/// Derives an independent stream seed from a master seed and a work-item key.
/// The mapping is fixed so results do not depend on thread scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> key);

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& engine) {
  return static_cast<double>(engine() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n), unbiased (rejection on the top range).
inline std::uint64_t uniform_below(Engine& engine, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r;
  do {
    r = engine();
  } while (r >= limit);
  return r % n;
}

inline bool bernoulli(Engine& engine, double p) { return uniform01(engine) < p; }

}  // namespace aklt

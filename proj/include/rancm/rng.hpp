#pragma once

#include <cstdint>
#include <random>

namespace rancm {

// Hand-rolled uniform draws over mt19937_64 so that streams are bit-identical
// across standard library versions.
template <typename Urbg>
inline double u01(Urbg& g) {
  return static_cast<double>(static_cast<std::uint64_t>(g()) >> 11) * 0x1.0p-53;
}

template <typename Urbg>
inline double uniform_in(Urbg& g, double lo, double hi) {
  return lo + (hi - lo) * u01(g);
}

template <typename Urbg>
inline std::size_t uniform_index(Urbg& g, std::size_t n) {
  return static_cast<std::size_t>(g()) % n;
}

using Rng = std::mt19937_64;

}  // namespace rancm

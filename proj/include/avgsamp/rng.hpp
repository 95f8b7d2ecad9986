#pragma once

#include <cmath>
#include <cstdint>

#include "avgsamp/common.hpp"

namespace avgsamp {

// Counter-based generator: value i of the stream named by `seed` is a pure
// function of (seed, i). Streams can be consumed out of order and from
// concurrent workers without coordination. Mixer is the SplitMix64 finalizer.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform in (0, 1]; never 0, safe under log().
inline double uniform_open(std::uint64_t seed, std::uint64_t counter) {
  return (static_cast<double>(counter_hash(seed, counter) >> 11) + 1.0) *
         0x1p-53;
}

/// Uniform in [0, 1).
inline double uniform_halfopen(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(counter_hash(seed, counter) >> 11) * 0x1p-53;
}

/// Standard circular complex Gaussian: E z = 0, E|z|^2 = 1. Consumes the
/// stream positions 2*index and 2*index + 1.
inline cdouble complex_gaussian(std::uint64_t seed, std::uint64_t index) {
  const double u1 = uniform_open(seed, 2 * index);
  const double u2 = uniform_halfopen(seed, 2 * index + 1);
  const double r = std::sqrt(-std::log(u1));
  const double phi = 2.0 * kPi * u2;
  return {r * std::cos(phi), r * std::sin(phi)};
}

/// Real standard Gaussian; consumes positions 2*index and 2*index + 1.
inline double real_gaussian(std::uint64_t seed, std::uint64_t index) {
  const double u1 = uniform_open(seed, 2 * index);
  const double u2 = uniform_halfopen(seed, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

}  // namespace avgsamp

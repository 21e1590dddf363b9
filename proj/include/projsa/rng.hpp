//
// projsa - Copyright 2026 The projsa Authors
// SPDX-License-Identifier: Apache-2.0
//

#ifndef PROJSA_RNG_HPP
#define PROJSA_RNG_HPP

#include <cmath>
#include <cstdint>
#include <numbers>

namespace projsa {

// Counter-based generator: every draw is a pure hash of
// (seed, stream, step, draw index), so replicas keyed by distinct streams
// are independent and any step can be regenerated without replaying the run.

inline std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  /// Number of draws consumed so far; informational only.
  std::uint64_t draws = 0;

  std::uint64_t bits(std::uint64_t step, std::uint64_t index) const noexcept {
    std::uint64_t h = mix64(seed);
    h = mix64(h ^ stream);
    h = mix64(h ^ step);
    return mix64(h ^ index);
  }

  /// Uniform on the open interval (0, 1).
  double uniform(std::uint64_t step, std::uint64_t index) const noexcept {
    return (static_cast<double>(bits(step, index) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller on draws (2k, 2k+1).
  double normal(std::uint64_t step, std::uint64_t k) const noexcept {
    const double u1 = uniform(step, 2 * k);
    const double u2 = uniform(step, 2 * k + 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }
};

}  // namespace projsa

#endif  // PROJSA_RNG_HPP

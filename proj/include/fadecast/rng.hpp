// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "fadecast/errors.hpp"

namespace fadecast {

// Sub-stream tags. Every consumer of randomness owns a named stream derived
// from one master seed, so e.g. noise can be replayed without disturbing the
// geometry draws.
enum class rng_stream : std::uint64_t {
  positions = 1,
  velocities = 2,
  noise = 3,
  weights = 4,
  shuffle = 5,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Deterministic random stream. mt19937_64 output is pinned by the standard;
// the uniform/normal transforms are spelled out here because the
// std::*_distribution adaptors are implementation-defined and would break
// bit-reproducibility across toolchains.
class rand_stream {
 public:
  rand_stream(std::uint64_t master_seed, rng_stream stream)
      : engine_(splitmix64(master_seed ^ (static_cast<std::uint64_t>(stream) *
                                          0x9e3779b97f4a7c15ull))) {}

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; the spare value is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] so the log stays finite
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // N(mu, sigma2); sigma2 == 0 collapses exactly to mu.
  double normal(double mu, double sigma2) {
    if (sigma2 < 0.0) throw config_error("variance must be non-negative");
    if (sigma2 == 0.0) return mu;
    return mu + std::sqrt(sigma2) * normal();
  }

  // Uniform integer in [0, n) by rejection, bias-free.
  std::uint64_t bounded(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  // Fisher-Yates permutation of 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(bounded(i));
      std::swap(p[i - 1], p[j]);
    }
    return p;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace fadecast

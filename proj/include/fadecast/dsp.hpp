// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace fadecast::dsp {

// Normalized sinc: sin(pi x) / (pi x), sinc(0) = 1.
inline double sinc(double x) {
  if (x == 0.0) return 1.0;
  const double px = std::numbers::pi * x;
  return std::sin(px) / px;
}

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 DIT FFT (unnormalized forward transform).
inline void fft_pow2(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace detail

// Unnormalized forward DFT: X[m] = sum_k x[k] exp(-i 2 pi m k / K).
// Radix-2 FFT for power-of-two sizes, twiddle-table DFT otherwise.
inline std::vector<std::complex<double>> dft(const std::vector<std::complex<double>>& x) {
  const std::size_t n = x.size();
  if (n == 0) return {};
  if (detail::is_power_of_two(n)) {
    auto a = x;
    detail::fft_pow2(a);
    return a;
  }
  std::vector<std::complex<double>> tw(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    tw[k] = {std::cos(ang), std::sin(ang)};
  }
  std::vector<std::complex<double>> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    std::complex<double> acc(0.0, 0.0);
    std::size_t idx = 0;
    for (std::size_t k = 0; k < n; ++k) {
      acc += x[k] * tw[idx];
      idx += m;
      if (idx >= n) idx -= n;
    }
    out[m] = acc;
  }
  return out;
}

inline double energy(const std::vector<std::complex<double>>& x) {
  double e = 0.0;
  for (const auto& v : x) e += std::norm(v);
  return e;
}

}  // namespace fadecast::dsp

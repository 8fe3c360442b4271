// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "fadecast/errors.hpp"
#include "fadecast/simulator.hpp"

namespace fadecast {

enum class covariance_kind { autocov, cross };

struct covariance_profile {
  std::vector<std::int64_t> lags;
  std::vector<double> values;
  covariance_kind kind = covariance_kind::autocov;
};

// Normalized covariance R(tau) for tau = 0..max_lag. Means are removed and
// each lag is scaled by 1/(N - tau), so the auto profile is exactly 1 at lag
// zero. Negative lags are obtained by swapping the arguments.
inline covariance_profile normalized_covariance(const std::vector<double>& x,
                                                const std::vector<double>& y,
                                                std::size_t max_lag) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw data_error("inputs must have equal length >= 2");
  if (max_lag >= n) throw config_error("max_lag must be smaller than the series length");

  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (const double e : v) s += e;
    return s / static_cast<double>(v.size());
  };
  auto variance = [&](const std::vector<double>& v, double m) {
    double s = 0.0;
    for (const double e : v) s += (e - m) * (e - m);
    return s / static_cast<double>(v.size());
  };

  const double mx = mean(x);
  const double my = mean(y);
  const double vx = variance(x, mx);
  const double vy = variance(y, my);
  if (vx == 0.0 || vy == 0.0) throw data_error("degenerate input: zero variance");
  const double denom = std::sqrt(vx * vy);

  covariance_profile profile;
  profile.kind = (&x == &y || x == y) ? covariance_kind::autocov : covariance_kind::cross;
  profile.lags.reserve(max_lag + 1);
  profile.values.reserve(max_lag + 1);
  for (std::size_t tau = 0; tau <= max_lag; ++tau) {
    double acc = 0.0;
    for (std::size_t j = tau; j < n; ++j) acc += (x[j] - mx) * (y[j - tau] - my);
    acc /= static_cast<double>(n - tau);
    profile.lags.push_back(static_cast<std::int64_t>(tau));
    profile.values.push_back(acc / denom);
  }
  return profile;
}

// Per-snapshot in-band power sum |H_j(f)|^2, the scalar trace the covariance
// diagnostics operate on.
inline std::vector<double> band_power_series(const cfr_series& series) {
  if (series.snapshots.empty()) throw data_error("empty series");
  std::vector<double> power(series.length(), 0.0);
  for (std::size_t j = 0; j < series.length(); ++j) {
    double acc = 0.0;
    for (const auto& v : series.snapshots[j].values) acc += std::norm(v);
    power[j] = acc;
  }
  return power;
}

}  // namespace fadecast

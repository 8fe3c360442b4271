// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fadecast/errors.hpp"
#include "fadecast/io.hpp"

namespace fadecast {

using vec2 = std::array<double, 2>;

// Full description of one simulation scenario. Field names double as the
// config-file keys.
struct scenario_config {
  vec2 p_tx{-200.0, 0.0};       // transmitter position (m)
  vec2 p_rx_init{200.0, 0.0};   // receiver starting position (m)
  std::size_t n_r = 256;        // reflection points
  std::size_t n_m = 63;         // mobile reflection points
  double f_c = 900e6;           // carrier frequency (Hz)
  double f_s = 51.2e6;          // sampling frequency (Hz)
  double bandwidth_b = 12.8e6;  // transmitted-signal bandwidth (Hz)
  double window_p = 10e-6;      // sampling window (s)
  double mu_p = 0.0;            // reflection-point coordinate mean (m)
  double sigma2_p = 4900.0;     // reflection-point coordinate variance (m^2)
  double mu_rx = 1.0;           // receiver speed coordinate mean (m/s)
  double sigma2_rx = 4.0;       // receiver speed coordinate variance
  double mu_s = 0.0;            // mobile-point speed coordinate mean (m/s)
  double sigma2_s = 100.0;      // mobile-point speed coordinate variance
  double snr_db = 12.0;         // receiver SNR; non-finite disables noise
  double delta_t = 500e-6;      // time between consecutive snapshots (s)
  std::uint64_t seed = 1;

  // Number of baseband samples per window.
  std::size_t sample_count() const {
    return static_cast<std::size_t>(std::llround(f_s * window_p));
  }

  // Number of retained in-band DFT bins.
  std::size_t bin_count() const {
    const double f = static_cast<double>(sample_count()) * bandwidth_b / f_s;
    return static_cast<std::size_t>(std::llround(f));
  }

  void validate() const {
    if (n_m > n_r) throw config_error("n_m must not exceed n_r");
    if (sigma2_p < 0.0 || sigma2_rx < 0.0 || sigma2_s < 0.0)
      throw config_error("variances must be non-negative");
    if (delta_t <= 0.0) throw config_error("delta_t must be positive");
    if (window_p <= 0.0 || f_s <= 0.0) throw config_error("window_p and f_s must be positive");
    const double k = f_s * window_p;
    if (k < 1.0 || std::fabs(k - std::llround(k)) > 1e-6 * k)
      throw config_error("f_s * window_p must be a positive integer sample count");
    if (bandwidth_b <= 0.0) throw config_error("bandwidth_b must be positive");
  }

  // Retained bins must cover the transmitted band exactly.
  void validate_band() const {
    const double f = static_cast<double>(sample_count()) * bandwidth_b / f_s;
    if (f < 1.0 || std::fabs(f - std::llround(f)) > 1e-6 * f)
      throw config_error("K * B / f_s must be a positive integer bin count");
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["p_tx"] = p_tx;
    j["p_rx_init"] = p_rx_init;
    j["n_r"] = n_r;
    j["n_m"] = n_m;
    j["f_c"] = f_c;
    j["f_s"] = f_s;
    j["bandwidth_b"] = bandwidth_b;
    j["window_p"] = window_p;
    j["mu_p"] = mu_p;
    j["sigma2_p"] = sigma2_p;
    j["mu_rx"] = mu_rx;
    j["sigma2_rx"] = sigma2_rx;
    j["mu_s"] = mu_s;
    j["sigma2_s"] = sigma2_s;
    j["snr_db"] = snr_db;
    j["delta_t"] = delta_t;
    j["seed"] = seed;
    return j;
  }

  static scenario_config from_json(const nlohmann::json& j) {
    scenario_config c;
    for (const auto& [key, value] : j.items()) {
      if (key == "p_tx")
        c.p_tx = value.get<vec2>();
      else if (key == "p_rx_init")
        c.p_rx_init = value.get<vec2>();
      else if (key == "n_r")
        c.n_r = value.get<std::size_t>();
      else if (key == "n_m")
        c.n_m = value.get<std::size_t>();
      else if (key == "f_c")
        c.f_c = value.get<double>();
      else if (key == "f_s")
        c.f_s = value.get<double>();
      else if (key == "bandwidth_b")
        c.bandwidth_b = value.get<double>();
      else if (key == "window_p")
        c.window_p = value.get<double>();
      else if (key == "mu_p")
        c.mu_p = value.get<double>();
      else if (key == "sigma2_p")
        c.sigma2_p = value.get<double>();
      else if (key == "mu_rx")
        c.mu_rx = value.get<double>();
      else if (key == "sigma2_rx")
        c.sigma2_rx = value.get<double>();
      else if (key == "mu_s")
        c.mu_s = value.get<double>();
      else if (key == "sigma2_s")
        c.sigma2_s = value.get<double>();
      else if (key == "snr_db")
        c.snr_db = value.get<double>();
      else if (key == "delta_t")
        c.delta_t = value.get<double>();
      else if (key == "seed")
        c.seed = value.get<std::uint64_t>();
      else
        throw config_error("unknown config key: " + key);
    }
    return c;
  }

  // Hash over the canonical JSON dump; identifies the exact scenario.
  std::uint64_t fingerprint() const { return io::fnv1a64(to_json().dump()); }
};

// Instantaneous state of the moving scene.
struct scene {
  vec2 p_rx{};                     // receiver position
  vec2 s_rx{};                     // receiver velocity
  std::vector<vec2> p_r;           // reflection-point positions
  std::vector<vec2> velocities;    // per-point velocity, zero for static points
  std::vector<bool> mobile;        // which points were selected as mobile
  double t_now = 0.0;

  std::size_t mobile_count() const {
    std::size_t n = 0;
    for (const bool m : mobile) n += m ? 1 : 0;
    return n;
  }
};

// One propagation path: transmitter -> reflection point -> receiver.
struct multipath {
  double length_l = 0.0;   // total path length (m)
  double delay_tau = 0.0;  // delay after shortest-path normalization (s)
  double phase_phi = 0.0;  // carrier phase in [0, 2 pi)
  double amplitude_a = 0.0;  // free-space gain
};

}  // namespace fadecast

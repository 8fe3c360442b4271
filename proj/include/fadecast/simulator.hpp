// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

#include "fadecast/dsp.hpp"
#include "fadecast/errors.hpp"
#include "fadecast/rng.hpp"
#include "fadecast/scenario.hpp"

namespace fadecast {

inline constexpr double kSpeedOfLight = 299792458.0;

// One complex channel frequency response sample.
struct cfr_snapshot {
  std::vector<std::complex<double>> values;  // F in-band bins
  std::int64_t t_index = 0;
  std::pair<double, double> band_hz{0.0, 0.0};
};

struct cfr_series {
  std::vector<cfr_snapshot> snapshots;
  double delta_t = 0.0;
  std::uint64_t scenario_fingerprint = 0;

  std::size_t length() const { return snapshots.size(); }
  std::size_t bins() const { return snapshots.empty() ? 0 : snapshots.front().values.size(); }
};

namespace detail {

inline double norm2(const vec2& a, const vec2& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return std::sqrt(dx * dx + dy * dy);
}

inline bool noise_enabled(double snr_db) { return std::isfinite(snr_db); }

}  // namespace detail

// Draws the initial scene geometry. All coordinates are i.i.d. Gaussians from
// the configured scalar distributions; the mobile subset is the first n_m
// entries of a seeded permutation, assigned velocities in ascending index
// order.
inline scene init_scene(const scenario_config& config) {
  config.validate();
  scene s;
  s.p_rx = config.p_rx_init;
  s.p_r.resize(config.n_r);
  s.velocities.assign(config.n_r, vec2{0.0, 0.0});
  s.mobile.assign(config.n_r, false);

  rand_stream pos(config.seed, rng_stream::positions);
  for (auto& p : s.p_r) {
    p[0] = pos.normal(config.mu_p, config.sigma2_p);
    p[1] = pos.normal(config.mu_p, config.sigma2_p);
  }

  rand_stream vel(config.seed, rng_stream::velocities);
  s.s_rx[0] = vel.normal(config.mu_rx, config.sigma2_rx);
  s.s_rx[1] = vel.normal(config.mu_rx, config.sigma2_rx);

  const auto perm = vel.permutation(config.n_r);
  std::vector<std::size_t> chosen(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(config.n_m));
  std::sort(chosen.begin(), chosen.end());
  for (const std::size_t i : chosen) {
    s.mobile[i] = true;
    s.velocities[i][0] = vel.normal(config.mu_s, config.sigma2_s);
    s.velocities[i][1] = vel.normal(config.mu_s, config.sigma2_s);
  }
  return s;
}

// Path length, delay, phase and free-space gain for every reflection point.
// Delays are shifted so the shortest route arrives at zero.
inline std::vector<multipath> path_geometry(const scene& s, const scenario_config& config) {
  if (s.p_r.empty()) throw data_error("scene has no reflection points");
  std::vector<multipath> paths(s.p_r.size());
  double min_delay = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.p_r.size(); ++i) {
    const double l = detail::norm2(s.p_r[i], s.p_rx) + detail::norm2(s.p_r[i], config.p_tx);
    if (l <= 0.0) throw data_error("degenerate geometry: reflection point coincides with both endpoints");
    auto& m = paths[i];
    m.length_l = l;
    m.delay_tau = l / kSpeedOfLight;
    min_delay = std::min(min_delay, m.delay_tau);
    const double two_pi = 2.0 * std::numbers::pi;
    double phi = std::fmod(-two_pi * config.f_c * l / kSpeedOfLight, two_pi);
    if (phi < 0.0) phi += two_pi;
    m.phase_phi = phi;
    m.amplitude_a = kSpeedOfLight / (4.0 * std::numbers::pi * config.f_c * l);
  }
  for (auto& m : paths) m.delay_tau -= min_delay;
  return paths;
}

// Baseband received window: each path contributes a delayed, phase-rotated
// sinc pulse; noise is calibrated per window against the mean signal power.
// The noise stream must be the scenario's dedicated noise sub-stream so a
// series remains one deterministic draw sequence.
inline std::vector<std::complex<double>> synthesize_received(
    const std::vector<multipath>& paths, const scenario_config& config, rand_stream& noise) {
  if (paths.empty()) throw data_error("no multipath components");
  const std::size_t k_count = config.sample_count();
  std::vector<std::complex<double>> samples(k_count, {0.0, 0.0});
  for (const auto& m : paths) {
    const std::complex<double> gain =
        m.amplitude_a * std::complex<double>(std::cos(m.phase_phi), std::sin(m.phase_phi));
    for (std::size_t k = 0; k < k_count; ++k) {
      const double t = static_cast<double>(k) / config.f_s;
      samples[k] += gain * dsp::sinc(config.bandwidth_b * (t - m.delay_tau));
    }
  }
  if (detail::noise_enabled(config.snr_db)) {
    const double mean_power = dsp::energy(samples) / static_cast<double>(k_count);
    const double noise_var = mean_power / std::pow(10.0, config.snr_db / 10.0);
    const double s = std::sqrt(noise_var / 2.0);
    for (auto& v : samples) {
      const double re = noise.normal() * s;
      const double im = noise.normal() * s;
      v += std::complex<double>(re, im);
    }
  }
  return samples;
}

// Full-window DFT, keeping the F contiguous bins from DC up to the
// transmitted bandwidth.
inline cfr_snapshot compute_cfr(const std::vector<std::complex<double>>& samples,
                                const scenario_config& config, std::int64_t t_index = 0) {
  config.validate_band();
  const std::size_t bins = config.bin_count();
  if (samples.size() != config.sample_count())
    throw data_error("sample count does not match config window");
  const auto spectrum = dsp::dft(samples);
  cfr_snapshot snap;
  snap.values.assign(spectrum.begin(), spectrum.begin() + static_cast<std::ptrdiff_t>(bins));
  snap.t_index = t_index;
  snap.band_hz = {0.0, config.bandwidth_b};
  return snap;
}

// Linear kinematics update; static points stay exactly where they are.
inline scene advance_scene(scene s, double delta_t) {
  if (delta_t <= 0.0) throw config_error("delta_t must be positive");
  s.p_rx[0] += s.s_rx[0] * delta_t;
  s.p_rx[1] += s.s_rx[1] * delta_t;
  for (std::size_t i = 0; i < s.p_r.size(); ++i) {
    s.p_r[i][0] += s.velocities[i][0] * delta_t;
    s.p_r[i][1] += s.velocities[i][1] * delta_t;
  }
  s.t_now += delta_t;
  return s;
}

// Runs the snapshot/advance loop for n_steps steps. Deterministic in
// (config, seed): geometry and noise draws come from fixed sub-streams.
inline cfr_series run_simulation(const scenario_config& config, std::size_t n_steps) {
  if (n_steps < 1) throw config_error("n_steps must be at least 1");
  config.validate();
  config.validate_band();
  cfr_series series;
  series.delta_t = config.delta_t;
  series.scenario_fingerprint = config.fingerprint();
  series.snapshots.reserve(n_steps);

  scene s = init_scene(config);
  rand_stream noise(config.seed, rng_stream::noise);
  for (std::size_t j = 0; j < n_steps; ++j) {
    const auto paths = path_geometry(s, config);
    const auto samples = synthesize_received(paths, config, noise);
    series.snapshots.push_back(compute_cfr(samples, config, static_cast<std::int64_t>(j)));
    if (j + 1 < n_steps) s = advance_scene(std::move(s), config.delta_t);
  }
  return series;
}

}  // namespace fadecast

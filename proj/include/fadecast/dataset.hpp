// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fadecast/errors.hpp"
#include "fadecast/io.hpp"
#include "fadecast/simulator.hpp"
#include "fadecast/tensor.hpp"

namespace fadecast {

// Future CFR grid per example: (example, frequency bin, step ahead).
struct future_cfr {
  std::size_t count = 0;
  std::size_t bins = 0;
  std::size_t span = 0;
  std::vector<std::complex<double>> data;

  std::complex<double>& at(std::size_t e, std::size_t f, std::size_t d) {
    return data[(e * bins + f) * span + d];
  }
  std::complex<double> at(std::size_t e, std::size_t f, std::size_t d) const {
    return data[(e * bins + f) * span + d];
  }
};

struct tensorized {
  tensor4 inputs;   // (examples, F, T, 2) with plane 0 = Re, plane 1 = Im
  future_cfr future;  // the D snapshots after each example's last input
};

// Packs T consecutive snapshots per example into real/imaginary planes and
// collects the D future snapshots used to build labels. Example e covers
// snapshots [e, e+T) with future [e+T, e+T+D).
inline tensorized tensorize(const cfr_series& series, std::size_t t_len, std::size_t span_d) {
  if (t_len < 1 || span_d < 1) throw config_error("t_len and span_d must be at least 1");
  const std::size_t n = series.length();
  if (n < t_len + span_d)
    throw data_error("series too short: need at least " + std::to_string(t_len + span_d) +
                     " snapshots, have " + std::to_string(n));
  const std::size_t bins = series.bins();
  const std::size_t count = n - t_len - span_d + 1;

  tensorized out;
  out.inputs = tensor4(count, bins, t_len, 2);
  out.future.count = count;
  out.future.bins = bins;
  out.future.span = span_d;
  out.future.data.resize(count * bins * span_d);

  for (std::size_t e = 0; e < count; ++e) {
    for (std::size_t i = 0; i < t_len; ++i) {
      const auto& snap = series.snapshots[e + i].values;
      for (std::size_t f = 0; f < bins; ++f) {
        out.inputs.at(e, f, i, 0) = snap[f].real();
        out.inputs.at(e, f, i, 1) = snap[f].imag();
      }
    }
    for (std::size_t d = 0; d < span_d; ++d) {
      const auto& snap = series.snapshots[e + t_len + d].values;
      for (std::size_t f = 0; f < bins; ++f) out.future.at(e, f, d) = snap[f];
    }
  }
  return out;
}

// Predictor targets: scaled magnitudes of the future CFR, shape (B, F, 1, D).
inline tensor4 make_predictor_labels(const future_cfr& future, double scale) {
  if (scale <= 0.0) throw config_error("scale must be positive");
  tensor4 labels(future.count, future.bins, 1, future.span);
  for (std::size_t e = 0; e < future.count; ++e)
    for (std::size_t f = 0; f < future.bins; ++f)
      for (std::size_t d = 0; d < future.span; ++d)
        labels.at(e, f, 0, d) = scale * std::abs(future.at(e, f, d));
  return labels;
}

// Classifier targets: 1 where the scaled magnitude falls below the threshold.
inline tensor4 make_classifier_labels(const future_cfr& future, double scale, double threshold) {
  tensor4 labels(future.count, future.bins, 1, future.span);
  for (std::size_t e = 0; e < future.count; ++e)
    for (std::size_t f = 0; f < future.bins; ++f)
      for (std::size_t d = 0; d < future.span; ++d)
        labels.at(e, f, 0, d) = (scale * std::abs(future.at(e, f, d)) < threshold) ? 1.0 : 0.0;
  return labels;
}

// Linear-interpolation percentile of a copy of the values.
inline double percentile(std::vector<double> values, double pct) {
  if (values.empty()) throw data_error("percentile of empty set");
  if (pct < 0.0 || pct > 100.0) throw config_error("percentile must be in [0, 100]");
  std::sort(values.begin(), values.end());
  const double pos = pct / 100.0 * static_cast<double>(values.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] * (1.0 - frac) + values[hi] * frac;
}

struct dataset_split {
  tensor4 x_train, x_test;
  tensor4 y_pred_train, y_pred_test;
  tensor4 y_cls_train, y_cls_test;
  double scale = 1.0;
  double threshold = 0.0;
  std::size_t t_len = 0;
  std::size_t span_d = 0;
};

namespace detail {

inline void append_tensor(tensor4& dst, const tensor4& src) {
  if (dst.size() == 0) {
    dst = src;
    return;
  }
  if (dst.dims[1] != src.dims[1] || dst.dims[2] != src.dims[2] || dst.dims[3] != src.dims[3])
    throw data_error("runs have incompatible shapes");
  dst.dims[0] += src.dims[0];
  dst.data.insert(dst.data.end(), src.data.begin(), src.data.end());
}

}  // namespace detail

// Time-ordered split: per run the first n_train examples feed the training
// partition and the next n_test the test partition; no shuffling across the
// boundary. The global scale is 1/RMS of the training-partition future
// magnitudes, and the classifier threshold is the given percentile of those
// scaled magnitudes.
inline dataset_split split_train_test(const std::vector<cfr_series>& runs,
                                      std::size_t n_train_per_run, std::size_t n_test_per_run,
                                      std::size_t t_len, std::size_t span_d,
                                      double fade_percentile = 10.0) {
  if (runs.empty()) throw data_error("no runs given");
  if (n_train_per_run < 1 || n_test_per_run < 1)
    throw config_error("need at least one train and one test example per run");

  dataset_split split;
  split.t_len = t_len;
  split.span_d = span_d;

  std::vector<future_cfr> train_futures, test_futures;
  for (const auto& run : runs) {
    const std::size_t needed = n_train_per_run + n_test_per_run + t_len + span_d - 1;
    if (run.length() < needed)
      throw data_error("run too short: need at least " + std::to_string(needed) +
                       " snapshots, have " + std::to_string(run.length()));
    auto t = tensorize(run, t_len, span_d);

    auto slice_inputs = [&](std::size_t begin, std::size_t count) {
      tensor4 out(count, t.inputs.dims[1], t.inputs.dims[2], t.inputs.dims[3]);
      const std::size_t stride = t.inputs.dims[1] * t.inputs.dims[2] * t.inputs.dims[3];
      std::copy_n(t.inputs.data.begin() + static_cast<std::ptrdiff_t>(begin * stride),
                  count * stride, out.data.begin());
      return out;
    };
    auto slice_future = [&](std::size_t begin, std::size_t count) {
      future_cfr out;
      out.count = count;
      out.bins = t.future.bins;
      out.span = t.future.span;
      const std::size_t stride = out.bins * out.span;
      out.data.assign(t.future.data.begin() + static_cast<std::ptrdiff_t>(begin * stride),
                      t.future.data.begin() + static_cast<std::ptrdiff_t>((begin + count) * stride));
      return out;
    };

    detail::append_tensor(split.x_train, slice_inputs(0, n_train_per_run));
    detail::append_tensor(split.x_test, slice_inputs(n_train_per_run, n_test_per_run));
    train_futures.push_back(slice_future(0, n_train_per_run));
    test_futures.push_back(slice_future(n_train_per_run, n_test_per_run));
  }

  double sq_sum = 0.0;
  std::size_t count = 0;
  for (const auto& fut : train_futures)
    for (const auto& v : fut.data) {
      sq_sum += std::norm(v);
      ++count;
    }
  const double rms = std::sqrt(sq_sum / static_cast<double>(count));
  if (rms <= 0.0) throw data_error("training magnitudes are all zero");
  split.scale = 1.0 / rms;

  std::vector<double> scaled_mags;
  scaled_mags.reserve(count);
  for (const auto& fut : train_futures)
    for (const auto& v : fut.data) scaled_mags.push_back(split.scale * std::abs(v));
  split.threshold = percentile(std::move(scaled_mags), fade_percentile);

  for (const auto& fut : train_futures) {
    detail::append_tensor(split.y_pred_train, make_predictor_labels(fut, split.scale));
    detail::append_tensor(split.y_cls_train, make_classifier_labels(fut, split.scale, split.threshold));
  }
  for (const auto& fut : test_futures) {
    detail::append_tensor(split.y_pred_test, make_predictor_labels(fut, split.scale));
    detail::append_tensor(split.y_cls_test, make_classifier_labels(fut, split.scale, split.threshold));
  }
  return split;
}

// ---------------------------------------------------------------------------
// Binary container ("CFRD"). Layout, all little-endian:
//   magic "CFRD" | version u16 | block count u16
//   per block: role u8 | dtype u8 (0 = f64) | rank u8 | dims u64 x rank |
//              payload row-major f64
//   footer: aux0 f64 | aux1 f64
// Dataset files use roles 0..5 and footer (scale, threshold). Series files
// use roles 10 (values, J x F x 2) and 11 (band metadata) with footer
// (delta_t, fingerprint bits).

namespace container {

inline constexpr char kMagic[4] = {'C', 'F', 'R', 'D'};
inline constexpr std::uint16_t kVersion = 1;

enum class role : std::uint8_t {
  x_train = 0,
  x_test = 1,
  y_pred_train = 2,
  y_pred_test = 3,
  y_cls_train = 4,
  y_cls_test = 5,
  series_values = 10,
  series_meta = 11,
};

struct block {
  role tag;
  std::vector<std::uint64_t> dims;
  std::vector<double> payload;
};

inline void append_block(std::string& out, role tag, const std::vector<std::uint64_t>& dims,
                         const double* payload, std::size_t n) {
  io::put_u8(out, static_cast<std::uint8_t>(tag));
  io::put_u8(out, 0);  // dtype f64
  io::put_u8(out, static_cast<std::uint8_t>(dims.size()));
  for (const auto d : dims) io::put_u64(out, d);
  for (std::size_t i = 0; i < n; ++i) io::put_f64(out, payload[i]);
}

struct file {
  std::vector<block> blocks;
  double aux0 = 0.0;
  double aux1 = 0.0;

  const block* find(role tag) const {
    for (const auto& b : blocks)
      if (b.tag == tag) return &b;
    return nullptr;
  }
};

inline file parse(std::string_view bytes) {
  io::byte_reader r(bytes);
  if (bytes.size() < 8) throw data_error("not a CFRD file: too short");
  char magic[4];
  for (auto& c : magic) c = static_cast<char>(r.u8());
  if (std::string_view(magic, 4) != std::string_view(kMagic, 4))
    throw data_error("not a CFRD file: bad magic");
  const auto version = r.u16();
  if (version != kVersion)
    throw data_error("unsupported CFRD version " + std::to_string(version));
  const auto n_blocks = r.u16();
  file f;
  f.blocks.resize(n_blocks);
  for (auto& b : f.blocks) {
    b.tag = static_cast<role>(r.u8());
    const auto dtype = r.u8();
    if (dtype != 0) throw data_error("unsupported element dtype");
    const auto rank = r.u8();
    b.dims.resize(rank);
    std::uint64_t total = 1;
    for (auto& d : b.dims) {
      d = r.u64();
      total *= d;
    }
    if (total > (std::uint64_t{1} << 33)) throw data_error("tensor too large");
    b.payload.resize(total);
    for (auto& v : b.payload) v = r.f64();
  }
  f.aux0 = r.f64();
  f.aux1 = r.f64();
  return f;
}

}  // namespace container

namespace detail {

inline std::vector<std::uint64_t> dims64(const tensor4& t) {
  return {t.dims[0], t.dims[1], t.dims[2], t.dims[3]};
}

inline tensor4 tensor_from_block(const container::block& b) {
  if (b.dims.size() != 4) throw data_error("expected a rank-4 block");
  tensor4 t(b.dims[0], b.dims[1], b.dims[2], b.dims[3]);
  t.data = b.payload;
  return t;
}

}  // namespace detail

inline std::string serialize_dataset(const dataset_split& split) {
  std::string out;
  out.append(container::kMagic, 4);
  io::put_u16(out, container::kVersion);
  io::put_u16(out, 6);
  using container::role;
  container::append_block(out, role::x_train, detail::dims64(split.x_train),
                          split.x_train.data.data(), split.x_train.size());
  container::append_block(out, role::x_test, detail::dims64(split.x_test),
                          split.x_test.data.data(), split.x_test.size());
  container::append_block(out, role::y_pred_train, detail::dims64(split.y_pred_train),
                          split.y_pred_train.data.data(), split.y_pred_train.size());
  container::append_block(out, role::y_pred_test, detail::dims64(split.y_pred_test),
                          split.y_pred_test.data.data(), split.y_pred_test.size());
  container::append_block(out, role::y_cls_train, detail::dims64(split.y_cls_train),
                          split.y_cls_train.data.data(), split.y_cls_train.size());
  container::append_block(out, role::y_cls_test, detail::dims64(split.y_cls_test),
                          split.y_cls_test.data.data(), split.y_cls_test.size());
  io::put_f64(out, split.scale);
  io::put_f64(out, split.threshold);
  return out;
}

inline dataset_split deserialize_dataset(std::string_view bytes) {
  const auto f = container::parse(bytes);
  using container::role;
  dataset_split split;
  auto need = [&](role tag) -> const container::block& {
    const auto* b = f.find(tag);
    if (!b) throw data_error("dataset file is missing a tensor block");
    return *b;
  };
  split.x_train = detail::tensor_from_block(need(role::x_train));
  split.x_test = detail::tensor_from_block(need(role::x_test));
  split.y_pred_train = detail::tensor_from_block(need(role::y_pred_train));
  split.y_pred_test = detail::tensor_from_block(need(role::y_pred_test));
  split.y_cls_train = detail::tensor_from_block(need(role::y_cls_train));
  split.y_cls_test = detail::tensor_from_block(need(role::y_cls_test));
  split.scale = f.aux0;
  split.threshold = f.aux1;
  split.t_len = split.x_train.dims[2];
  split.span_d = split.y_pred_train.dims[3];
  return split;
}

inline void save_dataset(const dataset_split& split, const std::filesystem::path& path) {
  io::write_file(path, serialize_dataset(split));
}

inline dataset_split load_dataset(const std::filesystem::path& path) {
  return deserialize_dataset(io::read_file(path));
}

inline std::string serialize_series(const cfr_series& series) {
  std::string out;
  out.append(container::kMagic, 4);
  io::put_u16(out, container::kVersion);
  io::put_u16(out, 2);
  const std::size_t j = series.length();
  const std::size_t bins = series.bins();
  std::vector<double> values;
  values.reserve(j * bins * 2);
  for (const auto& snap : series.snapshots)
    for (const auto& v : snap.values) {
      values.push_back(v.real());
      values.push_back(v.imag());
    }
  container::append_block(out, container::role::series_values,
                          {j, bins, 2}, values.data(), values.size());
  const double meta[3] = {
      series.snapshots.empty() ? 0.0 : series.snapshots.front().band_hz.first,
      series.snapshots.empty() ? 0.0 : series.snapshots.front().band_hz.second,
      series.snapshots.empty() ? 0.0 : static_cast<double>(series.snapshots.front().t_index)};
  container::append_block(out, container::role::series_meta, {3}, meta, 3);
  io::put_f64(out, series.delta_t);
  std::uint64_t fp = series.scenario_fingerprint;
  io::put_u64(out, fp);
  return out;
}

inline cfr_series deserialize_series(std::string_view bytes) {
  const auto f = container::parse(bytes);
  const auto* values = f.find(container::role::series_values);
  const auto* meta = f.find(container::role::series_meta);
  if (!values || values->dims.size() != 3 || values->dims[2] != 2)
    throw data_error("series file is missing the value block");
  if (!meta || meta->payload.size() != 3) throw data_error("series file is missing metadata");
  cfr_series series;
  series.delta_t = f.aux0;
  series.scenario_fingerprint = std::bit_cast<std::uint64_t>(f.aux1);
  const std::size_t j = values->dims[0];
  const std::size_t bins = values->dims[1];
  series.snapshots.resize(j);
  const std::int64_t t0 = static_cast<std::int64_t>(meta->payload[2]);
  for (std::size_t s = 0; s < j; ++s) {
    auto& snap = series.snapshots[s];
    snap.t_index = t0 + static_cast<std::int64_t>(s);
    snap.band_hz = {meta->payload[0], meta->payload[1]};
    snap.values.resize(bins);
    for (std::size_t b = 0; b < bins; ++b)
      snap.values[b] = {values->payload[(s * bins + b) * 2],
                        values->payload[(s * bins + b) * 2 + 1]};
  }
  return series;
}

inline void save_series(const cfr_series& series, const std::filesystem::path& path) {
  io::write_file(path, serialize_series(series));
}

inline cfr_series load_series(const std::filesystem::path& path) {
  return deserialize_series(io::read_file(path));
}

}  // namespace fadecast

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "fadecast/dataset.hpp"
#include "fadecast/errors.hpp"
#include "fadecast/eval.hpp"
#include "fadecast/nn/adam.hpp"
#include "fadecast/nn/losses.hpp"
#include "fadecast/nn/network.hpp"
#include "fadecast/rng.hpp"
#include "fadecast/tensor.hpp"

namespace fadecast {

enum class model_head : std::uint8_t { predictor = 0, classifier = 1 };

// The reference five-layer stack: four causal partially-dilated layers and a
// head layer whose (1 x 64) valid kernel collapses the time axis to 1.
inline nn::network build_predictor(std::size_t span_d, std::size_t t_len,
                                   model_head head = model_head::predictor) {
  if (span_d < 1) throw config_error("span_d must be at least 1");
  if (t_len < 64)
    throw config_error("reference architecture needs t_len >= 64 (head kernel span), got " +
                       std::to_string(t_len));
  using nn::activation;
  using nn::conv_spec;
  using nn::time_mode;
  nn::network net;
  net.add_layer(conv_spec{2, 2, 3, 10, 1, 1, activation::tanh, time_mode::causal});
  net.add_layer(conv_spec{2, 3, 10, 10, 1, 16, activation::tanh, time_mode::causal});
  net.add_layer(conv_spec{3, 3, 10, 10, 10, 1, activation::tanh, time_mode::causal});
  net.add_layer(conv_spec{3, 2, 10, 3, 1, 64, activation::tanh, time_mode::causal});
  net.add_layer(conv_spec{2, span_d, 1, 64, 1, 1,
                          head == model_head::predictor ? activation::exponential
                                                        : activation::sigmoid,
                          time_mode::valid});
  return net;
}

inline nn::network build_classifier(std::size_t span_d, std::size_t t_len) {
  return build_predictor(span_d, t_len, model_head::classifier);
}

// Quarter-scale variant of the same shape family for short-time-axis
// profiles: identical channel progression, dilations shrunk with the axes,
// head kernel (1 x t_len) so the time axis still collapses to 1.
inline nn::network build_compact(std::size_t span_d, std::size_t t_len, model_head head) {
  if (span_d < 1) throw config_error("span_d must be at least 1");
  if (t_len < 2) throw config_error("compact architecture needs t_len >= 2");
  using nn::activation;
  using nn::conv_spec;
  using nn::time_mode;
  nn::network net;
  net.add_layer(conv_spec{2, 2, 3, 5, 1, 1, activation::tanh, time_mode::causal});
  net.add_layer(conv_spec{2, 3, 5, 5, 1, 4, activation::tanh, time_mode::causal});
  net.add_layer(conv_spec{3, 3, 5, 5, 5, 1, activation::tanh, time_mode::causal});
  net.add_layer(conv_spec{3, 2, 5, 3, 1, 16, activation::tanh, time_mode::causal});
  net.add_layer(conv_spec{2, span_d, 1, t_len, 1, 1,
                          head == model_head::predictor ? activation::exponential
                                                        : activation::sigmoid,
                          time_mode::valid});
  return net;
}

enum class model_arch : std::uint8_t { automatic = 0, reference = 1, compact = 2 };

inline nn::network build_model(model_arch arch, model_head head, std::size_t span_d,
                               std::size_t t_len) {
  if (arch == model_arch::automatic)
    arch = t_len >= 64 ? model_arch::reference : model_arch::compact;
  if (arch == model_arch::reference) return build_predictor(span_d, t_len, head);
  return build_compact(span_d, t_len, head);
}

struct train_config {
  std::size_t batch_size = 64;
  std::size_t epochs = 30;
  double lr = 0.003;
  std::uint64_t seed = 1;
  bool shuffle = true;
};

struct train_log {
  std::vector<double> train_loss;  // index e = epoch e+1
  std::vector<double> test_loss;
};

namespace detail {

inline tensor4 take_rows(const tensor4& x, const std::vector<std::size_t>& order,
                         std::size_t begin, std::size_t count) {
  tensor4 out(count, x.dims[1], x.dims[2], x.dims[3]);
  const std::size_t stride = x.dims[1] * x.dims[2] * x.dims[3];
  for (std::size_t i = 0; i < count; ++i)
    std::copy_n(x.data.begin() + static_cast<std::ptrdiff_t>(order[begin + i] * stride), stride,
                out.data.begin() + static_cast<std::ptrdiff_t>(i * stride));
  return out;
}

inline tensor4 take_range(const tensor4& x, std::size_t begin, std::size_t count) {
  tensor4 out(count, x.dims[1], x.dims[2], x.dims[3]);
  const std::size_t stride = x.dims[1] * x.dims[2] * x.dims[3];
  std::copy_n(x.data.begin() + static_cast<std::ptrdiff_t>(begin * stride), count * stride,
              out.data.begin());
  return out;
}

}  // namespace detail

// Chunked forward pass; per-example results are independent of the chunking.
inline tensor4 predict(const nn::network& net, const tensor4& x, std::size_t chunk = 64) {
  if (chunk < 1) throw config_error("chunk must be at least 1");
  const std::size_t n = x.dims[0];
  tensor4 out;
  for (std::size_t begin = 0; begin < n; begin += chunk) {
    const std::size_t count = std::min(chunk, n - begin);
    tensor4 part = net.forward(detail::take_range(x, begin, count));
    if (begin == 0) {
      out = tensor4(n, part.dims[1], part.dims[2], part.dims[3]);
    }
    std::copy(part.data.begin(), part.data.end(),
              out.data.begin() +
                  static_cast<std::ptrdiff_t>(begin * part.dims[1] * part.dims[2] * part.dims[3]));
  }
  if (n == 0) throw config_error("predict on an empty batch");
  return out;
}

// Whole-set loss used for the per-epoch test column. The predictor head uses
// the per-step MSE row mean so evaluation reports reproduce it bit-exactly.
inline double evaluate_loss(const nn::network& net, model_head head, const tensor4& x,
                            const tensor4& y, std::size_t chunk = 64) {
  const tensor4 pred = predict(net, x, chunk);
  if (head == model_head::predictor) return per_step_mse(pred, y).mean();
  return nn::bce_loss(pred, y);
}

// Mini-batch training with Adam. Logs the running train-loss mean (weighted
// by batch size, losses taken before each update) and the full test loss per
// epoch.
inline train_log fit(nn::network& net, model_head head, const tensor4& x_train,
                     const tensor4& y_train, const tensor4& x_test, const tensor4& y_test,
                     const train_config& cfg) {
  if (cfg.batch_size < 1 || cfg.epochs < 1) throw config_error("batch_size and epochs must be >= 1");
  const std::size_t n = x_train.dims[0];
  if (n == 0) throw config_error("empty training set");
  if (y_train.dims[0] != n || x_test.dims[0] != y_test.dims[0])
    throw config_error("example counts do not line up");

  const nn::loss_kind loss =
      head == model_head::predictor ? nn::loss_kind::mse : nn::loss_kind::bce;
  nn::adam opt(net.param_count(), cfg.lr);
  rand_stream shuffle_rs(cfg.seed, rng_stream::shuffle);

  std::vector<std::size_t> order(n);
  std::vector<double> params = net.get_params();
  std::vector<double> grads;
  train_log log;

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    if (cfg.shuffle) {
      const auto perm = shuffle_rs.permutation(n);
      order.assign(perm.begin(), perm.end());
    }

    double loss_sum = 0.0;
    for (std::size_t begin = 0; begin < n; begin += cfg.batch_size) {
      const std::size_t count = std::min(cfg.batch_size, n - begin);
      const tensor4 xb = detail::take_rows(x_train, order, begin, count);
      const tensor4 yb = detail::take_rows(y_train, order, begin, count);

      const auto acts = net.forward_cached(nn::to_channels_first(xb));
      const tensor4 pred = nn::from_channels_first(acts.back());
      tensor4 dpred;
      const double batch_loss = nn::compute_loss(loss, pred, yb, &dpred);
      loss_sum += batch_loss * static_cast<double>(count);

      net.backward(acts, nn::to_channels_first(dpred), grads);
      opt.step(params, grads);
      net.set_params(params);
    }

    log.train_loss.push_back(loss_sum / static_cast<double>(n));
    log.test_loss.push_back(evaluate_loss(net, head, x_test, y_test,
                                          std::max<std::size_t>(cfg.batch_size, 1)));
  }
  return log;
}

// The overfitting probe: evaluate a trained predictor on a series never seen
// in training, reusing the scale stored with the training dataset (the new
// data is never re-fitted).
inline step_mse_report fresh_channel_check(const nn::network& net, const cfr_series& series,
                                           std::size_t t_len, std::size_t span_d, double scale) {
  const auto t = tensorize(series, t_len, span_d);
  const tensor4 labels = make_predictor_labels(t.future, scale);
  return per_step_mse(predict(net, t.inputs), labels);
}

}  // namespace fadecast

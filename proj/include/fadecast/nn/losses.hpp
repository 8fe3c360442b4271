// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>

#include "fadecast/errors.hpp"
#include "fadecast/tensor.hpp"

namespace fadecast::nn {

enum class loss_kind : std::uint8_t { mse = 0, bce = 1 };

// Mean squared error over all cells; grad is d(loss)/d(pred).
inline double mse_loss(const tensor4& pred, const tensor4& target, tensor4* grad = nullptr) {
  if (!pred.same_shape(target)) throw config_error("loss shape mismatch");
  const double inv_n = 1.0 / static_cast<double>(pred.size());
  double sum = 0.0;
  if (grad) *grad = tensor4(pred.dims[0], pred.dims[1], pred.dims[2], pred.dims[3]);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double e = pred.data[i] - target.data[i];
    sum += e * e;
    if (grad) grad->data[i] = 2.0 * e * inv_n;
  }
  return sum * inv_n;
}

// Binary cross-entropy averaged over all cells. Predictions are clamped to
// [eps, 1-eps] before the log; gradients are taken at the clamped value so a
// saturated output still receives a finite, correctly-signed pull.
inline double bce_loss(const tensor4& pred, const tensor4& target, tensor4* grad = nullptr,
                       double eps = 1e-12) {
  if (!pred.same_shape(target)) throw config_error("loss shape mismatch");
  const double inv_n = 1.0 / static_cast<double>(pred.size());
  double sum = 0.0;
  if (grad) *grad = tensor4(pred.dims[0], pred.dims[1], pred.dims[2], pred.dims[3]);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double p = std::clamp(pred.data[i], eps, 1.0 - eps);
    const double y = target.data[i];
    sum += -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
    if (grad) grad->data[i] = (p - y) / (p * (1.0 - p)) * inv_n;
  }
  return sum * inv_n;
}

inline double compute_loss(loss_kind kind, const tensor4& pred, const tensor4& target,
                           tensor4* grad = nullptr) {
  switch (kind) {
    case loss_kind::mse: return mse_loss(pred, target, grad);
    case loss_kind::bce: return bce_loss(pred, target, grad);
  }
  throw config_error("unknown loss");
}

}  // namespace fadecast::nn

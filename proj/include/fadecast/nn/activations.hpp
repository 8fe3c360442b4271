// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "fadecast/errors.hpp"

namespace fadecast::nn {

enum class activation : std::uint8_t {
  identity = 0,
  tanh = 1,
  sigmoid = 2,
  exponential = 3,
};

inline double activate(activation a, double z) {
  switch (a) {
    case activation::identity: return z;
    case activation::tanh: return std::tanh(z);
    case activation::sigmoid: return 1.0 / (1.0 + std::exp(-z));
    case activation::exponential: return std::exp(z);
  }
  throw config_error("unknown activation");
}

// Derivative dy/dz expressed through the output y, so the backward pass can
// reuse stored activations instead of pre-activations.
inline double activate_grad_from_output(activation a, double y) {
  switch (a) {
    case activation::identity: return 1.0;
    case activation::tanh: return 1.0 - y * y;
    case activation::sigmoid: return y * (1.0 - y);
    case activation::exponential: return y;
  }
  throw config_error("unknown activation");
}

inline std::string activation_name(activation a) {
  switch (a) {
    case activation::identity: return "identity";
    case activation::tanh: return "tanh";
    case activation::sigmoid: return "sigmoid";
    case activation::exponential: return "exponential";
  }
  return "unknown";
}

inline activation activation_from_name(const std::string& name) {
  if (name == "identity") return activation::identity;
  if (name == "tanh") return activation::tanh;
  if (name == "sigmoid") return activation::sigmoid;
  if (name == "exponential") return activation::exponential;
  throw config_error("unknown activation: " + name);
}

}  // namespace fadecast::nn

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "fadecast/errors.hpp"

namespace fadecast {

// Rank-4 real tensor, row-major. The canonical axis meaning throughout the
// project is (batch, frequency, time, channel).
struct tensor4 {
  std::array<std::size_t, 4> dims{0, 0, 0, 0};
  std::vector<double> data;

  tensor4() = default;

  tensor4(std::size_t d0, std::size_t d1, std::size_t d2, std::size_t d3)
      : dims{d0, d1, d2, d3}, data(d0 * d1 * d2 * d3, 0.0) {}

  std::size_t size() const { return data.size(); }

  std::size_t index(std::size_t i0, std::size_t i1, std::size_t i2, std::size_t i3) const {
    return ((i0 * dims[1] + i1) * dims[2] + i2) * dims[3] + i3;
  }

  double& at(std::size_t i0, std::size_t i1, std::size_t i2, std::size_t i3) {
    return data[index(i0, i1, i2, i3)];
  }

  double at(std::size_t i0, std::size_t i1, std::size_t i2, std::size_t i3) const {
    return data[index(i0, i1, i2, i3)];
  }

  bool same_shape(const tensor4& other) const { return dims == other.dims; }

  bool all_finite() const {
    for (const double v : data)
      if (!std::isfinite(v)) return false;
    return true;
  }
};

}  // namespace fadecast

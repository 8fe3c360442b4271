// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fadecast/errors.hpp"
#include "fadecast/nn/activations.hpp"
#include "fadecast/rng.hpp"
#include "fadecast/tensor.hpp"

namespace fadecast::nn {

enum class time_mode : std::uint8_t {
  causal = 0,  // left-pad (k_t-1)*d_t zeros; output keeps the input length
  valid = 1,   // no padding; output length shrinks by (k_t-1)*d_t
};

// Channels-first working buffer (batch, channel, freq, time). The time axis is
// innermost so the hot loops run over contiguous memory.
struct cf_tensor {
  std::size_t n = 0, c = 0, f = 0, t = 0;
  std::vector<double> v;

  cf_tensor() = default;
  cf_tensor(std::size_t n_, std::size_t c_, std::size_t f_, std::size_t t_)
      : n(n_), c(c_), f(f_), t(t_), v(n_ * c_ * f_ * t_, 0.0) {}

  double* row(std::size_t nn, std::size_t cc, std::size_t ff) {
    return v.data() + ((nn * c + cc) * f + ff) * t;
  }
  const double* row(std::size_t nn, std::size_t cc, std::size_t ff) const {
    return v.data() + ((nn * c + cc) * f + ff) * t;
  }
};

inline cf_tensor to_channels_first(const tensor4& x) {
  cf_tensor out(x.dims[0], x.dims[3], x.dims[1], x.dims[2]);
  for (std::size_t n = 0; n < x.dims[0]; ++n)
    for (std::size_t f = 0; f < x.dims[1]; ++f)
      for (std::size_t t = 0; t < x.dims[2]; ++t)
        for (std::size_t c = 0; c < x.dims[3]; ++c)
          out.row(n, c, f)[t] = x.at(n, f, t, c);
  return out;
}

inline tensor4 from_channels_first(const cf_tensor& x) {
  tensor4 out(x.n, x.f, x.t, x.c);
  for (std::size_t n = 0; n < x.n; ++n)
    for (std::size_t c = 0; c < x.c; ++c)
      for (std::size_t f = 0; f < x.f; ++f)
        for (std::size_t t = 0; t < x.t; ++t)
          out.at(n, f, t, c) = x.row(n, c, f)[t];
  return out;
}

struct conv_spec {
  std::size_t in_channels = 1, out_channels = 1;
  std::size_t kernel_f = 1, kernel_t = 1;
  std::size_t dilation_f = 1, dilation_t = 1;
  activation act = activation::identity;
  time_mode mode = time_mode::causal;

  std::size_t weight_count() const {
    return out_channels * in_channels * kernel_f * kernel_t;
  }
  std::size_t param_count() const { return weight_count() + out_channels; }

  // Frequency span and the symmetric shift keeping the output length at F.
  std::size_t freq_span() const { return (kernel_f - 1) * dilation_f; }
  std::size_t freq_shift() const { return freq_span() / 2; }
  std::size_t time_span() const { return (kernel_t - 1) * dilation_t; }

  std::size_t out_time(std::size_t t_in) const {
    if (mode == time_mode::causal) return t_in;
    if (t_in <= time_span())
      throw config_error("valid-mode kernel span " + std::to_string(time_span() + 1) +
                         " exceeds input length " + std::to_string(t_in));
    return t_in - time_span();
  }

  void validate() const {
    if (in_channels < 1 || out_channels < 1) throw config_error("channel counts must be positive");
    if (kernel_f < 1 || kernel_t < 1) throw config_error("kernel sizes must be positive");
    if (dilation_f < 1 || dilation_t < 1) throw config_error("dilations must be positive");
  }
};

// One dilated convolution layer implementing the flipped-kernel (true
// convolution) form: the tap v reads the input v*dilation steps earlier.
// Frequency is zero-padded symmetrically so F is preserved; time is either
// causally left-padded or shrunk (valid).
class conv_layer {
 public:
  explicit conv_layer(conv_spec spec) : spec_(spec) {
    spec_.validate();
    weights_.assign(spec_.weight_count(), 0.0);
    bias_.assign(spec_.out_channels, 0.0);
  }

  const conv_spec& spec() const { return spec_; }
  std::vector<double>& weights() { return weights_; }
  const std::vector<double>& weights() const { return weights_; }
  std::vector<double>& bias() { return bias_; }
  const std::vector<double>& bias() const { return bias_; }

  double& w(std::size_t co, std::size_t ci, std::size_t vf, std::size_t vt) {
    return weights_[((co * spec_.in_channels + ci) * spec_.kernel_f + vf) * spec_.kernel_t + vt];
  }
  double w(std::size_t co, std::size_t ci, std::size_t vf, std::size_t vt) const {
    return weights_[((co * spec_.in_channels + ci) * spec_.kernel_f + vf) * spec_.kernel_t + vt];
  }

  void init_glorot(rand_stream& rs) {
    const double fan_in = static_cast<double>(spec_.in_channels * spec_.kernel_f * spec_.kernel_t);
    const double fan_out = static_cast<double>(spec_.out_channels * spec_.kernel_f * spec_.kernel_t);
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    for (auto& v : weights_) v = (2.0 * rs.uniform() - 1.0) * limit;
    for (auto& v : bias_) v = 0.0;
  }

  cf_tensor forward(const cf_tensor& x) const {
    if (x.c != spec_.in_channels)
      throw config_error("layer expects " + std::to_string(spec_.in_channels) +
                         " input channels, got " + std::to_string(x.c));
    const std::size_t t_out = spec_.out_time(x.t);
    cf_tensor y(x.n, spec_.out_channels, x.f, t_out);

    const std::size_t shift = spec_.freq_shift();
    for (std::size_t n = 0; n < x.n; ++n) {
      for (std::size_t co = 0; co < spec_.out_channels; ++co) {
        for (std::size_t ff = 0; ff < x.f; ++ff) {
          double* out = y.row(n, co, ff);
          for (std::size_t t = 0; t < t_out; ++t) out[t] = bias_[co];
        }
        for (std::size_t ci = 0; ci < spec_.in_channels; ++ci) {
          for (std::size_t vf = 0; vf < spec_.kernel_f; ++vf) {
            const std::ptrdiff_t df = static_cast<std::ptrdiff_t>(shift) -
                                      static_cast<std::ptrdiff_t>(vf * spec_.dilation_f);
            const std::size_t f_lo = df >= 0 ? 0 : static_cast<std::size_t>(-df);
            const std::size_t f_hi =
                df <= 0 ? x.f : (x.f > static_cast<std::size_t>(df) ? x.f - df : 0);
            for (std::size_t vt = 0; vt < spec_.kernel_t; ++vt) {
              const std::size_t back = vt * spec_.dilation_t;
              const double wv = w(co, ci, vf, vt);
              if (wv == 0.0) continue;
              for (std::size_t ff = f_lo; ff < f_hi; ++ff) {
                const double* in = x.row(n, ci, static_cast<std::size_t>(
                                                    static_cast<std::ptrdiff_t>(ff) + df));
                double* out = y.row(n, co, ff);
                if (spec_.mode == time_mode::causal) {
                  for (std::size_t t = back; t < t_out; ++t) out[t] += wv * in[t - back];
                } else {
                  const std::size_t off = spec_.time_span() - back;
                  for (std::size_t t = 0; t < t_out; ++t) out[t] += wv * in[t + off];
                }
              }
            }
          }
        }
        for (std::size_t ff = 0; ff < x.f; ++ff) {
          double* out = y.row(n, co, ff);
          for (std::size_t t = 0; t < t_out; ++t) out[t] = activate(spec_.act, out[t]);
        }
      }
    }
    return y;
  }

  // Backward pass. x and y are the stored forward input/output; dy is the
  // gradient w.r.t. y. Returns the gradient w.r.t. x and accumulates the
  // weight and bias gradients into wgrad/bgrad (sized like weights_/bias_).
  cf_tensor backward(const cf_tensor& x, const cf_tensor& y, const cf_tensor& dy,
                     std::vector<double>& wgrad, std::vector<double>& bgrad) const {
    if (wgrad.size() != weights_.size() || bgrad.size() != bias_.size())
      throw config_error("gradient buffers have the wrong size");
    if (dy.n != y.n || dy.c != y.c || dy.f != y.f || dy.t != y.t)
      throw config_error("output gradient shape mismatch");

    cf_tensor dz = dy;
    for (std::size_t i = 0; i < dz.v.size(); ++i)
      dz.v[i] *= activate_grad_from_output(spec_.act, y.v[i]);

    cf_tensor dx(x.n, x.c, x.f, x.t);
    const std::size_t t_out = y.t;
    const std::size_t shift = spec_.freq_shift();

    for (std::size_t n = 0; n < x.n; ++n) {
      for (std::size_t co = 0; co < spec_.out_channels; ++co) {
        double bsum = 0.0;
        for (std::size_t ff = 0; ff < x.f; ++ff) {
          const double* g = dz.row(n, co, ff);
          for (std::size_t t = 0; t < t_out; ++t) bsum += g[t];
        }
        bgrad[co] += bsum;

        for (std::size_t ci = 0; ci < spec_.in_channels; ++ci) {
          for (std::size_t vf = 0; vf < spec_.kernel_f; ++vf) {
            const std::ptrdiff_t df = static_cast<std::ptrdiff_t>(shift) -
                                      static_cast<std::ptrdiff_t>(vf * spec_.dilation_f);
            const std::size_t f_lo = df >= 0 ? 0 : static_cast<std::size_t>(-df);
            const std::size_t f_hi =
                df <= 0 ? x.f : (x.f > static_cast<std::size_t>(df) ? x.f - df : 0);
            for (std::size_t vt = 0; vt < spec_.kernel_t; ++vt) {
              const std::size_t back = vt * spec_.dilation_t;
              const double wv = w(co, ci, vf, vt);
              double wsum = 0.0;
              for (std::size_t ff = f_lo; ff < f_hi; ++ff) {
                const std::size_t fi =
                    static_cast<std::size_t>(static_cast<std::ptrdiff_t>(ff) + df);
                const double* in = x.row(n, ci, fi);
                double* din = dx.row(n, ci, fi);
                const double* g = dz.row(n, co, ff);
                if (spec_.mode == time_mode::causal) {
                  for (std::size_t t = back; t < t_out; ++t) {
                    wsum += g[t] * in[t - back];
                    din[t - back] += wv * g[t];
                  }
                } else {
                  const std::size_t off = spec_.time_span() - back;
                  for (std::size_t t = 0; t < t_out; ++t) {
                    wsum += g[t] * in[t + off];
                    din[t + off] += wv * g[t];
                  }
                }
              }
              wgrad[((co * spec_.in_channels + ci) * spec_.kernel_f + vf) * spec_.kernel_t + vt] +=
                  wsum;
            }
          }
        }
      }
    }
    return dx;
  }

  // Convenience wrappers over the public (batch, freq, time, channel) layout.
  tensor4 apply(const tensor4& x) const { return from_channels_first(forward(to_channels_first(x))); }

 private:
  conv_spec spec_;
  std::vector<double> weights_;
  std::vector<double> bias_;
};

}  // namespace fadecast::nn

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fadecast/errors.hpp"
#include "fadecast/io.hpp"
#include "fadecast/nn/conv.hpp"
#include "fadecast/rng.hpp"
#include "fadecast/tensor.hpp"

namespace fadecast::nn {

// A plain sequence of dilated convolution layers.
class network {
 public:
  network() = default;

  void add_layer(const conv_spec& spec) {
    if (!layers_.empty() && layers_.back().spec().out_channels != spec.in_channels)
      throw config_error("layer input channels do not match previous output channels");
    layers_.emplace_back(spec);
  }

  std::size_t layer_count() const { return layers_.size(); }
  conv_layer& layer(std::size_t i) { return layers_[i]; }
  const conv_layer& layer(std::size_t i) const { return layers_[i]; }

  std::size_t param_count() const {
    std::size_t n = 0;
    for (const auto& l : layers_) n += l.spec().param_count();
    return n;
  }

  void init_glorot(rand_stream& rs) {
    for (auto& l : layers_) l.init_glorot(rs);
  }

  std::vector<double> get_params() const {
    std::vector<double> out;
    out.reserve(param_count());
    for (const auto& l : layers_) {
      out.insert(out.end(), l.weights().begin(), l.weights().end());
      out.insert(out.end(), l.bias().begin(), l.bias().end());
    }
    return out;
  }

  void set_params(const std::vector<double>& flat) {
    if (flat.size() != param_count()) throw config_error("parameter vector size mismatch");
    std::size_t pos = 0;
    for (auto& l : layers_) {
      std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(pos), l.weights().size(),
                  l.weights().begin());
      pos += l.weights().size();
      std::copy_n(flat.begin() + static_cast<std::ptrdiff_t>(pos), l.bias().size(),
                  l.bias().begin());
      pos += l.bias().size();
    }
  }

  tensor4 forward(const tensor4& x) const {
    if (layers_.empty()) throw config_error("network has no layers");
    cf_tensor cur = to_channels_first(x);
    for (const auto& l : layers_) cur = l.forward(cur);
    return from_channels_first(cur);
  }

  // Forward keeping every intermediate activation; acts[0] is the input and
  // acts[i+1] the output of layer i.
  std::vector<cf_tensor> forward_cached(const cf_tensor& x) const {
    if (layers_.empty()) throw config_error("network has no layers");
    std::vector<cf_tensor> acts;
    acts.reserve(layers_.size() + 1);
    acts.push_back(x);
    for (const auto& l : layers_) acts.push_back(l.forward(acts.back()));
    return acts;
  }

  // Backpropagates dy (gradient w.r.t. the final activation) through all
  // layers and writes the flat parameter gradient in get_params() order.
  void backward(const std::vector<cf_tensor>& acts, const cf_tensor& dy,
                std::vector<double>& flat_grad) const {
    if (acts.size() != layers_.size() + 1) throw config_error("activation cache size mismatch");
    flat_grad.assign(param_count(), 0.0);

    std::vector<std::size_t> offsets(layers_.size());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
      offsets[i] = pos;
      pos += layers_[i].spec().param_count();
    }

    cf_tensor grad = dy;
    for (std::size_t i = layers_.size(); i-- > 0;) {
      const auto& l = layers_[i];
      std::vector<double> wg(l.weights().size(), 0.0);
      std::vector<double> bg(l.bias().size(), 0.0);
      grad = l.backward(acts[i], acts[i + 1], grad, wg, bg);
      std::copy(wg.begin(), wg.end(),
                flat_grad.begin() + static_cast<std::ptrdiff_t>(offsets[i]));
      std::copy(bg.begin(), bg.end(),
                flat_grad.begin() + static_cast<std::ptrdiff_t>(offsets[i] + wg.size()));
    }
  }

 private:
  std::vector<conv_layer> layers_;
};

// ---------------------------------------------------------------------------
// Weight file ("CNNW"). Little-endian:
//   magic "CNNW" | version u16 | layer count u8
//   per layer: in_ch u32 | out_ch u32 | k_f u32 | k_t u32 | d_f u32 | d_t u32 |
//              activation u8 | time mode u8 | weights f64[] | bias f64[]

namespace weights_file {
inline constexpr char kMagic[4] = {'C', 'N', 'N', 'W'};
inline constexpr std::uint16_t kVersion = 1;
}  // namespace weights_file

inline std::string serialize_network(const network& net) {
  std::string out;
  out.append(weights_file::kMagic, 4);
  io::put_u16(out, weights_file::kVersion);
  if (net.layer_count() > 255) throw config_error("too many layers to serialize");
  io::put_u8(out, static_cast<std::uint8_t>(net.layer_count()));
  for (std::size_t i = 0; i < net.layer_count(); ++i) {
    const auto& l = net.layer(i);
    const auto& s = l.spec();
    io::put_u32(out, static_cast<std::uint32_t>(s.in_channels));
    io::put_u32(out, static_cast<std::uint32_t>(s.out_channels));
    io::put_u32(out, static_cast<std::uint32_t>(s.kernel_f));
    io::put_u32(out, static_cast<std::uint32_t>(s.kernel_t));
    io::put_u32(out, static_cast<std::uint32_t>(s.dilation_f));
    io::put_u32(out, static_cast<std::uint32_t>(s.dilation_t));
    io::put_u8(out, static_cast<std::uint8_t>(s.act));
    io::put_u8(out, static_cast<std::uint8_t>(s.mode));
    for (const double w : l.weights()) io::put_f64(out, w);
    for (const double b : l.bias()) io::put_f64(out, b);
  }
  return out;
}

inline network deserialize_network(std::string_view bytes) {
  io::byte_reader r(bytes);
  if (bytes.size() < 7) throw data_error("not a CNNW file: too short");
  char magic[4];
  for (auto& c : magic) c = static_cast<char>(r.u8());
  if (std::string_view(magic, 4) != std::string_view(weights_file::kMagic, 4))
    throw data_error("not a CNNW file: bad magic");
  const auto version = r.u16();
  if (version != weights_file::kVersion)
    throw data_error("unsupported CNNW version " + std::to_string(version));
  const auto n_layers = r.u8();
  network net;
  for (std::size_t i = 0; i < n_layers; ++i) {
    conv_spec s;
    s.in_channels = r.u32();
    s.out_channels = r.u32();
    s.kernel_f = r.u32();
    s.kernel_t = r.u32();
    s.dilation_f = r.u32();
    s.dilation_t = r.u32();
    const auto act = r.u8();
    if (act > 3) throw data_error("unknown activation code in weight file");
    s.act = static_cast<activation>(act);
    const auto mode = r.u8();
    if (mode > 1) throw data_error("unknown time mode in weight file");
    s.mode = static_cast<time_mode>(mode);
    net.add_layer(s);
    auto& l = net.layer(i);
    for (auto& w : l.weights()) w = r.f64();
    for (auto& b : l.bias()) b = r.f64();
  }
  if (r.remaining() != 0) throw data_error("trailing bytes in weight file");
  return net;
}

inline void save_network(const network& net, const std::filesystem::path& path) {
  io::write_file(path, serialize_network(net));
}

inline network load_network(const std::filesystem::path& path) {
  return deserialize_network(io::read_file(path));
}

}  // namespace fadecast::nn

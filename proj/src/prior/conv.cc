#include "hemoprior/prior/conv.h"

#include <string>

#include "hemoprior/errors.h"

namespace hemoprior {

Tensor3::Tensor3(int c, int h, int w) : channels(c), height(h), width(w) {
  if (c < 0 || h < 0 || w < 0) throw ValidationError("negative tensor extent");
  data.assign(static_cast<std::size_t>(c) * h * w, 0.0);
}

Tensor3 Tensor3::Slice(int begin, int end) const {
  if (begin < 0 || end > channels || begin > end) throw ValidationError("bad channel slice");
  Tensor3 out(end - begin, height, width);
  const std::size_t plane = static_cast<std::size_t>(height) * width;
  std::copy(data.begin() + static_cast<std::ptrdiff_t>(begin * plane),
            data.begin() + static_cast<std::ptrdiff_t>(end * plane), out.data.begin());
  return out;
}

Tensor3 AssembleFiveChannel(const NormalizedFrame& norm, const PriorMaps& maps) {
  const int w = norm.width;
  const int h = norm.height;
  for (const ScalarMap* m : {&maps.p_blood, &maps.h_afi_phi}) {
    if (m->width != w || m->height != h) {
      throw ValidationError("assemble_five_channel: prior map shape differs from frame");
    }
  }
  Tensor3 out(5, h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) out.at(c, y, x) = norm.at(x, y, c);
      out.at(3, y, x) = maps.p_blood.at(x, y);
      out.at(4, y, x) = maps.h_afi_phi.at(x, y);
    }
  }
  return out;
}

ConvWeights::ConvWeights(int out, int in, int k) : out_channels(out), in_channels(in), kernel(k) {
  if (out < 1 || in < 1 || k < 1) throw ValidationError("conv weights need positive extents");
  values.assign(static_cast<std::size_t>(out) * in * k * k, 0.0);
}

ConvWeights ExpandFirstConvWeights(const ConvWeights& w3, int extra) {
  if (w3.in_channels != 3) {
    throw ValidationError("expected a 3-input-channel kernel, got " +
                          std::to_string(w3.in_channels));
  }
  if (extra < 0) throw ValidationError("extra channel count must be >= 0");
  ConvWeights out(w3.out_channels, 3 + extra, w3.kernel);
  for (int o = 0; o < w3.out_channels; ++o)
    for (int i = 0; i < 3; ++i)
      for (int ky = 0; ky < w3.kernel; ++ky)
        for (int kx = 0; kx < w3.kernel; ++kx) out.at(o, i, ky, kx) = w3.at(o, i, ky, kx);
  return out;
}

ConvWeights TruncateInputChannels(const ConvWeights& w, int in_channels) {
  if (in_channels < 1 || in_channels > w.in_channels) {
    throw ValidationError("cannot truncate to " + std::to_string(in_channels) + " channels");
  }
  ConvWeights out(w.out_channels, in_channels, w.kernel);
  for (int o = 0; o < w.out_channels; ++o)
    for (int i = 0; i < in_channels; ++i)
      for (int ky = 0; ky < w.kernel; ++ky)
        for (int kx = 0; kx < w.kernel; ++kx) out.at(o, i, ky, kx) = w.at(o, i, ky, kx);
  return out;
}

Tensor3 Conv2d(const Tensor3& input, const ConvWeights& weights) {
  if (input.channels != weights.in_channels) {
    throw ValidationError("conv2d: input has " + std::to_string(input.channels) +
                          " channels, kernel expects " + std::to_string(weights.in_channels));
  }
  const int pad = weights.kernel / 2;
  Tensor3 out(weights.out_channels, input.height, input.width);
  for (int o = 0; o < weights.out_channels; ++o) {
    for (int y = 0; y < input.height; ++y) {
      for (int x = 0; x < input.width; ++x) {
        double acc = 0.0;
        for (int i = 0; i < input.channels; ++i) {
          for (int ky = 0; ky < weights.kernel; ++ky) {
            const int sy = y + ky - pad;
            if (sy < 0 || sy >= input.height) continue;
            for (int kx = 0; kx < weights.kernel; ++kx) {
              const int sx = x + kx - pad;
              if (sx < 0 || sx >= input.width) continue;
              acc += weights.at(o, i, ky, kx) * input.at(i, sy, sx);
            }
          }
        }
        out.at(o, y, x) = acc;
      }
    }
  }
  return out;
}

}  // namespace hemoprior

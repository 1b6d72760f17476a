#ifndef HEMOPRIOR_PRIOR_CONV_H_
#define HEMOPRIOR_PRIOR_CONV_H_

#include <vector>

#include "hemoprior/io/normalize.h"
#include "hemoprior/prior/prior.h"

namespace hemoprior {

// Planar (C, H, W) tensor.
struct Tensor3 {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<double> data;

  Tensor3() = default;
  Tensor3(int c, int h, int w);

  double& at(int c, int y, int x) {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  double at(int c, int y, int x) const {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  // Copies channels [begin, end) into a new tensor.
  Tensor3 Slice(int begin, int end) const;
};

// Channels 0-2: normalized RGB, 3: P_blood, 4: H_AFI^Phi.
Tensor3 AssembleFiveChannel(const NormalizedFrame& norm, const PriorMaps& maps);

// (out_channels, in_channels, k, k) convolution kernel.
struct ConvWeights {
  int out_channels = 0;
  int in_channels = 0;
  int kernel = 0;
  std::vector<double> values;

  ConvWeights() = default;
  ConvWeights(int out, int in, int k);

  double& at(int o, int i, int ky, int kx) {
    return values[((static_cast<std::size_t>(o) * in_channels + i) * kernel + ky) * kernel + kx];
  }
  double at(int o, int i, int ky, int kx) const {
    return values[((static_cast<std::size_t>(o) * in_channels + i) * kernel + ky) * kernel + kx];
  }
  bool operator==(const ConvWeights&) const = default;
};

// Widens a 3-input-channel kernel with `extra` all-zero input slices.
ConvWeights ExpandFirstConvWeights(const ConvWeights& w3, int extra = 2);
// Keeps the first `in_channels` input slices.
ConvWeights TruncateInputChannels(const ConvWeights& w, int in_channels);

// Direct stride-1 cross-correlation with zero "same" padding of k/2.
// Accumulates input channels in index order, so zero slices appended after
// the RGB slices leave every output bit-identical.
Tensor3 Conv2d(const Tensor3& input, const ConvWeights& weights);

}  // namespace hemoprior

#endif  // HEMOPRIOR_PRIOR_CONV_H_

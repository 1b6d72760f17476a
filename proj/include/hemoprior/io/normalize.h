#ifndef HEMOPRIOR_IO_NORMALIZE_H_
#define HEMOPRIOR_IO_NORMALIZE_H_

#include <array>
#include <vector>

#include "hemoprior/io/image.h"

namespace hemoprior {

struct NormalizationConstants {
  std::array<double, 3> mean = {0.485, 0.456, 0.406};
  std::array<double, 3> std = {0.229, 0.224, 0.225};
};

// Per-channel standardized frame; same interleaved layout as RgbFrame but
// values are unbounded.
struct NormalizedFrame {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  double at(int x, int y, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
};

NormalizedFrame ImagenetNormalize(const RgbFrame& frame,
                                  const NormalizationConstants& constants = {});
// Inverse mapping; the result is not clamped to [0,1].
RgbFrame Denormalize(const NormalizedFrame& frame,
                     const NormalizationConstants& constants = {});

}  // namespace hemoprior

#endif  // HEMOPRIOR_IO_NORMALIZE_H_

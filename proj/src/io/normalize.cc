#include "hemoprior/io/normalize.h"

namespace hemoprior {

NormalizedFrame ImagenetNormalize(const RgbFrame& frame,
                                  const NormalizationConstants& constants) {
  NormalizedFrame out{frame.width, frame.height, std::vector<double>(frame.data.size())};
  for (std::size_t i = 0; i < frame.data.size(); ++i) {
    const std::size_t c = i % 3;
    out.data[i] = (frame.data[i] - constants.mean[c]) / constants.std[c];
  }
  return out;
}

RgbFrame Denormalize(const NormalizedFrame& frame, const NormalizationConstants& constants) {
  RgbFrame out(frame.width, frame.height);
  for (std::size_t i = 0; i < frame.data.size(); ++i) {
    const std::size_t c = i % 3;
    out.data[i] = frame.data[i] * constants.std[c] + constants.mean[c];
  }
  return out;
}

}  // namespace hemoprior

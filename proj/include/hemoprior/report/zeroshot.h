#ifndef HEMOPRIOR_REPORT_ZEROSHOT_H_
#define HEMOPRIOR_REPORT_ZEROSHOT_H_

#include <optional>
#include <span>
#include <vector>

#include "hemoprior/io/image.h"
#include "hemoprior/prior/prior.h"
#include "hemoprior/stats/summary.h"

namespace hemoprior {

struct ZeroShotResult {
  PriorVersion version = PriorVersion::kV1;
  double auc = 0.5;
  std::optional<EffectSize> cohens_d;  // needs >= 2 frames per group
  std::vector<double> blood_scores;   // center-area mean of P_blood per frame
  std::vector<double> normal_scores;
};

// Scores every frame by the center-area mean of its P_blood map and measures
// how well the score separates blood frames (positives) from normal ones.
ZeroShotResult ZeroShotSeparation(std::span<const RgbFrame> blood_frames,
                                  std::span<const RgbFrame> normal_frames, PriorVersion version,
                                  const PriorParams& params = {}, double center_fraction = 0.5);

}  // namespace hemoprior

#endif  // HEMOPRIOR_REPORT_ZEROSHOT_H_

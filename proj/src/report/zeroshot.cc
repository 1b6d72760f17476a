#include "hemoprior/report/zeroshot.h"

#include <cstdint>

#include "hemoprior/errors.h"
#include "hemoprior/eval/roc.h"

namespace hemoprior {

ZeroShotResult ZeroShotSeparation(std::span<const RgbFrame> blood_frames,
                                  std::span<const RgbFrame> normal_frames, PriorVersion version,
                                  const PriorParams& params, double center_fraction) {
  if (blood_frames.empty() || normal_frames.empty()) {
    throw ValidationError("zero-shot separation needs non-empty blood and normal frame sets");
  }
  ZeroShotResult result;
  result.version = version;
  auto score = [&](const RgbFrame& f) {
    return CenterAreaMean(ComputePriorMaps(f, params, version).p_blood, center_fraction);
  };
  for (const auto& f : blood_frames) result.blood_scores.push_back(score(f));
  for (const auto& f : normal_frames) result.normal_scores.push_back(score(f));

  std::vector<double> scores(result.blood_scores);
  scores.insert(scores.end(), result.normal_scores.begin(), result.normal_scores.end());
  std::vector<std::uint8_t> labels(scores.size(), 0);
  std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(blood_frames.size()), 1);
  result.auc = *AucOvr(scores, labels);
  if (result.blood_scores.size() >= 2 && result.normal_scores.size() >= 2) {
    result.cohens_d = CohensD(result.blood_scores, result.normal_scores);
  }
  return result;
}

}  // namespace hemoprior

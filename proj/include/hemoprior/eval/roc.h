#ifndef HEMOPRIOR_EVAL_ROC_H_
#define HEMOPRIOR_EVAL_ROC_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace hemoprior {

// Midranks (1-based, ties share the average rank) of `values`.
std::vector<double> Midranks(std::span<const double> values);

// One-vs-rest Mann-Whitney AUC: P(score_pos > score_neg) + 0.5 P(tie).
// Returns nullopt when there are no positives or no negatives.
std::optional<double> AucOvr(std::span<const double> scores, std::span<const std::uint8_t> labels);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  double threshold = 0.0;  // predict positive when score >= threshold
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) first, (1,1) last
  double auc = 0.0;              // trapezoidal area under `points`
};

// Threshold sweep over distinct scores, highest first. The first point uses
// threshold +inf. Returns nullopt for degenerate labels.
std::optional<RocCurve> ComputeRocCurve(std::span<const double> scores,
                                        std::span<const std::uint8_t> labels);

}  // namespace hemoprior

#endif  // HEMOPRIOR_EVAL_ROC_H_

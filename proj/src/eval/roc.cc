#include "hemoprior/eval/roc.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "hemoprior/errors.h"

namespace hemoprior {

std::vector<double> Midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // Ranks i+1 .. j+1 share their average.
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> AucOvr(std::span<const double> scores,
                             std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) throw ValidationError("auc: scores/labels length mismatch");
  const auto ranks = Midranks(scores);
  double pos_rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (labels[i]) {
      pos_rank_sum += ranks[i];
      ++n_pos;
    }
  }
  const std::size_t n_neg = scores.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) return std::nullopt;
  const double np = static_cast<double>(n_pos);
  // Mann-Whitney U: the number of (pos, neg) pairs won, ties counting 0.5.
  const double u = pos_rank_sum - np * (np + 1.0) / 2.0;
  return u / (np * static_cast<double>(n_neg));
}

std::optional<RocCurve> ComputeRocCurve(std::span<const double> scores,
                                        std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size()) throw ValidationError("roc: scores/labels length mismatch");
  const std::size_t n_pos =
      static_cast<std::size_t>(std::count_if(labels.begin(), labels.end(), [](auto l) { return l != 0; }));
  const std::size_t n_neg = scores.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) return std::nullopt;

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0, std::numeric_limits<double>::infinity()});
  // Trapezoids are accumulated in count units (d_fp * (tp + prev_tp)) and
  // scaled once at the end.
  double twice_area = 0.0;
  std::size_t tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double threshold = scores[order[i]];
    const std::size_t prev_tp = tp, prev_fp = fp;
    while (i < order.size() && scores[order[i]] == threshold) {
      labels[order[i]] ? ++tp : ++fp;
      ++i;
    }
    twice_area += static_cast<double>(fp - prev_fp) * static_cast<double>(tp + prev_tp);
    curve.points.push_back({static_cast<double>(fp) / static_cast<double>(n_neg),
                            static_cast<double>(tp) / static_cast<double>(n_pos), threshold});
  }
  curve.auc = twice_area / (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
  return curve;
}

}  // namespace hemoprior

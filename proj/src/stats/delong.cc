#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "hemoprior/errors.h"
#include "hemoprior/eval/roc.h"
#include "hemoprior/stats/significance.h"

namespace hemoprior {

namespace {

struct Components {
  double auc = 0.0;
  std::vector<double> v_pos;  // per positive: fraction of negatives it outranks
  std::vector<double> v_neg;  // per negative: fraction of positives outranking it
};

Components Structural(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  std::vector<double> pos, neg;
  for (std::size_t i = 0; i < scores.size(); ++i) (labels[i] ? pos : neg).push_back(scores[i]);
  const double m = static_cast<double>(pos.size());
  const double n = static_cast<double>(neg.size());
  std::vector<double> all(pos);
  all.insert(all.end(), neg.begin(), neg.end());
  const auto rank_pos = Midranks(pos);
  const auto rank_neg = Midranks(neg);
  const auto rank_all = Midranks(all);

  Components out;
  out.v_pos.resize(pos.size());
  out.v_neg.resize(neg.size());
  double pos_rank_sum = 0.0;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    pos_rank_sum += rank_all[i];
    out.v_pos[i] = (rank_all[i] - rank_pos[i]) / n;
  }
  for (std::size_t j = 0; j < neg.size(); ++j) {
    out.v_neg[j] = 1.0 - (rank_all[pos.size() + j] - rank_neg[j]) / m;
  }
  out.auc = (pos_rank_sum - m * (m + 1.0) / 2.0) / (m * n);
  return out;
}

// Sample covariance (divisor k-1) of two equally long series; 0 for k < 2.
double Covariance(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t k = a.size();
  if (k < 2) return 0.0;
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(k);
  mb /= static_cast<double>(k);
  double s = 0.0;
  for (std::size_t i = 0; i < k; ++i) s += (a[i] - ma) * (b[i] - mb);
  return s / static_cast<double>(k - 1);
}

}  // namespace

PairedTestResult DelongPaired(std::span<const double> scores_a, std::span<const double> scores_b,
                              std::span<const std::uint8_t> labels, int bonferroni_m) {
  if (scores_a.size() != labels.size() || scores_b.size() != labels.size()) {
    throw ValidationError("DeLong: both arms must score the same frames");
  }
  if (bonferroni_m < 1) throw ValidationError("Bonferroni m must be >= 1");
  const auto n_pos = std::count_if(labels.begin(), labels.end(), [](auto l) { return l != 0; });
  if (n_pos == 0 || n_pos == static_cast<std::ptrdiff_t>(labels.size())) {
    throw DegeneracyError("DeLong: need at least one positive and one negative frame");
  }
  const Components a = Structural(scores_a, labels);
  const Components b = Structural(scores_b, labels);
  const double m = static_cast<double>(a.v_pos.size());
  const double n = static_cast<double>(a.v_neg.size());

  // S = S_pos / m + S_neg / n over the two arms; var(b - a) = S_aa + S_bb - 2 S_ab.
  const double s_aa = Covariance(a.v_pos, a.v_pos) / m + Covariance(a.v_neg, a.v_neg) / n;
  const double s_bb = Covariance(b.v_pos, b.v_pos) / m + Covariance(b.v_neg, b.v_neg) / n;
  const double s_ab = Covariance(a.v_pos, b.v_pos) / m + Covariance(a.v_neg, b.v_neg) / n;

  PairedTestResult r;
  r.auc_a = a.auc;
  r.auc_b = b.auc;
  r.delta = b.auc - a.auc;
  r.variance = std::max(0.0, s_aa + s_bb - 2.0 * s_ab);
  if (r.delta == 0.0) {
    r.z = 0.0;
    r.p_two_sided = 1.0;
  } else if (r.variance == 0.0) {
    r.z = r.delta > 0 ? INFINITY : -INFINITY;
    r.p_two_sided = 0.0;
    r.degenerate = true;
  } else {
    r.z = r.delta / std::sqrt(r.variance);
    r.p_two_sided = NormalTwoSidedP(r.z);
  }
  r.p_bonferroni = std::min(1.0, bonferroni_m * r.p_two_sided);
  return r;
}

}  // namespace hemoprior

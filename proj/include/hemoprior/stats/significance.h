#ifndef HEMOPRIOR_STATS_SIGNIFICANCE_H_
#define HEMOPRIOR_STATS_SIGNIFICANCE_H_

#include <cstdint>
#include <span>

namespace hemoprior {

// P(X > x) for X ~ chi-square with 1 degree of freedom, via erfc.
double ChiSquare1Survival(double x);
// Two-sided standard-normal tail probability P(|Z| >= |z|).
double NormalTwoSidedP(double z);

struct PairedTestResult {
  double auc_a = 0.0;
  double auc_b = 0.0;
  double delta = 0.0;  // auc_b - auc_a
  double variance = 0.0;
  double z = 0.0;
  double p_two_sided = 1.0;
  double p_bonferroni = 1.0;
  // Zero variance with a non-zero delta; p is reported as 0.
  bool degenerate = false;
};

// Paired DeLong test for two correlated AUCs on the same frames. Structural
// components come from midranks (O(n log n)); the variance of the AUC
// difference uses the full 2x2 covariance. p_bonferroni = min(1, m * p).
// Throws DegeneracyError when labels lack positives or negatives.
PairedTestResult DelongPaired(std::span<const double> scores_a, std::span<const double> scores_b,
                              std::span<const std::uint8_t> labels, int bonferroni_m = 1);

struct McNemarResult {
  std::int64_t b = 0;  // A wrong, B right
  std::int64_t c = 0;  // A right, B wrong
  double chi2 = 0.0;
  double p = 1.0;

  std::int64_t net() const { return b - c; }
};

// Continuity-corrected: chi2 = max(0, |b - c| - 1)^2 / (b + c).
McNemarResult McNemar(std::int64_t b, std::int64_t c);
McNemarResult McNemarFromCorrectness(std::span<const std::uint8_t> correct_a,
                                     std::span<const std::uint8_t> correct_b);

}  // namespace hemoprior

#endif  // HEMOPRIOR_STATS_SIGNIFICANCE_H_

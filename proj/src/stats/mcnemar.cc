#include <cmath>
#include <cstdlib>

#include "hemoprior/errors.h"
#include "hemoprior/stats/significance.h"

namespace hemoprior {

double ChiSquare1Survival(double x) {
  if (!(x > 0.0)) return 1.0;
  return std::erfc(std::sqrt(x / 2.0));
}

double NormalTwoSidedP(double z) { return std::erfc(std::abs(z) / std::sqrt(2.0)); }

McNemarResult McNemar(std::int64_t b, std::int64_t c) {
  if (b < 0 || c < 0) throw ValidationError("McNemar counts must be >= 0");
  McNemarResult r{b, c, 0.0, 1.0};
  if (b + c == 0) return r;
  const double diff = std::max<double>(0.0, static_cast<double>(std::llabs(b - c)) - 1.0);
  r.chi2 = diff * diff / static_cast<double>(b + c);
  r.p = ChiSquare1Survival(r.chi2);
  return r;
}

McNemarResult McNemarFromCorrectness(std::span<const std::uint8_t> correct_a,
                                     std::span<const std::uint8_t> correct_b) {
  if (correct_a.size() != correct_b.size()) {
    throw ValidationError("McNemar needs paired correctness vectors of equal length");
  }
  std::int64_t b = 0, c = 0;
  for (std::size_t i = 0; i < correct_a.size(); ++i) {
    if (!correct_a[i] && correct_b[i]) ++b;
    if (correct_a[i] && !correct_b[i]) ++c;
  }
  return McNemar(b, c);
}

}  // namespace hemoprior

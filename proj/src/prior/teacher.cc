#include "hemoprior/prior/teacher.h"

#include <algorithm>
#include <cmath>

#include "hemoprior/errors.h"

namespace hemoprior {

namespace {

// floor(i * n / out) and ceil((i + 1) * n / out) in integer arithmetic.
int WindowStart(int i, int n, int out) {
  return static_cast<int>(static_cast<long long>(i) * n / out);
}
int WindowEnd(int i, int n, int out) {
  return static_cast<int>((static_cast<long long>(i + 1) * n + out - 1) / out);
}

}  // namespace

ScalarMap AdaptiveAvgPool(const ScalarMap& map, int out_height, int out_width) {
  if (out_height < 1 || out_width < 1 || out_height > map.height || out_width > map.width) {
    throw ValidationError("adaptive_avg_pool: output must be between 1x1 and the input size");
  }
  ScalarMap out(out_width, out_height);
  for (int i = 0; i < out_height; ++i) {
    const int y0 = WindowStart(i, map.height, out_height);
    const int y1 = WindowEnd(i, map.height, out_height);
    for (int j = 0; j < out_width; ++j) {
      const int x0 = WindowStart(j, map.width, out_width);
      const int x1 = WindowEnd(j, map.width, out_width);
      double sum = 0.0;
      for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) sum += map.at(x, y);
      out.at(j, i) = sum / (static_cast<double>(y1 - y0) * (x1 - x0));
    }
  }
  return out;
}

double BceMapLoss(const ScalarMap& pred, const ScalarMap& target) {
  RequireSameShape(pred, target, "bce_map_loss");
  if (pred.values.empty()) throw ValidationError("bce_map_loss: empty maps");
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double p = std::clamp(pred.values[i], kBceClamp, 1.0 - kBceClamp);
    const double t = target.values[i];
    sum -= t * std::log(p) + (1.0 - t) * std::log1p(-p);
  }
  return sum / static_cast<double>(pred.size());
}

ScalarMap TeacherTarget(const RgbFrame& frame, const PriorParams& params, PriorVersion version,
                        int out_height, int out_width) {
  return AdaptiveAvgPool(ComputePriorMaps(frame, params, version).p_blood, out_height,
                         out_width);
}

double DistillationLoss(const ScalarMap& student, const ScalarMap& teacher,
                        double lambda_distill) {
  if (!(lambda_distill >= 0.0)) throw ValidationError("lambda_distill must be >= 0");
  return lambda_distill * BceMapLoss(student, teacher);
}

}  // namespace hemoprior

#ifndef HEMOPRIOR_PRIOR_PRIOR_H_
#define HEMOPRIOR_PRIOR_PRIOR_H_

#include <span>
#include <string_view>

#include "hemoprior/io/image.h"
#include "hemoprior/prior/scalar_map.h"

namespace hemoprior {

enum class PriorVersion { kV1, kV2 };

PriorVersion ParsePriorVersion(std::string_view s);
std::string_view ToString(PriorVersion v);

enum class PercentileMethod {
  kLinear,       // interpolate between order statistics, rank = p/100 * (n-1)
  kNearestRank,  // smallest value with at least p% of the data at or below it
};

struct PriorParams {
  double epsilon = 1e-6;
  double alpha_v1 = 4.0;
  double alpha_v2 = 6.0;
  double pivot_v2 = 0.30;
  double clip_lo_pct = 1.0;
  double clip_hi_pct = 99.0;
  // Fluence length scale is lambda_scale * sqrt(H^2 + W^2).
  double lambda_scale = 0.25;
  PercentileMethod percentile_method = PercentileMethod::kLinear;

  // Throws ValidationError on clip_lo >= clip_hi, non-positive alpha or scale.
  void Validate() const;
};

struct PriorMaps {
  // v1: percentile-clipped hemoglobin index in [0,1].
  // v2: the red-vs-green index (R-G)/(R+G+eps) in [-1,1].
  ScalarMap h_norm;
  ScalarMap phi;
  ScalarMap p_blood;
  ScalarMap h_afi_phi;
  PriorVersion version = PriorVersion::kV1;
  PriorParams params;
};

double Sigmoid(double x);

// Percentile of `values` (p in [0,100]) under the given convention.
double Percentile(std::span<const double> values, double p,
                  PercentileMethod method = PercentileMethod::kLinear);

// H = R / (G + B + eps).
ScalarMap HemoglobinIndex(const RgbFrame& frame, double eps = 1e-6);

// Clips to the per-frame [lo_pct, hi_pct] percentiles, then rescales to
// [0,1] with (x - p_lo) / (p_hi - p_lo + eps). A constant map becomes all
// zeros.
ScalarMap PercentileClipNormalize(const ScalarMap& map, double lo_pct = 1.0,
                                  double hi_pct = 99.0, double eps = 1e-6,
                                  PercentileMethod method = PercentileMethod::kLinear);

// Phi = exp(-r / lambda_eff), r measured from ((W-1)/2, (H-1)/2).
// Φ at distance r (pixels) from the center of a width x height frame.
double FluenceAt(double r, int width, int height, double lambda_scale = 0.25);
ScalarMap RadialFluence(int width, int height, double lambda_scale = 0.25);

ScalarMap BloodProbabilityV1(const ScalarMap& h_norm, const ScalarMap& phi, double alpha = 4.0);

// log((G + eps) / (B + eps)) * Phi.
ScalarMap AfiSurrogate(const RgbFrame& frame, const ScalarMap& phi, double eps = 1e-6);

// (R - G) / (R + G + eps), the scale-fixed red-green contrast used by v2.
ScalarMap RedGreenIndex(const RgbFrame& frame, double eps = 1e-6);
ScalarMap BloodProbabilityV2(const RgbFrame& frame, const ScalarMap& phi, double alpha = 6.0,
                             double pivot = 0.30, double eps = 1e-6);

// Runs the full per-frame pipeline on un-normalized RGB.
PriorMaps ComputePriorMaps(const RgbFrame& frame, const PriorParams& params,
                           PriorVersion version);

// Mean over the centered rectangle covering `fraction` of the area. Sides
// are W*sqrt(fraction) and H*sqrt(fraction) rounded to the nearest integer
// (at least 1); the offset is floor((W - side) / 2).
double CenterAreaMean(const ScalarMap& map, double fraction = 0.5);

}  // namespace hemoprior

#endif  // HEMOPRIOR_PRIOR_PRIOR_H_

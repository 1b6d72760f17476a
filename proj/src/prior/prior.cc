#include "hemoprior/prior/prior.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hemoprior/errors.h"

namespace hemoprior {

PriorVersion ParsePriorVersion(std::string_view s) {
  if (s == "v1") return PriorVersion::kV1;
  if (s == "v2") return PriorVersion::kV2;
  throw ValidationError("prior version must be v1 or v2, got '" + std::string(s) + "'");
}

std::string_view ToString(PriorVersion v) { return v == PriorVersion::kV1 ? "v1" : "v2"; }

void PriorParams::Validate() const {
  if (!(epsilon > 0.0)) throw ValidationError("epsilon must be > 0");
  if (!(alpha_v1 > 0.0) || !(alpha_v2 > 0.0)) throw ValidationError("alpha must be > 0");
  if (!(lambda_scale > 0.0)) throw ValidationError("lambda_scale must be > 0");
  if (!(clip_lo_pct >= 0.0 && clip_lo_pct < clip_hi_pct && clip_hi_pct <= 100.0)) {
    throw ValidationError("need 0 <= clip_lo < clip_hi <= 100");
  }
}

double Sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double Percentile(std::span<const double> values, double p, PercentileMethod method) {
  if (values.empty()) throw ValidationError("percentile of empty map");
  if (!(p >= 0.0 && p <= 100.0)) throw ValidationError("percentile outside [0,100]");
  std::vector<double> v(values.begin(), values.end());
  const std::size_t n = v.size();
  if (method == PercentileMethod::kNearestRank) {
    std::size_t rank = static_cast<std::size_t>(std::ceil(p / 100.0 * static_cast<double>(n)));
    const std::size_t k = rank == 0 ? 0 : rank - 1;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
    return v[k];
  }
  const double pos = p / 100.0 * static_cast<double>(n - 1);
  const std::size_t k = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(k);
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k), v.end());
  const double lo = v[k];
  if (frac == 0.0 || k + 1 >= n) return lo;
  const double hi = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(k) + 1, v.end());
  return lo + frac * (hi - lo);
}

ScalarMap HemoglobinIndex(const RgbFrame& frame, double eps) {
  ScalarMap out(frame.width, frame.height);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double* px = &frame.data[i * 3];
    out.values[i] = px[0] / (px[1] + px[2] + eps);
  }
  return out;
}

ScalarMap PercentileClipNormalize(const ScalarMap& map, double lo_pct, double hi_pct,
                                  double eps, PercentileMethod method) {
  if (map.values.empty()) throw ValidationError("cannot normalize an empty map");
  const double lo = Percentile(map.values, lo_pct, method);
  const double hi = Percentile(map.values, hi_pct, method);
  const double denom = hi - lo + eps;
  ScalarMap out(map.width, map.height);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values[i] = (std::clamp(map.values[i], lo, hi) - lo) / denom;
  }
  return out;
}

double FluenceAt(double r, int width, int height, double lambda_scale) {
  if (!(lambda_scale > 0.0)) throw ValidationError("lambda_scale must be > 0");
  const double lambda_eff =
      lambda_scale * std::sqrt(static_cast<double>(width) * width +
                               static_cast<double>(height) * height);
  return std::exp(-r / lambda_eff);
}

ScalarMap RadialFluence(int width, int height, double lambda_scale) {
  if (width < 1 || height < 1) throw ValidationError("fluence grid must be at least 1x1");
  if (!(lambda_scale > 0.0)) throw ValidationError("lambda_scale must be > 0");
  const double xc = (width - 1) / 2.0;
  const double yc = (height - 1) / 2.0;
  ScalarMap out(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      out.at(x, y) = FluenceAt(std::hypot(x - xc, y - yc), width, height, lambda_scale);
    }
  }
  return out;
}

ScalarMap BloodProbabilityV1(const ScalarMap& h_norm, const ScalarMap& phi, double alpha) {
  RequireSameShape(h_norm, phi, "blood_probability_v1");
  ScalarMap out(phi.width, phi.height);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.values[i] = Sigmoid(alpha * (h_norm.values[i] - 0.5)) * phi.values[i];
  }
  return out;
}

namespace {

void RequireFrameShape(const RgbFrame& frame, const ScalarMap& map, const char* what) {
  if (frame.width != map.width || frame.height != map.height) {
    throw ValidationError(std::string(what) + ": frame and map shapes differ");
  }
}

}  // namespace

ScalarMap AfiSurrogate(const RgbFrame& frame, const ScalarMap& phi, double eps) {
  RequireFrameShape(frame, phi, "afi_surrogate");
  ScalarMap out(phi.width, phi.height);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double* px = &frame.data[i * 3];
    out.values[i] = std::log((px[1] + eps) / (px[2] + eps)) * phi.values[i];
  }
  return out;
}

ScalarMap RedGreenIndex(const RgbFrame& frame, double eps) {
  ScalarMap out(frame.width, frame.height);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double* px = &frame.data[i * 3];
    out.values[i] = (px[0] - px[1]) / (px[0] + px[1] + eps);
  }
  return out;
}

ScalarMap BloodProbabilityV2(const RgbFrame& frame, const ScalarMap& phi, double alpha,
                             double pivot, double eps) {
  RequireFrameShape(frame, phi, "blood_probability_v2");
  ScalarMap index = RedGreenIndex(frame, eps);
  for (std::size_t i = 0; i < index.size(); ++i) {
    index.values[i] = Sigmoid(alpha * (index.values[i] - pivot)) * phi.values[i];
  }
  return index;
}

PriorMaps ComputePriorMaps(const RgbFrame& frame, const PriorParams& params,
                           PriorVersion version) {
  params.Validate();
  if (frame.width < 1 || frame.height < 1) throw ValidationError("empty frame");
  PriorMaps maps;
  maps.version = version;
  maps.params = params;
  maps.phi = RadialFluence(frame.width, frame.height, params.lambda_scale);
  if (version == PriorVersion::kV1) {
    maps.h_norm = PercentileClipNormalize(HemoglobinIndex(frame, params.epsilon),
                                          params.clip_lo_pct, params.clip_hi_pct,
                                          params.epsilon, params.percentile_method);
    maps.p_blood = BloodProbabilityV1(maps.h_norm, maps.phi, params.alpha_v1);
  } else {
    maps.h_norm = RedGreenIndex(frame, params.epsilon);
    maps.p_blood = BloodProbabilityV2(frame, maps.phi, params.alpha_v2, params.pivot_v2,
                                      params.epsilon);
  }
  maps.h_afi_phi = AfiSurrogate(frame, maps.phi, params.epsilon);
  return maps;
}

double CenterAreaMean(const ScalarMap& map, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ValidationError("center-area fraction must be in (0,1]");
  }
  if (map.values.empty()) throw ValidationError("center-area mean of empty map");
  const double scale = std::sqrt(fraction);
  const int rw = std::clamp(static_cast<int>(std::lround(map.width * scale)), 1, map.width);
  const int rh = std::clamp(static_cast<int>(std::lround(map.height * scale)), 1, map.height);
  const int x0 = (map.width - rw) / 2;
  const int y0 = (map.height - rh) / 2;
  double sum = 0.0;
  for (int y = y0; y < y0 + rh; ++y) {
    for (int x = x0; x < x0 + rw; ++x) sum += map.at(x, y);
  }
  return sum / (static_cast<double>(rw) * rh);
}

}  // namespace hemoprior

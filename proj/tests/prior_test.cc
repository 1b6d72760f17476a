#include <doctest.h>

#include <cmath>
#include <random>

#include "hemoprior/errors.h"
#include "hemoprior/io/normalize.h"
#include "hemoprior/prior/conv.h"
#include "hemoprior/prior/prior.h"
#include "hemoprior/prior/teacher.h"
#include "oracles.h"

using namespace hemoprior;

TEST_CASE("percentile matches the definition, with nearest-rank as an option") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + trial % 37);
    for (double& x : v) x = std::round(u(rng) * 4) / 4;  // plenty of ties
    for (double p : {0.0, 1.0, 37.5, 50.0, 99.0, 100.0}) {
      CHECK(Percentile(v, p) == doctest::Approx(oracle::BrutePercentile(v, p)).epsilon(1e-15));
    }
  }
  const std::vector<double> ten = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(Percentile(ten, 50, PercentileMethod::kNearestRank) == 5.0);
  CHECK(Percentile(ten, 51, PercentileMethod::kNearestRank) == 6.0);
  CHECK(Percentile(ten, 50) == 5.5);
}

TEST_CASE("fluence is 1 at the center and exp(-2) in a square corner") {
  for (int n : {5, 64, 101}) {
    const ScalarMap phi = RadialFluence(n, n);
    if (n % 2 == 1) CHECK(phi.at(n / 2, n / 2) == 1.0);
    CHECK(std::abs(FluenceAt(0.5 * std::hypot(n, n), n, n) - std::exp(-2.0)) < 1e-9);
    CHECK(phi.at(n - 1, 0) == phi.at(0, n - 1));
    CHECK(phi.at(0, 0) == phi.at(n - 1, n - 1));
  }
  // Pixel-center geometry: a corner sits (n-1)/2 from the center on each axis.
  const int n = 9;
  const ScalarMap phi = RadialFluence(n, n);
  const double lam = 0.25 * std::sqrt(2.0 * n * n);
  CHECK(phi.at(0, 0) == doctest::Approx(std::exp(-std::sqrt(2.0) * 4.0 / lam)).epsilon(1e-14));
}

TEST_CASE("P_blood v1 analytic anchor and monotonicity") {
  ScalarMap h(1, 1, 0.5), phi(1, 1, 1.0);
  CHECK(std::abs(BloodProbabilityV1(h, phi).values[0] - 0.5) < 1e-12);
  ScalarMap lo(1, 1, 0.2), hi(1, 1, 0.8);
  CHECK(BloodProbabilityV1(lo, phi).values[0] < BloodProbabilityV1(hi, phi).values[0]);
}

TEST_CASE("P_blood v2 pure-red center") {
  RgbFrame f(9, 9);
  for (int y = 0; y < 9; ++y)
    for (int x = 0; x < 9; ++x) f.at(x, y, 0) = 1.0;
  const ScalarMap phi = RadialFluence(9, 9);
  const ScalarMap p = BloodProbabilityV2(f, phi);
  CHECK(std::abs(p.at(4, 4) - 1.0 / (1.0 + std::exp(-4.2))) < 1e-5);
}

TEST_CASE("normalized hemoglobin index stays in [0,1] and ignores a single outlier") {
  ScalarMap ramp(100, 100);
  for (std::size_t i = 0; i < ramp.size(); ++i) ramp.values[i] = static_cast<double>(i) / 9999.0;
  const ScalarMap base = PercentileClipNormalize(ramp);
  for (std::size_t at : {std::size_t{0}, std::size_t{5000}, std::size_t{9999}}) {
    ScalarMap spiked = ramp;
    spiked.values[at] = 1.4e5;
    const ScalarMap out = PercentileClipNormalize(spiked);
    double worst = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      CHECK(out.values[i] >= 0.0);
      CHECK(out.values[i] <= 1.0);
      if (i != at) worst = std::max(worst, std::abs(out.values[i] - base.values[i]));
    }
    CHECK(worst < 1e-3);
  }
}

TEST_CASE("constant frames give a zero normalized index, not NaN") {
  ScalarMap flat(8, 8, 0.7);
  const ScalarMap out = PercentileClipNormalize(flat);
  for (double v : out.values) CHECK(v == 0.0);
}

TEST_CASE("prior maps keep the frame shape and finite values") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0, 1);
  RgbFrame f(13, 7);
  for (double& v : f.data) v = u(rng);
  for (PriorVersion v : {PriorVersion::kV1, PriorVersion::kV2}) {
    const PriorMaps m = ComputePriorMaps(f, PriorParams{}, v);
    for (const ScalarMap* s : {&m.h_norm, &m.phi, &m.p_blood, &m.h_afi_phi}) {
      CHECK(s->width == 13);
      CHECK(s->height == 7);
      for (double x : s->values) CHECK(std::isfinite(x));
    }
    for (double x : m.p_blood.values) {
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
    }
  }
  // Black frame: every ratio is guarded by epsilon.
  const PriorMaps dark = ComputePriorMaps(RgbFrame(4, 4), PriorParams{}, PriorVersion::kV1);
  for (double x : dark.h_afi_phi.values) CHECK(std::isfinite(x));
}

TEST_CASE("AFI surrogate sign follows green versus blue") {
  RgbFrame f(1, 1);
  f.at(0, 0, 1) = 0.6;
  f.at(0, 0, 2) = 0.3;
  const ScalarMap phi(1, 1, 1.0);
  CHECK(AfiSurrogate(f, phi).values[0] == doctest::Approx(std::log((0.6 + 1e-6) / (0.3 + 1e-6))));
}

TEST_CASE("parameter validation") {
  PriorParams p;
  p.clip_lo_pct = 99;
  p.clip_hi_pct = 1;
  CHECK_THROWS_AS(p.Validate(), ValidationError);
  PriorParams q;
  q.epsilon = 0;
  CHECK_THROWS_AS(q.Validate(), ValidationError);
  CHECK_THROWS_AS(ParsePriorVersion("v3"), ValidationError);
}

TEST_CASE("center-area mean uses a centered square of the requested area") {
  ScalarMap m(4, 4, 0.0);
  m.at(1, 1) = m.at(2, 1) = m.at(1, 2) = m.at(2, 2) = 1.0;
  CHECK(CenterAreaMean(m, 0.25) == doctest::Approx(1.0));
  CHECK(CenterAreaMean(m, 1.0) == doctest::Approx(0.25));
}

TEST_CASE("zero-init expansion reproduces the RGB convolution exactly") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> g(0, 1);
  for (int trial = 0; trial < 10; ++trial) {
    ConvWeights w3(4, 3, 3);
    for (double& v : w3.values) v = g(rng);
    const ConvWeights w5 = ExpandFirstConvWeights(w3);
    CHECK(w5.in_channels == 5);
    CHECK(TruncateInputChannels(w5, 3) == w3);
    Tensor3 x(5, 6, 7);
    for (double& v : x.data) v = g(rng);
    const Tensor3 full = Conv2d(x, w5);
    const Tensor3 rgb = Conv2d(x.Slice(0, 3), w3);
    REQUIRE(full.data.size() == rgb.data.size());
    for (std::size_t i = 0; i < full.data.size(); ++i) CHECK(full.data[i] == rgb.data[i]);
  }
}

TEST_CASE("five-channel assembly order is RGB, P_blood, AFI") {
  RgbFrame f(3, 3);
  for (std::size_t i = 0; i < f.data.size(); ++i) f.data[i] = (i % 7) / 7.0;
  const PriorMaps m = ComputePriorMaps(f, PriorParams{}, PriorVersion::kV1);
  const Tensor3 t = AssembleFiveChannel(ImagenetNormalize(f), m);
  CHECK(t.channels == 5);
  CHECK(t.at(3, 1, 2) == m.p_blood.at(2, 1));
  CHECK(t.at(4, 2, 0) == m.h_afi_phi.at(0, 2));
  CHECK(t.at(0, 0, 1) == doctest::Approx((f.at(1, 0, 0) - 0.485) / 0.229));
}

TEST_CASE("adaptive pooling 3x3 to 2x2 matches window enumeration") {
  ScalarMap m(3, 3);
  for (int i = 0; i < 9; ++i) m.values[static_cast<std::size_t>(i)] = i + 1;
  // Windows are rows/cols [0,2) and [1,3): overlapping by one.
  const ScalarMap p = AdaptiveAvgPool(m, 2, 2);
  CHECK(p.at(0, 0) == doctest::Approx((1 + 2 + 4 + 5) / 4.0));
  CHECK(p.at(1, 0) == doctest::Approx((2 + 3 + 5 + 6) / 4.0));
  CHECK(p.at(0, 1) == doctest::Approx((4 + 5 + 7 + 8) / 4.0));
  CHECK(p.at(1, 1) == doctest::Approx((5 + 6 + 8 + 9) / 4.0));
  const ScalarMap same = AdaptiveAvgPool(m, 3, 3);
  CHECK(same.values == m.values);
}

TEST_CASE("BCE clamps and distillation scales by lambda") {
  ScalarMap pred(1, 1, 0.0), target(1, 1, 1.0);
  CHECK(BceMapLoss(pred, target) == doctest::Approx(-std::log(kBceClamp)));
  ScalarMap half(2, 2, 0.5);
  CHECK(BceMapLoss(half, half) == doctest::Approx(std::log(2.0)));
  CHECK(DistillationLoss(half, half, 0.3) == doctest::Approx(0.3 * std::log(2.0)));
  CHECK_THROWS_AS(BceMapLoss(ScalarMap(2, 2), ScalarMap(3, 2)), ValidationError);
}

TEST_CASE("teacher target is the pooled P_blood map") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0, 1);
  RgbFrame f(16, 16);
  for (double& v : f.data) v = u(rng);
  const ScalarMap t = TeacherTarget(f, PriorParams{}, PriorVersion::kV2, 4, 4);
  const ScalarMap expect = AdaptiveAvgPool(ComputePriorMaps(f, PriorParams{}, PriorVersion::kV2).p_blood, 4, 4);
  CHECK(t.values == expect.values);
}

TEST_CASE("sensitivity: percentile convention barely moves P_blood v1") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    RgbFrame f(64, 48);
    for (double& v : f.data) v = u(rng);
    PriorParams linear, nearest;
    nearest.percentile_method = PercentileMethod::kNearestRank;
    const auto a = ComputePriorMaps(f, linear, PriorVersion::kV1).p_blood;
    const auto b = ComputePriorMaps(f, nearest, PriorVersion::kV1).p_blood;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  }
  MESSAGE("max |dP_blood| linear vs nearest-rank: " << worst);
  CHECK(worst < 0.02);
}

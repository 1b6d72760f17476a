// Reference tables used by the regression tests: six-seed macro-AUC values
// for three arms and best/last checkpoint metrics for six arms.
#ifndef HEMOPRIOR_TESTS_FIXTURES_H_
#define HEMOPRIOR_TESTS_FIXTURES_H_

#include <array>
#include <string>

#include "hemoprior/report/audit.h"
#include "hemoprior/stats/summary.h"

namespace fixture {

inline hemoprior::SeedTable SixSeedTable() {
  hemoprior::SeedTable t;
  t.arms = {"RGB-only", "PI", "Distill"};
  const int seeds[] = {41, 42, 43, 44, 45, 47};
  const double rgb[] = {0.789, 0.751, 0.705, 0.775, 0.777, 0.762};
  const double pi[] = {0.777, 0.797, 0.742, 0.822, 0.780, 0.780};
  const double distill[] = {0.777, 0.816, 0.752, 0.735, 0.800, 0.761};
  for (int i = 0; i < 6; ++i) {
    t.values[seeds[i]] = {{"RGB-only", rgb[i]}, {"PI", pi[i]}, {"Distill", distill[i]}};
  }
  return t;
}

struct AuditInput {
  const char* arm;
  hemoprior::AuditMetrics best;  // accuracy, weighted_f1, macro_f1_evaluable, macro_auc_evaluable
  hemoprior::AuditMetrics last;
};

inline constexpr std::array<AuditInput, 6> kAuditInputs = {{
    {"RGB-only", {0.522, 0.512, 0.219, 0.751}, {0.572, 0.555, 0.262, 0.772}},
    {"+P_blood only", {0.524, 0.516, 0.260, 0.702}, {0.539, 0.528, 0.260, 0.701}},
    {"+H_AFI only", {0.545, 0.540, 0.243, 0.749}, {0.598, 0.576, 0.255, 0.755}},
    {"Physics-only", {0.594, 0.535, 0.239, 0.741}, {0.591, 0.534, 0.259, 0.745}},
    {"Full PI", {0.571, 0.583, 0.257, 0.797}, {0.579, 0.562, 0.286, 0.797}},
    {"Distill", {0.518, 0.519, 0.252, 0.816}, {0.572, 0.561, 0.290, 0.792}},
}};

inline nlohmann::json AuditJson(hemoprior::CheckpointTag tag) {
  nlohmann::json j;
  j["arms"] = nlohmann::json::array();
  for (const auto& in : kAuditInputs) {
    const auto& m = tag == hemoprior::CheckpointTag::kBest ? in.best : in.last;
    nlohmann::json a = {{"arm", in.arm}};
    for (std::size_t k = 0; k < m.size(); ++k) a[std::string(hemoprior::kAuditMetricNames[k])] = m[k];
    j["arms"].push_back(a);
  }
  return j;
}

}  // namespace fixture

#endif  // HEMOPRIOR_TESTS_FIXTURES_H_

#ifndef HEMOPRIOR_REPORT_COMPARE_H_
#define HEMOPRIOR_REPORT_COMPARE_H_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hemoprior/io/classes.h"
#include "hemoprior/io/predictions.h"
#include "hemoprior/stats/significance.h"

namespace hemoprior {

struct ClassComparison {
  int class_index = 0;
  std::int64_t n_pos = 0;
  PairedTestResult test;
};

struct CompareReport {
  std::size_t n_frames = 0;
  int bonferroni_m = 11;
  std::vector<ClassComparison> per_class;  // evaluable classes with positives
  std::vector<int> skipped_classes;        // evaluable but without test support
  McNemarResult mcnemar;                   // argmax correctness, b = A wrong / B right
  double accuracy_a = 0.0;
  double accuracy_b = 0.0;
  std::optional<double> macro_auc_a;
  std::optional<double> macro_auc_b;
};

// Paired per-class DeLong (Bonferroni over `bonferroni_m` tests) plus
// McNemar at the argmax operating point. Frames are matched by frame_id; the
// two dumps must cover the same frames with the same labels.
CompareReport ComparePredictions(const PredictionSet& a, const PredictionSet& b,
                                 ClassSet evaluable, int bonferroni_m = 11);

nlohmann::json CompareToJson(const CompareReport& report);
std::string CompareToMarkdown(const CompareReport& report);
std::string CompareToCsv(const CompareReport& report);

}  // namespace hemoprior

#endif  // HEMOPRIOR_REPORT_COMPARE_H_

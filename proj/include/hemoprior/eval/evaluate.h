#ifndef HEMOPRIOR_EVAL_EVALUATE_H_
#define HEMOPRIOR_EVAL_EVALUATE_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hemoprior/io/classes.h"
#include "hemoprior/io/predictions.h"
#include "hemoprior/stats/bootstrap.h"

namespace hemoprior {

template <typename T>
using ClassMatrix = std::array<std::array<T, kNumClasses>, kNumClasses>;

// Rows are true classes, columns predicted classes.
struct ConfusionMatrix {
  ClassMatrix<std::int64_t> counts{};

  std::int64_t Total() const;
  // Each row divided by its sum; empty rows stay all-zero.
  ClassMatrix<double> RowNormalized() const;
};

struct ConfusionAnnotation {
  int true_class = 0;
  int predicted_class = 0;
  double value = 0.0;
};

// Every diagonal cell plus off-diagonal cells with value >= threshold; with
// threshold 0 only non-zero off-diagonal cells are kept.
std::vector<ConfusionAnnotation> AnnotateConfusion(const ClassMatrix<double>& normalized,
                                                   double threshold = 0.10);

// w_c = N / (C * n_c) with C the number of classes having n_c > 0;
// classes with n_c = 0 get nullopt.
std::vector<std::optional<double>> ClassWeights(std::span<const std::int64_t> counts);

struct ClassMetrics {
  int class_index = 0;
  bool evaluable = false;
  std::int64_t n_pos = 0;
  std::optional<double> auc;  // nullopt when the class has no test positives
  std::optional<double> ci_lo;
  std::optional<double> ci_hi;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalReport {
  std::size_t n_frames = 0;
  ClassSet evaluable_requested;
  // Requested evaluable classes that have test support.
  ClassSet evaluable_used;
  std::vector<ClassMetrics> per_class;  // all 14, index order
  std::optional<double> macro_auc_evaluable;
  std::optional<double> macro_auc_ci_lo;
  std::optional<double> macro_auc_ci_hi;
  double accuracy = 0.0;
  double macro_f1_evaluable = 0.0;
  double weighted_f1 = 0.0;
  double cross_entropy = 0.0;
  ConfusionMatrix confusion;
};

enum class MetricKind {
  kClassAuc,
  kMacroAucEvaluable,
  kAccuracy,
  kMacroF1Evaluable,
  kWeightedF1,
  kCrossEntropy,
};

struct MetricSpec {
  MetricKind kind = MetricKind::kMacroAucEvaluable;
  int class_index = -1;  // kClassAuc only
};

// "macro_auc", "accuracy", "macro_f1", "weighted_f1", "cross_entropy", or
// "auc:<class name>".
MetricSpec ParseMetric(std::string_view name);
std::string MetricName(const MetricSpec& spec);

// Precomputes argmax, true-class log-probabilities and per-class score
// columns so metrics can be re-evaluated cheaply on index multisets.
class MetricEvaluator {
 public:
  MetricEvaluator(const PredictionSet& preds, ClassSet evaluable);

  std::size_t size() const { return labels_.size(); }
  std::span<const int> labels() const { return labels_; }
  std::span<const int> predicted() const { return predicted_; }
  std::span<const double> scores(int c) const { return columns_[static_cast<std::size_t>(c)]; }

  std::optional<double> Evaluate(const MetricSpec& spec,
                                 std::span<const std::size_t> indices) const;
  std::optional<double> ClassAuc(int c, std::span<const std::size_t> indices) const;
  ConfusionMatrix Confusion(std::span<const std::size_t> indices) const;

  // All frame indices 0..n-1.
  std::vector<std::size_t> AllIndices() const;

 private:
  ClassSet evaluable_;
  std::vector<int> labels_;
  std::vector<int> predicted_;
  std::vector<double> neg_log_prob_true_;
  std::array<std::vector<double>, kNumClasses> columns_;
};

ConfidenceInterval BootstrapMetricCi(const MetricEvaluator& evaluator, const MetricSpec& spec,
                                     const BootstrapOptions& options);

struct EvalOptions {
  bool with_ci = true;
  BootstrapOptions bootstrap;
};

EvalReport Evaluate(const PredictionSet& preds, ClassSet evaluable, const EvalOptions& options = {});

}  // namespace hemoprior

#endif  // HEMOPRIOR_EVAL_EVALUATE_H_

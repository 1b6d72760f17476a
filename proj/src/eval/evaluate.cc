#include "hemoprior/eval/evaluate.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hemoprior/errors.h"
#include "hemoprior/eval/roc.h"

namespace hemoprior {

namespace {

// Floor for probability-kind dumps that contain exact zeros.
constexpr double kMinProbability = 1e-15;

struct F1Parts {
  std::array<double, kNumClasses> precision{};
  std::array<double, kNumClasses> recall{};
  std::array<double, kNumClasses> f1{};
  std::array<std::int64_t, kNumClasses> support{};
};

F1Parts ComputeF1(const ConfusionMatrix& cm) {
  F1Parts out;
  for (int c = 0; c < kNumClasses; ++c) {
    std::int64_t tp = cm.counts[c][c], row = 0, col = 0;
    for (int k = 0; k < kNumClasses; ++k) {
      row += cm.counts[c][k];
      col += cm.counts[k][c];
    }
    out.support[c] = row;
    out.precision[c] = col > 0 ? static_cast<double>(tp) / static_cast<double>(col) : 0.0;
    out.recall[c] = row > 0 ? static_cast<double>(tp) / static_cast<double>(row) : 0.0;
    const double denom = out.precision[c] + out.recall[c];
    out.f1[c] = denom > 0.0 ? 2.0 * out.precision[c] * out.recall[c] / denom : 0.0;
  }
  return out;
}

std::optional<double> MacroF1(const F1Parts& parts, ClassSet evaluable) {
  double sum = 0.0;
  int n = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    if (!evaluable.test(static_cast<std::size_t>(c)) || parts.support[c] == 0) continue;
    sum += parts.f1[c];
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

std::optional<double> WeightedF1(const F1Parts& parts) {
  double sum = 0.0;
  std::int64_t total = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    sum += static_cast<double>(parts.support[c]) * parts.f1[c];
    total += parts.support[c];
  }
  if (total == 0) return std::nullopt;
  return sum / static_cast<double>(total);
}

}  // namespace

std::int64_t ConfusionMatrix::Total() const {
  std::int64_t t = 0;
  for (const auto& row : counts) t = std::accumulate(row.begin(), row.end(), t);
  return t;
}

ClassMatrix<double> ConfusionMatrix::RowNormalized() const {
  ClassMatrix<double> out{};
  for (int r = 0; r < kNumClasses; ++r) {
    const std::int64_t sum = std::accumulate(counts[r].begin(), counts[r].end(), std::int64_t{0});
    if (sum == 0) continue;
    for (int c = 0; c < kNumClasses; ++c) {
      out[r][c] = static_cast<double>(counts[r][c]) / static_cast<double>(sum);
    }
  }
  return out;
}

std::vector<ConfusionAnnotation> AnnotateConfusion(const ClassMatrix<double>& normalized,
                                                   double threshold) {
  std::vector<ConfusionAnnotation> out;
  for (int r = 0; r < kNumClasses; ++r) {
    for (int c = 0; c < kNumClasses; ++c) {
      const double v = normalized[r][c];
      const bool keep = r == c || (v >= threshold && v > 0.0);
      if (keep) out.push_back({r, c, v});
    }
  }
  return out;
}

std::vector<std::optional<double>> ClassWeights(std::span<const std::int64_t> counts) {
  std::int64_t total = 0;
  int present = 0;
  for (auto n : counts) {
    if (n < 0) throw ValidationError("class counts must be >= 0");
    total += n;
    if (n > 0) ++present;
  }
  std::vector<std::optional<double>> out(counts.size());
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] > 0) {
      out[c] = static_cast<double>(total) /
               (static_cast<double>(present) * static_cast<double>(counts[c]));
    }
  }
  return out;
}

MetricSpec ParseMetric(std::string_view name) {
  if (name == "macro_auc" || name == "macro_auc_evaluable") return {MetricKind::kMacroAucEvaluable};
  if (name == "accuracy") return {MetricKind::kAccuracy};
  if (name == "macro_f1" || name == "macro_f1_evaluable") return {MetricKind::kMacroF1Evaluable};
  if (name == "weighted_f1") return {MetricKind::kWeightedF1};
  if (name == "cross_entropy") return {MetricKind::kCrossEntropy};
  if (name.substr(0, 4) == "auc:") {
    auto idx = ClassIndex(name.substr(4));
    if (!idx) throw ValidationError("unknown class in metric: " + std::string(name));
    return {MetricKind::kClassAuc, *idx};
  }
  throw ValidationError("unknown metric: '" + std::string(name) + "'");
}

std::string MetricName(const MetricSpec& spec) {
  switch (spec.kind) {
    case MetricKind::kClassAuc: return "auc:" + std::string(ClassName(spec.class_index));
    case MetricKind::kMacroAucEvaluable: return "macro_auc_evaluable";
    case MetricKind::kAccuracy: return "accuracy";
    case MetricKind::kMacroF1Evaluable: return "macro_f1_evaluable";
    case MetricKind::kWeightedF1: return "weighted_f1";
    case MetricKind::kCrossEntropy: return "cross_entropy";
  }
  return "?";
}

MetricEvaluator::MetricEvaluator(const PredictionSet& preds, ClassSet evaluable)
    : evaluable_(evaluable) {
  const std::size_t n = preds.size();
  labels_.reserve(n);
  predicted_.reserve(n);
  neg_log_prob_true_.reserve(n);
  for (auto& col : columns_) col.reserve(n);
  for (const auto& r : preds.records) {
    labels_.push_back(r.true_label);
    predicted_.push_back(Argmax(r.scores));
    for (int c = 0; c < kNumClasses; ++c) columns_[c].push_back(r.scores[c]);
    if (preds.score_kind == ScoreKind::kLogits) {
      const double mx = *std::max_element(r.scores.begin(), r.scores.end());
      double sum = 0.0;
      for (double s : r.scores) sum += std::exp(s - mx);
      neg_log_prob_true_.push_back(-(r.scores[r.true_label] - mx - std::log(sum)));
    } else {
      neg_log_prob_true_.push_back(-std::log(std::max(r.scores[r.true_label], kMinProbability)));
    }
  }
}

std::vector<std::size_t> MetricEvaluator::AllIndices() const {
  std::vector<std::size_t> idx(labels_.size());
  std::iota(idx.begin(), idx.end(), 0);
  return idx;
}

std::optional<double> MetricEvaluator::ClassAuc(int c, std::span<const std::size_t> indices) const {
  std::vector<double> s(indices.size());
  std::vector<std::uint8_t> l(indices.size());
  const auto& col = columns_[static_cast<std::size_t>(c)];
  for (std::size_t i = 0; i < indices.size(); ++i) {
    s[i] = col[indices[i]];
    l[i] = labels_[indices[i]] == c ? 1 : 0;
  }
  return AucOvr(s, l);
}

ConfusionMatrix MetricEvaluator::Confusion(std::span<const std::size_t> indices) const {
  ConfusionMatrix cm;
  for (std::size_t i : indices) ++cm.counts[labels_[i]][predicted_[i]];
  return cm;
}

std::optional<double> MetricEvaluator::Evaluate(const MetricSpec& spec,
                                                std::span<const std::size_t> indices) const {
  if (indices.empty()) return std::nullopt;
  switch (spec.kind) {
    case MetricKind::kClassAuc:
      return ClassAuc(spec.class_index, indices);
    case MetricKind::kMacroAucEvaluable: {
      double sum = 0.0;
      int n = 0;
      for (int c = 0; c < kNumClasses; ++c) {
        if (!evaluable_.test(static_cast<std::size_t>(c))) continue;
        if (auto auc = ClassAuc(c, indices)) {
          sum += *auc;
          ++n;
        }
      }
      if (n == 0) return std::nullopt;
      return sum / n;
    }
    case MetricKind::kAccuracy: {
      std::size_t correct = 0;
      for (std::size_t i : indices) correct += labels_[i] == predicted_[i];
      return static_cast<double>(correct) / static_cast<double>(indices.size());
    }
    case MetricKind::kMacroF1Evaluable:
      return MacroF1(ComputeF1(Confusion(indices)), evaluable_);
    case MetricKind::kWeightedF1:
      return WeightedF1(ComputeF1(Confusion(indices)));
    case MetricKind::kCrossEntropy: {
      double sum = 0.0;
      for (std::size_t i : indices) sum += neg_log_prob_true_[i];
      return sum / static_cast<double>(indices.size());
    }
  }
  return std::nullopt;
}

ConfidenceInterval BootstrapMetricCi(const MetricEvaluator& evaluator, const MetricSpec& spec,
                                     const BootstrapOptions& options) {
  return BootstrapCi(
      evaluator.labels(),
      [&](std::span<const std::size_t> idx) { return evaluator.Evaluate(spec, idx); }, options);
}

EvalReport Evaluate(const PredictionSet& preds, ClassSet evaluable, const EvalOptions& options) {
  if (preds.records.empty()) throw ValidationError("cannot evaluate an empty prediction set");
  preds.Validate();
  const MetricEvaluator ev(preds, evaluable);
  const auto all = ev.AllIndices();

  EvalReport report;
  report.n_frames = preds.size();
  report.evaluable_requested = evaluable;
  report.confusion = ev.Confusion(all);
  const F1Parts f1 = ComputeF1(report.confusion);

  double auc_sum = 0.0;
  int auc_n = 0;
  for (int c = 0; c < kNumClasses; ++c) {
    ClassMetrics m;
    m.class_index = c;
    m.n_pos = f1.support[c];
    m.evaluable = evaluable.test(static_cast<std::size_t>(c));
    m.precision = f1.precision[c];
    m.recall = f1.recall[c];
    m.f1 = f1.f1[c];
    m.auc = ev.ClassAuc(c, all);
    if (m.auc && options.with_ci) {
      auto ci = BootstrapMetricCi(ev, {MetricKind::kClassAuc, c}, options.bootstrap);
      m.ci_lo = ci.lo;
      m.ci_hi = ci.hi;
    }
    if (m.evaluable && m.n_pos > 0) report.evaluable_used.set(static_cast<std::size_t>(c));
    if (m.evaluable && m.auc) {
      auc_sum += *m.auc;
      ++auc_n;
    }
    report.per_class.push_back(m);
  }
  if (auc_n > 0) {
    report.macro_auc_evaluable = auc_sum / auc_n;
    if (options.with_ci) {
      auto ci = BootstrapMetricCi(ev, {MetricKind::kMacroAucEvaluable}, options.bootstrap);
      report.macro_auc_ci_lo = ci.lo;
      report.macro_auc_ci_hi = ci.hi;
    }
  }
  report.accuracy = *ev.Evaluate({MetricKind::kAccuracy}, all);
  report.macro_f1_evaluable = MacroF1(f1, evaluable).value_or(0.0);
  report.weighted_f1 = *WeightedF1(f1);
  report.cross_entropy = *ev.Evaluate({MetricKind::kCrossEntropy}, all);
  return report;
}

}  // namespace hemoprior

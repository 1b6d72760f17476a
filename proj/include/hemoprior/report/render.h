#ifndef HEMOPRIOR_REPORT_RENDER_H_
#define HEMOPRIOR_REPORT_RENDER_H_

#include <string>

#include <json.hpp>

#include "hemoprior/eval/evaluate.h"
#include "hemoprior/eval/roc.h"
#include "hemoprior/io/predictions.h"

namespace hemoprior {

// Full-precision JSON view of an evaluation.
nlohmann::json EvalReportToJson(const EvalReport& report);

// Per-class table: class,evaluable,n_pos,auc,ci_lo,ci_hi,precision,recall,f1
// followed by macro/summary rows. 6 significant digits.
std::string EvalReportToCsv(const EvalReport& report);

// Table-2-style Markdown: per-class AUC with CIs, then macro rows.
std::string EvalReportToMarkdown(const EvalReport& report);

// Raw counts and row-normalized frequencies, one row per true class.
std::string ConfusionToCsv(const ConfusionMatrix& cm, bool normalized);

// Row-normalized heatmap; diagonal cells and off-diagonal cells >= threshold
// carry their value as text.
std::string ConfusionToSvg(const ConfusionMatrix& cm, double annotate_threshold = 0.10);

// ROC points per class (class,fpr,tpr,threshold).
std::string RocToCsv(const PredictionSet& preds, ClassSet classes);

// Per-class ROC polylines plus the macro-average curve (mean TPR on a
// uniform 101-point FPR grid) over `classes`.
std::string RocToSvg(const PredictionSet& preds, ClassSet classes);

}  // namespace hemoprior

#endif  // HEMOPRIOR_REPORT_RENDER_H_

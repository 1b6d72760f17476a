#include "hemoprior/report/render.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hemoprior/report/format.h"

namespace hemoprior {

namespace {

nlohmann::json OptionalJson(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

nlohmann::json ClassSetJson(ClassSet set) {
  nlohmann::json out = nlohmann::json::array();
  for (int c = 0; c < kNumClasses; ++c) {
    if (set.test(static_cast<std::size_t>(c))) out.push_back(std::string(ClassName(c)));
  }
  return out;
}

std::string Svg(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string XmlEscape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

// Fixed 14-entry qualitative palette.
constexpr const char* kPalette[kNumClasses] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2",
    "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939", "#8c6d31", "#843c39"};

struct ClassCurve {
  int class_index;
  RocCurve curve;
};

std::vector<ClassCurve> Curves(const PredictionSet& preds, ClassSet classes) {
  std::vector<ClassCurve> out;
  std::vector<double> scores(preds.size());
  std::vector<std::uint8_t> labels(preds.size());
  for (int c = 0; c < kNumClasses; ++c) {
    if (!classes.test(static_cast<std::size_t>(c))) continue;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      scores[i] = preds.records[i].scores[c];
      labels[i] = preds.records[i].true_label == c;
    }
    if (auto curve = ComputeRocCurve(scores, labels)) out.push_back({c, std::move(*curve)});
  }
  return out;
}

// TPR of a step/linear ROC at `fpr`, taking the upper envelope at vertical
// segments.
double TprAt(const RocCurve& curve, double fpr) {
  const auto& pts = curve.points;
  double best = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const auto& a = pts[i - 1];
    const auto& b = pts[i];
    if (fpr < a.fpr || fpr > b.fpr) continue;
    if (b.fpr == a.fpr) {
      best = std::max(best, b.tpr);
    } else {
      best = std::max(best, a.tpr + (b.tpr - a.tpr) * (fpr - a.fpr) / (b.fpr - a.fpr));
    }
  }
  return best;
}

}  // namespace

nlohmann::json EvalReportToJson(const EvalReport& report) {
  nlohmann::json j;
  j["n_frames"] = report.n_frames;
  j["evaluable_requested"] = ClassSetJson(report.evaluable_requested);
  j["evaluable_used"] = ClassSetJson(report.evaluable_used);
  auto& m = j["metrics"];
  m["macro_auc_evaluable"] = OptionalJson(report.macro_auc_evaluable);
  m["macro_auc_ci"] = {OptionalJson(report.macro_auc_ci_lo), OptionalJson(report.macro_auc_ci_hi)};
  m["accuracy"] = report.accuracy;
  m["macro_f1_evaluable"] = report.macro_f1_evaluable;
  m["weighted_f1"] = report.weighted_f1;
  m["cross_entropy"] = report.cross_entropy;
  j["per_class"] = nlohmann::json::array();
  for (const auto& c : report.per_class) {
    j["per_class"].push_back({{"class", std::string(ClassName(c.class_index))},
                              {"index", c.class_index},
                              {"evaluable", c.evaluable},
                              {"n_pos", c.n_pos},
                              {"auc", OptionalJson(c.auc)},
                              {"ci_lo", OptionalJson(c.ci_lo)},
                              {"ci_hi", OptionalJson(c.ci_hi)},
                              {"precision", c.precision},
                              {"recall", c.recall},
                              {"f1", c.f1}});
  }
  const auto norm = report.confusion.RowNormalized();
  j["confusion"]["counts"] = report.confusion.counts;
  j["confusion"]["row_normalized"] = norm;
  j["confusion"]["annotations"] = nlohmann::json::array();
  for (const auto& a : AnnotateConfusion(norm)) {
    j["confusion"]["annotations"].push_back(
        {{"true", std::string(ClassName(a.true_class))},
         {"predicted", std::string(ClassName(a.predicted_class))},
         {"value", a.value}});
  }
  return j;
}

std::string EvalReportToCsv(const EvalReport& report) {
  std::string csv = "class,evaluable,n_pos,auc,ci_lo,ci_hi,precision,recall,f1\n";
  for (const auto& c : report.per_class) {
    csv += CsvEscape(ClassName(c.class_index)) + "," + (c.evaluable ? "1" : "0") + "," +
           std::to_string(c.n_pos) + "," + Sig6(c.auc) + "," + Sig6(c.ci_lo) + "," +
           Sig6(c.ci_hi) + "," + Sig6(c.precision) + "," + Sig6(c.recall) + "," + Sig6(c.f1) +
           "\n";
  }
  csv += "macro_auc_evaluable,,," + Sig6(report.macro_auc_evaluable) + "," +
         Sig6(report.macro_auc_ci_lo) + "," + Sig6(report.macro_auc_ci_hi) + ",,,\n";
  csv += "accuracy,,,,,,,," + Sig6(report.accuracy) + "\n";
  csv += "macro_f1_evaluable,,,,,,,," + Sig6(report.macro_f1_evaluable) + "\n";
  csv += "weighted_f1,,,,,,,," + Sig6(report.weighted_f1) + "\n";
  csv += "cross_entropy,,,,,,,," + Sig6(report.cross_entropy) + "\n";
  return csv;
}

std::string EvalReportToMarkdown(const EvalReport& report) {
  std::string md = "| Class | n_pos | AUC [95% CI] |\n|---|---|---|\n";
  for (const auto& c : report.per_class) {
    if (!c.evaluable) continue;
    std::string cell = Sig6(c.auc);
    if (c.ci_lo) cell += " [" + Sig6(*c.ci_lo) + ", " + Sig6(*c.ci_hi) + "]";
    md += "| " + std::string(ClassName(c.class_index)) + " | " + std::to_string(c.n_pos) + " | " +
          cell + " |\n";
  }
  std::string macro = Sig6(report.macro_auc_evaluable);
  if (report.macro_auc_ci_lo) {
    macro += " [" + Sig6(*report.macro_auc_ci_lo) + ", " + Sig6(*report.macro_auc_ci_hi) + "]";
  }
  md += "| **Macro-AUC (" + std::to_string(report.evaluable_used.count()) + " classes)** | " +
        std::to_string(report.n_frames) + " | " + macro + " |\n";
  md += "\n| Accuracy | Weighted-F1 | Macro-F1 (eval) | Cross-entropy |\n|---|---|---|---|\n";
  md += "| " + Sig6(report.accuracy) + " | " + Sig6(report.weighted_f1) + " | " +
        Sig6(report.macro_f1_evaluable) + " | " + Sig6(report.cross_entropy) + " |\n";
  return md;
}

std::string ConfusionToCsv(const ConfusionMatrix& cm, bool normalized) {
  std::string csv = "true\\predicted";
  for (auto name : kClassNames) csv += "," + CsvEscape(name);
  csv += "\n";
  const auto norm = cm.RowNormalized();
  for (int r = 0; r < kNumClasses; ++r) {
    csv += CsvEscape(ClassName(r));
    for (int c = 0; c < kNumClasses; ++c) {
      csv += "," + (normalized ? Sig6(norm[r][c]) : std::to_string(cm.counts[r][c]));
    }
    csv += "\n";
  }
  return csv;
}

std::string ConfusionToSvg(const ConfusionMatrix& cm, double annotate_threshold) {
  constexpr double kCell = 36.0, kLeft = 170.0, kTop = 170.0;
  const double size = kLeft + kCell * kNumClasses + 20.0;
  const auto norm = cm.RowNormalized();
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + Svg(size) +
                    "\" height=\"" + Svg(size) + "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  for (int i = 0; i < kNumClasses; ++i) {
    const std::string name = XmlEscape(ClassName(i));
    svg += "<text x=\"" + Svg(kLeft - 4) + "\" y=\"" + Svg(kTop + kCell * i + kCell / 2 + 3) +
           "\" text-anchor=\"end\">" + name + "</text>\n";
    const double x = kLeft + kCell * i + kCell / 2;
    svg += "<text x=\"" + Svg(x) + "\" y=\"" + Svg(kTop - 4) + "\" transform=\"rotate(-60 " +
           Svg(x) + " " + Svg(kTop - 4) + ")\">" + name + "</text>\n";
  }
  for (int r = 0; r < kNumClasses; ++r) {
    for (int c = 0; c < kNumClasses; ++c) {
      const double v = norm[r][c];
      const int shade = static_cast<int>(std::lround(255.0 * (1.0 - v)));
      char fill[16];
      std::snprintf(fill, sizeof(fill), "#%02x%02xff", shade, shade);
      const double x = kLeft + kCell * c, y = kTop + kCell * r;
      svg += "<rect x=\"" + Svg(x) + "\" y=\"" + Svg(y) + "\" width=\"" + Svg(kCell) +
             "\" height=\"" + Svg(kCell) + "\" fill=\"" + fill + "\" stroke=\"#cccccc\"/>\n";
    }
  }
  for (const auto& a : AnnotateConfusion(norm, annotate_threshold)) {
    const double x = kLeft + kCell * a.predicted_class + kCell / 2;
    const double y = kTop + kCell * a.true_class + kCell / 2 + 3;
    svg += "<text x=\"" + Svg(x) + "\" y=\"" + Svg(y) + "\" text-anchor=\"middle\" fill=\"" +
           (a.value > 0.5 ? "#ffffff" : "#000000") + "\">" + Fixed(a.value, 2) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

std::string RocToCsv(const PredictionSet& preds, ClassSet classes) {
  std::string csv = "class,fpr,tpr,threshold\n";
  for (const auto& cc : Curves(preds, classes)) {
    for (const auto& p : cc.curve.points) {
      csv += CsvEscape(ClassName(cc.class_index)) + "," + Sig6(p.fpr) + "," + Sig6(p.tpr) + "," +
             Sig6(p.threshold) + "\n";
    }
  }
  return csv;
}

std::string RocToSvg(const PredictionSet& preds, ClassSet classes) {
  constexpr double kSize = 400.0, kPad = 50.0, kLegend = 220.0;
  const auto curves = Curves(preds, classes);
  auto px = [&](double fpr) { return kPad + fpr * kSize; };
  auto py = [&](double tpr) { return kPad + (1.0 - tpr) * kSize; };
  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                    Svg(kSize + 2 * kPad + kLegend) + "\" height=\"" + Svg(kSize + 2 * kPad) +
                    "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg += "<rect x=\"" + Svg(kPad) + "\" y=\"" + Svg(kPad) + "\" width=\"" + Svg(kSize) +
         "\" height=\"" + Svg(kSize) + "\" fill=\"none\" stroke=\"#000000\"/>\n";
  svg += "<line x1=\"" + Svg(px(0)) + "\" y1=\"" + Svg(py(0)) + "\" x2=\"" + Svg(px(1)) +
         "\" y2=\"" + Svg(py(1)) + "\" stroke=\"#999999\" stroke-dasharray=\"4 4\"/>\n";
  svg += "<text x=\"" + Svg(kPad + kSize / 2) + "\" y=\"" + Svg(kPad + kSize + 35) +
         "\" text-anchor=\"middle\">False positive rate</text>\n";
  svg += "<text x=\"15\" y=\"" + Svg(kPad + kSize / 2) + "\" transform=\"rotate(-90 15 " +
         Svg(kPad + kSize / 2) + ")\" text-anchor=\"middle\">True positive rate</text>\n";
  double legend_y = kPad + 10;
  for (const auto& cc : curves) {
    std::string points;
    for (const auto& p : cc.curve.points) points += Svg(px(p.fpr)) + "," + Svg(py(p.tpr)) + " ";
    const char* color = kPalette[cc.class_index];
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1\" stroke-opacity=\"0.6\" points=\"" + points + "\"/>\n";
    svg += "<text x=\"" + Svg(kPad * 2 + kSize) + "\" y=\"" + Svg(legend_y) + "\" fill=\"" +
           color + "\">" + XmlEscape(ClassName(cc.class_index)) + " (" +
           Fixed(cc.curve.auc, 3) + ")</text>\n";
    legend_y += 15;
  }
  if (!curves.empty()) {
    std::string points;
    for (int k = 0; k <= 100; ++k) {
      const double fpr = k / 100.0;
      double tpr = 0.0;
      for (const auto& cc : curves) tpr += TprAt(cc.curve, fpr);
      tpr /= static_cast<double>(curves.size());
      points += Svg(px(fpr)) + "," + Svg(py(tpr)) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"#000000\" stroke-width=\"2.5\" points=\"" + points +
           "\"/>\n";
    svg += "<text x=\"" + Svg(kPad * 2 + kSize) + "\" y=\"" + Svg(legend_y) +
           "\" font-weight=\"bold\">Macro average</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace hemoprior

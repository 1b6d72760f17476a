#include "hemoprior/report/compare.h"

#include <cmath>
#include <map>

#include "hemoprior/errors.h"
#include "hemoprior/report/format.h"

namespace hemoprior {

CompareReport ComparePredictions(const PredictionSet& a, const PredictionSet& b,
                                 ClassSet evaluable, int bonferroni_m) {
  a.Validate();
  b.Validate();
  if (a.records.empty()) throw ValidationError("compare: empty prediction dumps");
  if (a.size() != b.size()) {
    throw ValidationError("compare: dumps have different frame counts (" +
                          std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
  }
  if (bonferroni_m < static_cast<int>(evaluable.count())) {
    throw ValidationError("compare: Bonferroni m is smaller than the number of per-class tests");
  }
  std::map<std::string_view, const PredictionRecord*> by_id;
  for (const auto& r : b.records) by_id.emplace(r.frame_id, &r);

  const std::size_t n = a.size();
  std::vector<const PredictionRecord*> paired(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ra = a.records[i];
    auto it = by_id.find(ra.frame_id);
    if (it == by_id.end()) {
      throw ValidationError("compare: frame '" + ra.frame_id + "' missing from the second dump");
    }
    if (it->second->true_label != ra.true_label) {
      throw ValidationError("compare: frame '" + ra.frame_id + "' has different labels");
    }
    paired[i] = it->second;
  }

  CompareReport report;
  report.n_frames = n;
  report.bonferroni_m = bonferroni_m;

  std::vector<std::uint8_t> correct_a(n), correct_b(n);
  for (std::size_t i = 0; i < n; ++i) {
    correct_a[i] = Argmax(a.records[i].scores) == a.records[i].true_label;
    correct_b[i] = Argmax(paired[i]->scores) == paired[i]->true_label;
    report.accuracy_a += correct_a[i];
    report.accuracy_b += correct_b[i];
  }
  report.accuracy_a /= static_cast<double>(n);
  report.accuracy_b /= static_cast<double>(n);
  report.mcnemar = McNemarFromCorrectness(correct_a, correct_b);

  double sum_a = 0.0, sum_b = 0.0;
  for (int c = 0; c < kNumClasses; ++c) {
    if (!evaluable.test(static_cast<std::size_t>(c))) continue;
    std::vector<double> sa(n), sb(n);
    std::vector<std::uint8_t> labels(n);
    std::int64_t n_pos = 0;
    for (std::size_t i = 0; i < n; ++i) {
      sa[i] = a.records[i].scores[c];
      sb[i] = paired[i]->scores[c];
      labels[i] = a.records[i].true_label == c;
      n_pos += labels[i];
    }
    if (n_pos == 0 || n_pos == static_cast<std::int64_t>(n)) {
      report.skipped_classes.push_back(c);
      continue;
    }
    ClassComparison cc{c, n_pos, DelongPaired(sa, sb, labels, bonferroni_m)};
    sum_a += cc.test.auc_a;
    sum_b += cc.test.auc_b;
    report.per_class.push_back(cc);
  }
  if (!report.per_class.empty()) {
    report.macro_auc_a = sum_a / static_cast<double>(report.per_class.size());
    report.macro_auc_b = sum_b / static_cast<double>(report.per_class.size());
  }
  return report;
}

nlohmann::json CompareToJson(const CompareReport& report) {
  nlohmann::json j;
  j["n_frames"] = report.n_frames;
  j["bonferroni_m"] = report.bonferroni_m;
  j["per_class"] = nlohmann::json::array();
  for (const auto& cc : report.per_class) {
    const auto& t = cc.test;
    j["per_class"].push_back({{"class", std::string(ClassName(cc.class_index))},
                              {"n_pos", cc.n_pos},
                              {"auc_a", t.auc_a},
                              {"auc_b", t.auc_b},
                              {"delta", t.delta},
                              {"variance", t.variance},
                              {"z", std::isfinite(t.z) ? nlohmann::json(t.z) : nlohmann::json(nullptr)},
                              {"p_two_sided", t.p_two_sided},
                              {"p_bonferroni", t.p_bonferroni},
                              {"degenerate", t.degenerate}});
  }
  j["skipped_classes"] = nlohmann::json::array();
  for (int c : report.skipped_classes) j["skipped_classes"].push_back(std::string(ClassName(c)));
  j["mcnemar"] = {{"b_a_wrong_b_right", report.mcnemar.b},
                  {"c_a_right_b_wrong", report.mcnemar.c},
                  {"net", report.mcnemar.net()},
                  {"chi2", report.mcnemar.chi2},
                  {"p", report.mcnemar.p}};
  j["accuracy"] = {{"a", report.accuracy_a}, {"b", report.accuracy_b}};
  if (report.macro_auc_a) j["macro_auc"] = {{"a", *report.macro_auc_a}, {"b", *report.macro_auc_b}};
  return j;
}

std::string CompareToMarkdown(const CompareReport& report) {
  std::string md = "| Class | n_pos | AUC A | AUC B | Δ (B - A) | z | p | p_Bonf |\n";
  md += "|---|---|---|---|---|---|---|---|\n";
  for (const auto& cc : report.per_class) {
    const auto& t = cc.test;
    md += "| " + std::string(ClassName(cc.class_index)) + " | " + std::to_string(cc.n_pos) +
          " | " + Sig6(t.auc_a) + " | " + Sig6(t.auc_b) + " | " + Sig6(t.delta) + " | " +
          Sig6(t.z) + " | " + Sig6(t.p_two_sided) + " | " + Sig6(t.p_bonferroni) +
          (t.degenerate ? " (degenerate)" : "") + " |\n";
  }
  if (report.macro_auc_a) {
    md += "\nMacro-AUC: A " + Sig6(*report.macro_auc_a) + ", B " + Sig6(*report.macro_auc_b) +
          "\n";
  }
  const auto& m = report.mcnemar;
  md += "\nMcNemar (argmax): b = " + std::to_string(m.b) + " (A wrong, B right), c = " +
        std::to_string(m.c) + " (A right, B wrong), net " + (m.net() >= 0 ? "+" : "") +
        std::to_string(m.net()) + ", chi2 = " + Sig6(m.chi2) + ", p = " + Sig6(m.p) + "\n";
  md += "Accuracy: A " + Sig6(report.accuracy_a) + ", B " + Sig6(report.accuracy_b) + "\n";
  return md;
}

std::string CompareToCsv(const CompareReport& report) {
  std::string csv = "class,n_pos,auc_a,auc_b,delta,variance,z,p_two_sided,p_bonferroni\n";
  for (const auto& cc : report.per_class) {
    const auto& t = cc.test;
    csv += CsvEscape(ClassName(cc.class_index)) + "," + std::to_string(cc.n_pos) + "," +
           Sig6(t.auc_a) + "," + Sig6(t.auc_b) + "," + Sig6(t.delta) + "," + Sig6(t.variance) +
           "," + Sig6(t.z) + "," + Sig6(t.p_two_sided) + "," + Sig6(t.p_bonferroni) + "\n";
  }
  return csv;
}

}  // namespace hemoprior

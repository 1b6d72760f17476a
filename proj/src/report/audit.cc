#include "hemoprior/report/audit.h"

#include <algorithm>
#include <map>
#include <optional>

#include "hemoprior/errors.h"
#include "hemoprior/report/format.h"

namespace hemoprior {

std::string_view DirectionMarker(double delta) {
  if (delta > 0.0) return "↑";
  if (delta < 0.0) return "↓";
  return "=";
}

AuditTable AuditBestVsLast(std::span<const AuditEntry> entries) {
  struct Pair {
    std::optional<AuditMetrics> best, last;
  };
  std::vector<std::string> order;
  std::map<std::string, Pair> pairs;
  for (const auto& e : entries) {
    auto [it, inserted] = pairs.try_emplace(e.arm);
    if (inserted) order.push_back(e.arm);
    auto& slot = e.tag == CheckpointTag::kBest ? it->second.best : it->second.last;
    if (slot) {
      throw ValidationError("arm '" + e.arm + "' has more than one " +
                            (e.tag == CheckpointTag::kBest ? "best" : "last") + " entry");
    }
    slot = e.metrics;
  }
  if (order.empty()) throw ValidationError("audit needs at least one arm");
  AuditTable table;
  for (const auto& arm : order) {
    const auto& p = pairs.at(arm);
    if (!p.best || !p.last) {
      throw ValidationError("arm '" + arm + "' is unpaired (missing " +
                            (p.best ? "last" : "best") + " checkpoint)");
    }
    AuditRow row{arm, *p.best, *p.last, {}};
    for (std::size_t k = 0; k < row.delta.size(); ++k) {
      row.delta[k] = row.last[k] - row.best[k];
      if (row.delta[k] > 0.0) ++table.last_beats_best[k];
    }
    table.rows.push_back(std::move(row));
  }
  table.recommendation =
      "macro-AUC headline uses best_model.pt; accuracy / weighted-F1 / macro-F1-eval "
      "headline uses last.pt";
  return table;
}

namespace {

AuditMetrics MetricsFrom(const nlohmann::json& obj, std::string_view arm) {
  AuditMetrics m{};
  for (std::size_t k = 0; k < kAuditMetricNames.size(); ++k) {
    const std::string key(kAuditMetricNames[k]);
    if (!obj.contains(key) || !obj.at(key).is_number()) {
      throw ValidationError("audit entry for arm '" + std::string(arm) + "' lacks numeric '" +
                            key + "'");
    }
    m[k] = obj.at(key).get<double>();
  }
  return m;
}

}  // namespace

std::vector<AuditEntry> AuditEntriesFromJson(const nlohmann::json& j, CheckpointTag tag,
                                             std::string_view fallback_arm) {
  std::vector<AuditEntry> out;
  if (j.contains("arms")) {
    const auto& arms = j.at("arms");
    if (arms.is_array()) {
      for (const auto& a : arms) {
        if (!a.contains("arm")) throw ValidationError("audit arm entry without 'arm' name");
        const auto name = a.at("arm").get<std::string>();
        out.push_back({name, tag, MetricsFrom(a, name)});
      }
    } else {
      for (const auto& [name, a] : arms.items()) out.push_back({name, tag, MetricsFrom(a, name)});
    }
    return out;
  }
  if (j.contains("metrics")) {
    std::string name(fallback_arm);
    if (j.contains("run") && j.at("run").contains("arm")) {
      name = j.at("run").at("arm").get<std::string>();
    }
    out.push_back({name, tag, MetricsFrom(j.at("metrics"), name)});
    return out;
  }
  throw ValidationError("audit input has neither 'arms' nor 'metrics'");
}

nlohmann::json AuditToJson(const AuditTable& table) {
  nlohmann::json j;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json r;
    r["arm"] = row.arm;
    for (std::size_t k = 0; k < kAuditMetricNames.size(); ++k) {
      r[std::string(kAuditMetricNames[k])] = {{"best", row.best[k]},
                                              {"last", row.last[k]},
                                              {"delta", row.delta[k]},
                                              {"direction", DirectionMarker(row.delta[k])}};
    }
    j["rows"].push_back(std::move(r));
  }
  for (std::size_t k = 0; k < kAuditMetricNames.size(); ++k) {
    j["last_beats_best"][std::string(kAuditMetricNames[k])] = table.last_beats_best[k];
  }
  j["n_arms"] = table.rows.size();
  j["recommendation"] = table.recommendation;
  return j;
}

std::string AuditToMarkdown(const AuditTable& table) {
  std::string md = "| Arm | Accuracy | Weighted-F1 | Macro-F1 (eval) | Macro-AUC (eval) |\n";
  md += "|---|---|---|---|---|\n";
  for (const auto& row : table.rows) {
    md += "| " + row.arm;
    for (std::size_t k = 0; k < kAuditMetricNames.size(); ++k) {
      md += " | " + Fixed(row.best[k], 3) + " → " + Fixed(row.last[k], 3) + " (" +
            Fixed(row.delta[k], 3, true) + " " + std::string(DirectionMarker(row.delta[k])) + ")";
    }
    md += " |\n";
  }
  md += "\nlast beats best:";
  for (std::size_t k = 0; k < kAuditMetricNames.size(); ++k) {
    md += std::string(k ? "," : "") + " " + std::string(kAuditMetricNames[k]) + " " +
          std::to_string(table.last_beats_best[k]) + "/" + std::to_string(table.rows.size());
  }
  md += "\n\nRecommendation: " + table.recommendation + "\n";
  return md;
}

std::string AuditToCsv(const AuditTable& table) {
  std::string csv = "arm,metric,best,last,delta,direction\n";
  for (const auto& row : table.rows) {
    for (std::size_t k = 0; k < kAuditMetricNames.size(); ++k) {
      csv += CsvEscape(row.arm) + "," + std::string(kAuditMetricNames[k]) + "," +
             Sig6(row.best[k]) + "," + Sig6(row.last[k]) + "," + Sig6(row.delta[k]) + "," +
             std::string(DirectionMarker(row.delta[k])) + "\n";
    }
  }
  return csv;
}

}  // namespace hemoprior

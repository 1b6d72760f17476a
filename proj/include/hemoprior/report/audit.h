#ifndef HEMOPRIOR_REPORT_AUDIT_H_
#define HEMOPRIOR_REPORT_AUDIT_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hemoprior {

enum class CheckpointTag { kBest, kLast };

inline constexpr std::array<std::string_view, 4> kAuditMetricNames = {
    "accuracy", "weighted_f1", "macro_f1_evaluable", "macro_auc_evaluable"};

// Indexed like kAuditMetricNames.
using AuditMetrics = std::array<double, 4>;

struct AuditEntry {
  std::string arm;
  CheckpointTag tag = CheckpointTag::kBest;
  AuditMetrics metrics{};
};

struct AuditRow {
  std::string arm;
  AuditMetrics best{};
  AuditMetrics last{};
  AuditMetrics delta{};  // last - best
};

struct AuditTable {
  std::vector<AuditRow> rows;  // first-appearance order of arms
  std::array<int, 4> last_beats_best{};
  std::string recommendation;
};

// "↑" for a positive delta, "↓" for negative, "=" for zero.
std::string_view DirectionMarker(double delta);

// Pairs best/last entries per arm. Throws ValidationError for an arm missing
// either tag or carrying one twice.
AuditTable AuditBestVsLast(std::span<const AuditEntry> entries);

// Reads either {"arms": [{"arm": name, <metrics>}, ...]}, the same keyed by
// arm name, or a single eval report (arm taken from run.arm, else
// `fallback_arm`).
std::vector<AuditEntry> AuditEntriesFromJson(const nlohmann::json& j, CheckpointTag tag,
                                             std::string_view fallback_arm);

nlohmann::json AuditToJson(const AuditTable& table);
std::string AuditToMarkdown(const AuditTable& table);
std::string AuditToCsv(const AuditTable& table);

}  // namespace hemoprior

#endif  // HEMOPRIOR_REPORT_AUDIT_H_

#ifndef HEMOPRIOR_IO_PREDICTIONS_H_
#define HEMOPRIOR_IO_PREDICTIONS_H_

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "hemoprior/io/classes.h"

namespace hemoprior {

enum class ScoreKind { kLogits, kProbabilities };
enum class DumpFormat { kCsv, kJsonl };

ScoreKind ParseScoreKind(std::string_view s);
std::string_view ToString(ScoreKind kind);
DumpFormat ParseDumpFormat(std::string_view s);
// .csv -> kCsv, .jsonl/.json -> kJsonl.
DumpFormat FormatFromPath(const std::filesystem::path& path);

using ScoreVector = std::array<double, kNumClasses>;

struct PredictionRecord {
  std::string frame_id;
  std::string video_id;
  int true_label = 0;
  ScoreVector scores{};

  bool operator==(const PredictionRecord&) const = default;
};

// Per-frame ground truth plus a 14-class score vector from an external model.
struct PredictionSet {
  std::vector<PredictionRecord> records;
  ScoreKind score_kind = ScoreKind::kLogits;

  std::size_t size() const { return records.size(); }
  bool operator==(const PredictionSet&) const = default;

  // Throws ValidationError listing every offending row.
  void Validate() const;
};

// Softmax of logits; probabilities are returned unchanged.
ScoreVector Probabilities(const ScoreVector& scores, ScoreKind kind);
// Lowest index wins ties.
int Argmax(const ScoreVector& scores);

PredictionSet ParsePredictions(std::string_view text, DumpFormat format, ScoreKind kind);
std::string SerializePredictions(const PredictionSet& set, DumpFormat format);

PredictionSet LoadPredictions(const std::filesystem::path& path, DumpFormat format,
                              ScoreKind kind);
void WritePredictions(const std::filesystem::path& path, const PredictionSet& set,
                      DumpFormat format);

}  // namespace hemoprior

#endif  // HEMOPRIOR_IO_PREDICTIONS_H_

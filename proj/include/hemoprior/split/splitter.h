#ifndef HEMOPRIOR_SPLIT_SPLITTER_H_
#define HEMOPRIOR_SPLIT_SPLITTER_H_

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hemoprior/io/classes.h"
#include "hemoprior/split/manifest.h"

namespace hemoprior {

enum class Split { kTrain = 0, kVal = 1, kTest = 2 };
inline constexpr std::array<Split, 3> kAllSplits = {Split::kTrain, Split::kVal, Split::kTest};

std::string_view ToString(Split s);
Split ParseSplit(std::string_view s);

struct SplitRatios {
  double train = 0.70;
  double val = 0.15;
  double test = 0.15;

  double operator[](Split s) const;
  void Validate() const;
};

// Parses "0.70,0.15,0.15".
SplitRatios ParseRatios(std::string_view text);

struct SplitAssignment {
  std::map<std::string, Split> assignment;
  // coverage[class][split] = number of videos in that split carrying the class.
  std::array<std::array<int, 3>, kNumClasses> coverage{};
  std::array<std::size_t, 3> frame_counts{};
  std::array<std::size_t, 3> video_counts{};

  // Recomputes coverage and counts from `assignment`.
  void Tally(const DatasetManifest& manifest);
};

// Seedless, deterministic three-pass assignment:
//   pass 1 puts one video of every class in train,
//   pass 2 one video of every class with >= 2 source videos in test,
//   pass 3 one video of every class with >= 3 source videos in val.
// Classes are visited rarest-first; each takes its unassigned video with the
// most frames of that class (ties: more total frames, then smaller id).
// Constraint gaps left by multi-class videos are closed by single-video
// moves that keep every satisfied constraint intact. Remaining videos go,
// largest first, to the split furthest below its target frame count.
SplitAssignment GreedyVideoSplit(const DatasetManifest& manifest, const SplitRatios& ratios = {});

struct ConstraintResult {
  std::string name;         // "1a", "1b", "1c"
  std::string description;
  bool passed = true;
  std::vector<int> offending_classes;
};

struct SplitReport {
  std::vector<ConstraintResult> constraints;
  ClassSet evaluable;       // classes with at least one test video
  ClassSet training_only;   // present in the manifest but absent from test
  std::array<int, kNumClasses> source_videos{};

  bool AllPassed() const;
};

// Throws ValidationError on unknown or missing video ids.
SplitReport ValidateSplit(const DatasetManifest& manifest, const SplitAssignment& assignment);

// SHA-256 over "video_id:split\n" lines sorted by video id, hex encoded.
std::string SplitFingerprint(const SplitAssignment& assignment);
std::string Sha256Hex(std::string_view bytes);

nlohmann::json AssignmentToJson(const SplitAssignment& assignment);
SplitAssignment AssignmentFromJson(const nlohmann::json& j, const DatasetManifest& manifest);
nlohmann::json ReportToJson(const SplitReport& report);

enum class MaterializeMode { kCopy, kHardLink };

// Builds out_dir/{train,val,test}/<class name>/ with all 14 class folders in
// every split (empty ones included) and copies or links each frame from
// source_dir/<class name>/<frame_id>. Re-running overwrites in place.
void MaterializeSplit(const DatasetManifest& manifest, const SplitAssignment& assignment,
                      const std::filesystem::path& source_dir,
                      const std::filesystem::path& out_dir,
                      MaterializeMode mode = MaterializeMode::kCopy);

}  // namespace hemoprior

#endif  // HEMOPRIOR_SPLIT_SPLITTER_H_

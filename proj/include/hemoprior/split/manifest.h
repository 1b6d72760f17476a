#ifndef HEMOPRIOR_SPLIT_MANIFEST_H_
#define HEMOPRIOR_SPLIT_MANIFEST_H_

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "hemoprior/io/classes.h"

namespace hemoprior {

struct ManifestFrame {
  std::string frame_id;  // file name inside the class folder
  int class_index = 0;
  bool operator==(const ManifestFrame&) const = default;
};

struct ManifestVideo {
  std::string video_id;
  std::vector<ManifestFrame> frames;

  std::array<int, kNumClasses> ClassCounts() const;
  bool operator==(const ManifestVideo&) const = default;
};

// Video -> class -> frame inventory.
struct DatasetManifest {
  std::vector<ManifestVideo> videos;

  std::size_t TotalFrames() const;
  // Sorts videos and frames by id; throws on duplicate video or frame ids
  // and on out-of-range class indices.
  void Canonicalize();
  bool operator==(const DatasetManifest&) const = default;
};

// Scans source_dir/<class name>/<frame file>. The video id of a frame is its
// file stem up to the last `delimiter` (Kvasir-Capsule names frames
// "<video>_<frame>.jpg"); stems without the delimiter are their own video.
DatasetManifest ScanSourceTree(const std::filesystem::path& source_dir, char delimiter = '_');

nlohmann::json ManifestToJson(const DatasetManifest& manifest);
DatasetManifest ManifestFromJson(const nlohmann::json& j);

}  // namespace hemoprior

#endif  // HEMOPRIOR_SPLIT_MANIFEST_H_

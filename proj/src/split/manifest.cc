#include "hemoprior/split/manifest.h"

#include <algorithm>
#include <map>
#include <set>

#include "hemoprior/errors.h"
#include "hemoprior/io/image.h"

namespace hemoprior {

std::array<int, kNumClasses> ManifestVideo::ClassCounts() const {
  std::array<int, kNumClasses> counts{};
  for (const auto& f : frames) ++counts[static_cast<std::size_t>(f.class_index)];
  return counts;
}

std::size_t DatasetManifest::TotalFrames() const {
  std::size_t n = 0;
  for (const auto& v : videos) n += v.frames.size();
  return n;
}

void DatasetManifest::Canonicalize() {
  std::sort(videos.begin(), videos.end(),
            [](const auto& a, const auto& b) { return a.video_id < b.video_id; });
  std::set<std::string> frame_ids;
  for (std::size_t i = 0; i < videos.size(); ++i) {
    auto& v = videos[i];
    if (i > 0 && videos[i - 1].video_id == v.video_id) {
      throw ValidationError("duplicate video_id in manifest: " + v.video_id);
    }
    std::sort(v.frames.begin(), v.frames.end(),
              [](const auto& a, const auto& b) { return a.frame_id < b.frame_id; });
    for (const auto& f : v.frames) {
      if (f.class_index < 0 || f.class_index >= kNumClasses) {
        throw ValidationError("frame " + f.frame_id + " has invalid class index");
      }
      if (!frame_ids.insert(f.frame_id).second) {
        throw ValidationError("frame " + f.frame_id + " appears more than once");
      }
    }
  }
}

DatasetManifest ScanSourceTree(const std::filesystem::path& source_dir, char delimiter) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(source_dir)) {
    throw ValidationError("source directory does not exist: " + source_dir.string());
  }
  std::map<std::string, ManifestVideo> by_video;
  for (const auto& entry : fs::directory_iterator(source_dir)) {
    if (!entry.is_directory()) continue;
    const std::string class_name = entry.path().filename().string();
    auto idx = ClassIndex(class_name);
    if (!idx) throw ValidationError("unknown class folder: " + entry.path().string());
    for (const auto& file : fs::directory_iterator(entry.path())) {
      if (!file.is_regular_file() || !IsImagePath(file.path())) continue;
      const std::string name = file.path().filename().string();
      const std::string stem = file.path().stem().string();
      const auto cut = stem.rfind(delimiter);
      const std::string video_id = cut == std::string::npos ? stem : stem.substr(0, cut);
      auto& video = by_video[video_id];
      video.video_id = video_id;
      video.frames.push_back({name, *idx});
    }
  }
  DatasetManifest manifest;
  for (auto& [id, video] : by_video) manifest.videos.push_back(std::move(video));
  manifest.Canonicalize();
  return manifest;
}

nlohmann::json ManifestToJson(const DatasetManifest& manifest) {
  nlohmann::json videos = nlohmann::json::array();
  for (const auto& v : manifest.videos) {
    nlohmann::json frames = nlohmann::json::array();
    for (const auto& f : v.frames) {
      frames.push_back({{"frame_id", f.frame_id},
                        {"class_index", f.class_index},
                        {"class_name", std::string(ClassName(f.class_index))}});
    }
    videos.push_back({{"video_id", v.video_id}, {"frames", std::move(frames)}});
  }
  return {{"videos", std::move(videos)}, {"total_frames", manifest.TotalFrames()}};
}

DatasetManifest ManifestFromJson(const nlohmann::json& j) {
  DatasetManifest manifest;
  try {
    for (const auto& v : j.at("videos")) {
      ManifestVideo video;
      video.video_id = v.at("video_id").get<std::string>();
      for (const auto& f : v.at("frames")) {
        ManifestFrame frame;
        frame.frame_id = f.at("frame_id").get<std::string>();
        if (f.contains("class_index")) {
          frame.class_index = f.at("class_index").get<int>();
        } else {
          auto idx = ClassIndex(f.at("class_name").get<std::string>());
          if (!idx) throw ValidationError("unknown class in manifest frame " + frame.frame_id);
          frame.class_index = *idx;
        }
        video.frames.push_back(std::move(frame));
      }
      manifest.videos.push_back(std::move(video));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed manifest JSON: ") + e.what());
  }
  manifest.Canonicalize();
  return manifest;
}

}  // namespace hemoprior

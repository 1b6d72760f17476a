#include <sstream>

#include "hemoprior/errors.h"
#include "hemoprior/split/splitter.h"

namespace hemoprior {

void MaterializeSplit(const DatasetManifest& manifest, const SplitAssignment& assignment,
                      const std::filesystem::path& source_dir,
                      const std::filesystem::path& out_dir, MaterializeMode mode) {
  namespace fs = std::filesystem;
  ValidateSplit(manifest, assignment);

  std::vector<std::string> missing;
  for (const auto& v : manifest.videos) {
    for (const auto& f : v.frames) {
      if (!fs::is_regular_file(source_dir / std::string(ClassName(f.class_index)) / f.frame_id)) {
        missing.push_back(f.frame_id);
      }
    }
  }
  if (!missing.empty()) {
    std::ostringstream os;
    os << "missing source frame(s) under " << source_dir.string() << ":";
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) os << " " << missing[i];
    if (missing.size() > 20) os << " ... (" << missing.size() << " total)";
    throw ValidationError(os.str());
  }

  for (Split s : kAllSplits) {
    for (auto name : kClassNames) {
      fs::create_directories(out_dir / std::string(ToString(s)) / std::string(name));
    }
  }
  for (const auto& v : manifest.videos) {
    const Split s = assignment.assignment.at(v.video_id);
    for (const auto& f : v.frames) {
      const std::string cls(ClassName(f.class_index));
      const fs::path src = source_dir / cls / f.frame_id;
      const fs::path dst = out_dir / std::string(ToString(s)) / cls / f.frame_id;
      if (mode == MaterializeMode::kHardLink) {
        if (fs::exists(dst)) fs::remove(dst);
        fs::create_hard_link(src, dst);
      } else {
        fs::copy_file(src, dst, fs::copy_options::overwrite_existing);
      }
    }
  }
}

}  // namespace hemoprior

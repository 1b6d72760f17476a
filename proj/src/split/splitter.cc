#include "hemoprior/split/splitter.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "hemoprior/errors.h"

namespace hemoprior {

std::string_view ToString(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "?";
}

Split ParseSplit(std::string_view s) {
  if (s == "train") return Split::kTrain;
  if (s == "val") return Split::kVal;
  if (s == "test") return Split::kTest;
  throw ValidationError("unknown split name: '" + std::string(s) + "'");
}

double SplitRatios::operator[](Split s) const {
  switch (s) {
    case Split::kTrain: return train;
    case Split::kVal: return val;
    case Split::kTest: return test;
  }
  return 0.0;
}

void SplitRatios::Validate() const {
  if (!(train > 0.0 && val >= 0.0 && test >= 0.0)) {
    throw ValidationError("split ratios must be non-negative with a positive train share");
  }
  if (std::abs(train + val + test - 1.0) > 1e-6) {
    throw ValidationError("split ratios must sum to 1");
  }
}

SplitRatios ParseRatios(std::string_view text) {
  std::array<double, 3> parts{};
  for (int i = 0; i < 3; ++i) {
    const auto comma = text.find(',');
    if ((i < 2) == (comma == std::string_view::npos)) {
      throw ValidationError("ratios must be three comma-separated numbers");
    }
    std::string_view item = text.substr(0, comma);
    auto res = std::from_chars(item.data(), item.data() + item.size(), parts[i]);
    if (res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw ValidationError("bad ratio value: '" + std::string(item) + "'");
    }
    if (comma != std::string_view::npos) text.remove_prefix(comma + 1);
  }
  SplitRatios r{parts[0], parts[1], parts[2]};
  r.Validate();
  return r;
}

void SplitAssignment::Tally(const DatasetManifest& manifest) {
  coverage = {};
  frame_counts = {};
  video_counts = {};
  for (const auto& v : manifest.videos) {
    auto it = assignment.find(v.video_id);
    if (it == assignment.end()) continue;
    const auto s = static_cast<std::size_t>(it->second);
    frame_counts[s] += v.frames.size();
    ++video_counts[s];
    const auto counts = v.ClassCounts();
    for (int c = 0; c < kNumClasses; ++c) {
      if (counts[c] > 0) ++coverage[c][s];
    }
  }
}

namespace {

// Minimum number of source videos for a class before `s` must cover it.
int RequiredSourceVideos(Split s) {
  switch (s) {
    case Split::kTrain: return 1;
    case Split::kTest: return 2;
    case Split::kVal: return 3;
  }
  return 1;
}

class GreedyState {
 public:
  explicit GreedyState(const DatasetManifest& manifest) : manifest_(manifest) {
    const std::size_t n = manifest.videos.size();
    assigned_.assign(n, std::nullopt);
    class_counts_.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
      class_counts_[v] = manifest.videos[v].ClassCounts();
      for (int c = 0; c < kNumClasses; ++c) {
        if (class_counts_[v][c] > 0) class_videos_[c].push_back(v);
      }
    }
  }

  int SourceVideos(int c) const { return static_cast<int>(class_videos_[c].size()); }

  bool Covered(int c, Split s) const { return CoveredIn(assigned_, c, s); }

  bool CoveredIn(const std::vector<std::optional<Split>>& assignment, int c, Split s) const {
    return std::any_of(class_videos_[c].begin(), class_videos_[c].end(),
                       [&](std::size_t v) { return assignment[v] == s; });
  }

  bool Required(int c, Split s) const {
    return SourceVideos(c) >= RequiredSourceVideos(s);
  }

  bool AllRequiredCovered() const {
    for (int c = 0; c < kNumClasses; ++c)
      for (Split s : kAllSplits)
        if (Required(c, s) && !Covered(c, s)) return false;
    return true;
  }

  // Classes that need coverage in `s`, rarest first.
  std::vector<int> PassOrder(Split s) const {
    std::vector<int> order;
    for (int c = 0; c < kNumClasses; ++c)
      if (Required(c, s)) order.push_back(c);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return SourceVideos(a) < SourceVideos(b); });
    return order;
  }

  // True when video a should be preferred over b for covering class c.
  bool Better(int c, std::size_t a, std::size_t b) const {
    if (class_counts_[a][c] != class_counts_[b][c]) {
      return class_counts_[a][c] > class_counts_[b][c];
    }
    const auto fa = manifest_.videos[a].frames.size();
    const auto fb = manifest_.videos[b].frames.size();
    if (fa != fb) return fa > fb;
    return manifest_.videos[a].video_id < manifest_.videos[b].video_id;
  }

  void RunPass(Split s) {
    for (int c : PassOrder(s)) {
      if (Covered(c, s)) continue;
      std::optional<std::size_t> best;
      for (std::size_t v : class_videos_[c]) {
        if (assigned_[v]) continue;
        if (!best || Better(c, v, *best)) best = v;
      }
      if (best) assigned_[*best] = s;
    }
  }

  // Set of (class, split) constraints currently satisfied.
  std::vector<std::pair<int, Split>> Satisfied() const {
    std::vector<std::pair<int, Split>> out;
    for (int c = 0; c < kNumClasses; ++c)
      for (Split s : kAllSplits)
        if (Required(c, s) && Covered(c, s)) out.emplace_back(c, s);
    return out;
  }

  // Moves assigned videos one at a time to close remaining coverage gaps,
  // never breaking a constraint that already holds.
  void Repair() {
    bool progress = true;
    while (progress && !AllRequiredCovered()) {
      progress = false;
      for (Split s : {Split::kTrain, Split::kTest, Split::kVal}) {
        for (int c : PassOrder(s)) {
          if (Covered(c, s)) continue;
          std::vector<std::size_t> candidates = class_videos_[c];
          std::sort(candidates.begin(), candidates.end(),
                    [&](std::size_t a, std::size_t b) { return Better(c, a, b); });
          for (std::size_t v : candidates) {
            const auto previous = assigned_[v];
            if (previous == s) continue;
            const auto before = Satisfied();
            assigned_[v] = s;
            const bool keeps = std::all_of(before.begin(), before.end(), [&](const auto& cs) {
              return Covered(cs.first, cs.second);
            });
            if (keeps) {
              progress = true;
              break;
            }
            assigned_[v] = previous;
          }
        }
      }
    }
  }

  // Exhaustive fallback for manifests where many videos share classes and
  // single moves cannot escape the greedy result. Branches over the witness
  // video of the most constrained open (class, split) pair. Returns false if
  // the constraints are unsatisfiable or the node budget runs out.
  bool Search() {
    std::vector<std::optional<Split>> fixed(assigned_.size());
    long budget = 2'000'000;
    if (!Dfs(fixed, budget)) return false;
    assigned_ = std::move(fixed);
    return true;
  }

  void AssignRemainder(const SplitRatios& ratios) {
    std::array<double, 3> frames{};
    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < assigned_.size(); ++v) {
      if (assigned_[v]) {
        frames[static_cast<std::size_t>(*assigned_[v])] +=
            static_cast<double>(manifest_.videos[v].frames.size());
      } else {
        rest.push_back(v);
      }
    }
    std::sort(rest.begin(), rest.end(), [&](std::size_t a, std::size_t b) {
      const auto fa = manifest_.videos[a].frames.size();
      const auto fb = manifest_.videos[b].frames.size();
      if (fa != fb) return fa > fb;
      return manifest_.videos[a].video_id < manifest_.videos[b].video_id;
    });
    const double total = static_cast<double>(manifest_.TotalFrames());
    for (std::size_t v : rest) {
      Split best = Split::kTrain;
      double best_deficit = -std::numeric_limits<double>::infinity();
      for (Split s : kAllSplits) {
        const double deficit = ratios[s] * total - frames[static_cast<std::size_t>(s)];
        if (deficit > best_deficit) {
          best_deficit = deficit;
          best = s;
        }
      }
      assigned_[v] = best;
      frames[static_cast<std::size_t>(best)] +=
          static_cast<double>(manifest_.videos[v].frames.size());
    }
  }

  bool Dfs(std::vector<std::optional<Split>>& fixed, long& budget) const {
    if (--budget < 0) return false;
    int open_class = -1;
    Split open_split = Split::kTrain;
    std::size_t fewest = std::numeric_limits<std::size_t>::max();
    for (int c = 0; c < kNumClasses; ++c) {
      for (Split s : kAllSplits) {
        if (!Required(c, s) || CoveredIn(fixed, c, s)) continue;
        const auto free = static_cast<std::size_t>(std::count_if(
            class_videos_[c].begin(), class_videos_[c].end(), [&](std::size_t v) { return !fixed[v]; }));
        if (free == 0) return false;
        if (free < fewest) {
          fewest = free;
          open_class = c;
          open_split = s;
        }
      }
    }
    if (open_class < 0) return true;
    std::vector<std::size_t> candidates;
    for (std::size_t v : class_videos_[open_class])
      if (!fixed[v]) candidates.push_back(v);
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) { return Better(open_class, a, b); });
    for (std::size_t v : candidates) {
      fixed[v] = open_split;
      if (Dfs(fixed, budget)) return true;
      fixed[v] = std::nullopt;
      if (budget < 0) return false;
    }
    return false;
  }

  SplitAssignment Result() const {
    SplitAssignment out;
    for (std::size_t v = 0; v < assigned_.size(); ++v) {
      out.assignment.emplace(manifest_.videos[v].video_id, *assigned_[v]);
    }
    out.Tally(manifest_);
    return out;
  }

 private:
  const DatasetManifest& manifest_;
  std::vector<std::optional<Split>> assigned_;
  std::vector<std::array<int, kNumClasses>> class_counts_;
  std::array<std::vector<std::size_t>, kNumClasses> class_videos_;
};

}  // namespace

SplitAssignment GreedyVideoSplit(const DatasetManifest& manifest, const SplitRatios& ratios) {
  ratios.Validate();
  if (manifest.videos.empty()) throw ValidationError("cannot split an empty manifest");
  DatasetManifest canonical = manifest;
  canonical.Canonicalize();
  GreedyState state(canonical);
  state.RunPass(Split::kTrain);
  state.RunPass(Split::kTest);
  state.RunPass(Split::kVal);
  state.Repair();
  if (!state.AllRequiredCovered()) state.Search();
  state.AssignRemainder(ratios);
  return state.Result();
}

bool SplitReport::AllPassed() const {
  return std::all_of(constraints.begin(), constraints.end(),
                     [](const auto& c) { return c.passed; });
}

SplitReport ValidateSplit(const DatasetManifest& manifest, const SplitAssignment& assignment) {
  std::map<std::string_view, const ManifestVideo*> videos;
  for (const auto& v : manifest.videos) videos.emplace(v.video_id, &v);
  for (const auto& [id, split] : assignment.assignment) {
    if (!videos.count(id)) throw ValidationError("assignment names unknown video_id: " + id);
  }
  for (const auto& v : manifest.videos) {
    if (!assignment.assignment.count(v.video_id)) {
      throw ValidationError("video not assigned to any split: " + v.video_id);
    }
  }
  SplitAssignment tallied = assignment;
  tallied.Tally(manifest);

  SplitReport report;
  for (const auto& v : manifest.videos) {
    const auto counts = v.ClassCounts();
    for (int c = 0; c < kNumClasses; ++c)
      if (counts[c] > 0) ++report.source_videos[c];
  }
  struct Rule {
    const char* name;
    const char* description;
    Split split;
  };
  const Rule rules[] = {
      {"1a", "every class has >= 1 train video", Split::kTrain},
      {"1b", "every class with >= 2 source videos has >= 1 test video", Split::kTest},
      {"1c", "every class with >= 3 source videos has >= 1 val video", Split::kVal},
  };
  for (const auto& rule : rules) {
    ConstraintResult result{rule.name, rule.description, true, {}};
    for (int c = 0; c < kNumClasses; ++c) {
      if (report.source_videos[c] >= RequiredSourceVideos(rule.split) &&
          tallied.coverage[c][static_cast<std::size_t>(rule.split)] == 0) {
        result.passed = false;
        result.offending_classes.push_back(c);
      }
    }
    report.constraints.push_back(std::move(result));
  }
  for (int c = 0; c < kNumClasses; ++c) {
    if (report.source_videos[c] == 0) continue;
    if (tallied.coverage[c][static_cast<std::size_t>(Split::kTest)] > 0) {
      report.evaluable.set(static_cast<std::size_t>(c));
    } else {
      report.training_only.set(static_cast<std::size_t>(c));
    }
  }
  return report;
}

nlohmann::json AssignmentToJson(const SplitAssignment& assignment) {
  nlohmann::json j;
  for (const auto& [id, split] : assignment.assignment) {
    j["assignment"][id] = std::string(ToString(split));
  }
  for (int c = 0; c < kNumClasses; ++c) {
    auto& row = j["coverage"][std::string(ClassName(c))];
    for (Split s : kAllSplits) {
      row[std::string(ToString(s))] = assignment.coverage[c][static_cast<std::size_t>(s)];
    }
  }
  for (Split s : kAllSplits) {
    j["frame_counts"][std::string(ToString(s))] = assignment.frame_counts[static_cast<std::size_t>(s)];
    j["video_counts"][std::string(ToString(s))] = assignment.video_counts[static_cast<std::size_t>(s)];
  }
  j["fingerprint"] = SplitFingerprint(assignment);
  return j;
}

SplitAssignment AssignmentFromJson(const nlohmann::json& j, const DatasetManifest& manifest) {
  SplitAssignment out;
  try {
    for (const auto& [id, split] : j.at("assignment").items()) {
      out.assignment.emplace(id, ParseSplit(split.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed assignment JSON: ") + e.what());
  }
  out.Tally(manifest);
  return out;
}

nlohmann::json ReportToJson(const SplitReport& report) {
  nlohmann::json j;
  j["all_passed"] = report.AllPassed();
  for (const auto& c : report.constraints) {
    nlohmann::json names = nlohmann::json::array();
    for (int idx : c.offending_classes) names.push_back(std::string(ClassName(idx)));
    j["constraints"][c.name] = {
        {"description", c.description}, {"passed", c.passed}, {"offending_classes", names}};
  }
  j["evaluable_classes"] = nlohmann::json::array();
  j["training_only_classes"] = nlohmann::json::array();
  for (int c = 0; c < kNumClasses; ++c) {
    if (report.evaluable.test(static_cast<std::size_t>(c))) {
      j["evaluable_classes"].push_back(std::string(ClassName(c)));
    }
    if (report.training_only.test(static_cast<std::size_t>(c))) {
      j["training_only_classes"].push_back(std::string(ClassName(c)));
    }
  }
  return j;
}

}  // namespace hemoprior

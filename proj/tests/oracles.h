// Independent reference implementations and fixture generators shared by
// the unit tests and the acceptance binary. Nothing here calls into the
// library's statistics code.
#ifndef HEMOPRIOR_TESTS_ORACLES_H_
#define HEMOPRIOR_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hemoprior/io/image.h"
#include "hemoprior/split/manifest.h"
#include "hemoprior/split/splitter.h"

namespace oracle {

// O(n^2) pair counting, ties worth one half.
inline double BruteAuc(const std::vector<double>& scores, const std::vector<std::uint8_t>& labels) {
  double wins = 0.0;
  std::int64_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      ++pairs;
      if (scores[i] > scores[j]) wins += 1.0;
      else if (scores[i] == scores[j]) wins += 0.5;
    }
  }
  return wins / static_cast<double>(pairs);
}

// Linear-interpolated percentile straight from the definition.
inline double BrutePercentile(std::vector<double> v, double p) {
  std::sort(v.begin(), v.end());
  const double rank = p / 100.0 * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = static_cast<std::size_t>(std::ceil(rank));
  return v[lo] + (rank - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

// Paired permutation test: under H0 the two scores of a frame are
// exchangeable, so each frame's (a, b) pair is swapped with probability 1/2.
inline double PermutationPairedAucP(const std::vector<double>& a, const std::vector<double>& b,
                                    const std::vector<std::uint8_t>& labels, int draws,
                                    std::uint64_t seed) {
  // Rank-based AUC via sorted negatives keeps each draw O(n log n).
  auto auc = [&](const std::vector<double>& s) {
    std::vector<double> neg;
    for (std::size_t i = 0; i < s.size(); ++i) if (!labels[i]) neg.push_back(s[i]);
    std::sort(neg.begin(), neg.end());
    double wins = 0.0, npos = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!labels[i]) continue;
      npos += 1.0;
      const auto lo = std::lower_bound(neg.begin(), neg.end(), s[i]);
      const auto hi = std::upper_bound(neg.begin(), neg.end(), s[i]);
      wins += static_cast<double>(lo - neg.begin()) + 0.5 * static_cast<double>(hi - lo);
    }
    return wins / (npos * static_cast<double>(neg.size()));
  };
  const double observed = std::abs(auc(b) - auc(a));
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> pa(a.size()), pb(b.size());
  int extreme = 0;
  for (int d = 0; d < draws; ++d) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      const bool swap = coin(rng);
      pa[i] = swap ? b[i] : a[i];
      pb[i] = swap ? a[i] : b[i];
    }
    if (std::abs(auc(pb) - auc(pa)) >= observed - 1e-12) ++extreme;
  }
  return static_cast<double>(extreme) / draws;
}

// Hanley & McNeil (1982) closed-form standard error of an AUC.
inline double HanleyMcNeilSe(double auc, double n_pos, double n_neg) {
  const double q1 = auc / (2.0 - auc);
  const double q2 = 2.0 * auc * auc / (1.0 + auc);
  const double var = (auc * (1.0 - auc) + (n_pos - 1.0) * (q1 - auc * auc) +
                      (n_neg - 1.0) * (q2 - auc * auc)) /
                     (n_pos * n_neg);
  return std::sqrt(var);
}

inline double SampleMean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

// Manifest with a planted feasible assignment. Each class draws 1, 2 or
// 3..5 source videos; a class with k videos takes one from train, one from
// test when k >= 2 and one from val when k >= 3, so the coverage constraints
// are always satisfiable. Videos may carry several classes.
struct PlantedManifest {
  hemoprior::DatasetManifest manifest;
  std::vector<int> videos_per_class;
};

inline PlantedManifest MakePlantedManifest(std::mt19937_64& rng) {
  using hemoprior::kNumClasses;
  std::uniform_int_distribution<int> n_videos_dist(12, 40);
  const int n_videos = n_videos_dist(rng);
  std::vector<int> hidden(static_cast<std::size_t>(n_videos));
  for (int v = 0; v < n_videos; ++v) hidden[static_cast<std::size_t>(v)] = v % 5 == 1 ? 1 : v % 5 == 3 ? 2 : 0;
  std::shuffle(hidden.begin(), hidden.end(), rng);
  std::vector<std::vector<int>> pool(3);
  for (int v = 0; v < n_videos; ++v) pool[static_cast<std::size_t>(hidden[static_cast<std::size_t>(v)])].push_back(v);

  PlantedManifest out;
  std::vector<std::vector<std::pair<int, int>>> frames(static_cast<std::size_t>(n_videos));
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> frames_dist(1, 30);
  for (int c = 0; c < kNumClasses; ++c) {
    const int draw = kind(rng);
    const int k = draw == 0 ? 1 : draw == 1 ? 2 : 3 + kind(rng);
    std::set<int> chosen;
    auto pick = [&](const std::vector<int>& from) {
      std::uniform_int_distribution<std::size_t> d(0, from.size() - 1);
      for (int tries = 0; tries < 50; ++tries) {
        if (chosen.insert(from[d(rng)]).second) return;
      }
    };
    pick(pool[0]);
    if (k >= 2) pick(pool[2]);
    if (k >= 3) pick(pool[1]);
    std::uniform_int_distribution<int> any(0, n_videos - 1);
    for (int guard = 0; static_cast<int>(chosen.size()) < k && guard < 200; ++guard) chosen.insert(any(rng));
    for (int v : chosen) frames[static_cast<std::size_t>(v)].push_back({c, frames_dist(rng)});
    out.videos_per_class.push_back(static_cast<int>(chosen.size()));
  }
  for (int v = 0; v < n_videos; ++v) {
    if (frames[static_cast<std::size_t>(v)].empty()) continue;
    hemoprior::ManifestVideo video;
    char id[32];
    std::snprintf(id, sizeof id, "vid%03d", v);
    video.video_id = id;
    int serial = 0;
    for (const auto& [c, n] : frames[static_cast<std::size_t>(v)]) {
      for (int f = 0; f < n; ++f) {
        char name[64];
        std::snprintf(name, sizeof name, "%s_%05d.jpg", id, serial++);
        video.frames.push_back({name, c});
      }
    }
    out.manifest.videos.push_back(std::move(video));
  }
  out.manifest.Canonicalize();
  return out;
}

// Independent restatement of the three coverage rules.
inline bool CoverageHolds(const hemoprior::DatasetManifest& m, const hemoprior::SplitAssignment& a) {
  using hemoprior::kNumClasses;
  std::vector<std::set<std::string>> videos(kNumClasses);
  std::vector<std::set<int>> where(kNumClasses);
  for (const auto& v : m.videos) {
    for (const auto& f : v.frames) {
      videos[static_cast<std::size_t>(f.class_index)].insert(v.video_id);
      where[static_cast<std::size_t>(f.class_index)].insert(static_cast<int>(a.assignment.at(v.video_id)));
    }
  }
  for (int c = 0; c < kNumClasses; ++c) {
    const auto n = videos[static_cast<std::size_t>(c)].size();
    const auto& w = where[static_cast<std::size_t>(c)];
    if (n >= 1 && !w.count(0)) return false;
    if (n >= 2 && !w.count(2)) return false;
    if (n >= 3 && !w.count(1)) return false;
  }
  return true;
}

// Frames for the zero-shot fixture. A red disc on a mucosa-like background
// versus a uniform gray frame, both with mild pixel noise.
// Radius is drawn as a fraction of the frame side.
inline hemoprior::RgbFrame RedDiscFrame(int size, std::mt19937_64& rng, double min_radius = 0.2,
                                        double max_radius = 0.35) {
  hemoprior::RgbFrame f(size, size);
  std::uniform_real_distribution<double> noise(-0.02, 0.02);
  std::uniform_real_distribution<double> radius_frac(min_radius, max_radius);
  const double r = radius_frac(rng) * size;
  const double c = (size - 1) / 2.0;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const bool in = std::hypot(x - c, y - c) <= r;
      const double rgb[3] = {in ? 0.85 : 0.75, in ? 0.08 : 0.55, in ? 0.08 : 0.45};
      for (int ch = 0; ch < 3; ++ch) f.at(x, y, ch) = std::clamp(rgb[ch] + noise(rng), 0.0, 1.0);
    }
  }
  return f;
}

inline hemoprior::RgbFrame GrayFrame(int size, std::mt19937_64& rng) {
  hemoprior::RgbFrame f(size, size);
  std::uniform_real_distribution<double> level(0.35, 0.65);
  std::uniform_real_distribution<double> noise(-0.02, 0.02);
  const double g = level(rng);
  for (double& v : f.data) v = std::clamp(g + noise(rng), 0.0, 1.0);
  return f;
}

}  // namespace oracle

#endif  // HEMOPRIOR_TESTS_ORACLES_H_

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "hemoprior/errors.h"
#include "hemoprior/split/manifest.h"
#include "hemoprior/split/splitter.h"
#include "oracles.h"

using namespace hemoprior;
namespace fs = std::filesystem;

namespace {

fs::path ScratchDir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("hemoprior_split_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void Touch(const fs::path& p, const std::string& body = "x") {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << body;
}

}  // namespace

TEST_CASE("SHA-256 matches an independent implementation") {
  // Reference digests produced with coreutils sha256sum.
  CHECK(Sha256Hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(Sha256Hex("v1:train\n") == "d2406492558a4b829b3b61b218299b8148472ffc37b05593f732c3373eea8e21");
  SplitAssignment a;
  a.assignment = {{"v2", Split::kTest}, {"v1", Split::kTrain}};
  CHECK(SplitFingerprint(a) == "068c097e233333045a447b29c92a155ff5d2e6441761ac5a27508d7e8e7f61fa");
}

TEST_CASE("ratios parse and validate") {
  const SplitRatios r = ParseRatios("0.70,0.15,0.15");
  CHECK(r.train == 0.70);
  CHECK(r[Split::kTest] == 0.15);
  CHECK_THROWS_AS(ParseRatios("0.7,0.2"), ValidationError);
  CHECK_THROWS_AS(ParseRatios("0.7,0.2,0.2"), ValidationError);
  CHECK_THROWS_AS(ParseRatios("a,b,c"), ValidationError);
}

TEST_CASE("source tree scan groups frames by video prefix") {
  const fs::path src = ScratchDir("scan");
  Touch(src / "Ulcer" / "abc_123_0001.jpg");
  Touch(src / "Ulcer" / "abc_123_0002.jpg");
  Touch(src / "Polyp" / "abc_123_0003.jpg");
  Touch(src / "Polyp" / "zzz_9.jpg");
  fs::create_directories(src / "Erosion");
  const DatasetManifest m = ScanSourceTree(src);
  REQUIRE(m.videos.size() == 2);
  CHECK(m.videos[0].video_id == "abc_123");
  CHECK(m.videos[0].frames.size() == 3);
  CHECK(m.videos[1].video_id == "zzz");
  CHECK(ManifestFromJson(ManifestToJson(m)) == m);
  Touch(src / "Not A Class" / "q_1.jpg");
  CHECK_THROWS_AS(ScanSourceTree(src), ValidationError);
}

TEST_CASE("single-video classes go to train, two-video classes reach test") {
  DatasetManifest m;
  m.videos.push_back({"a", {{"a_1.jpg", 0}, {"a_2.jpg", 1}}});
  m.videos.push_back({"b", {{"b_1.jpg", 1}}});
  m.videos.push_back({"c", {{"c_1.jpg", 2}, {"c_2.jpg", 2}}});
  m.videos.push_back({"d", {{"d_1.jpg", 2}}});
  m.videos.push_back({"e", {{"e_1.jpg", 2}}});
  m.Canonicalize();
  const SplitAssignment a = GreedyVideoSplit(m);
  CHECK(a.assignment.at("a") == Split::kTrain);
  const SplitReport r = ValidateSplit(m, a);
  CHECK(r.AllPassed());
  CHECK_FALSE(r.evaluable.test(0));
  CHECK(r.training_only.test(0));
  CHECK(r.evaluable.test(1));
  CHECK(r.evaluable.test(2));
}

TEST_CASE("property: planted manifests satisfy every coverage rule") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const auto planted = oracle::MakePlantedManifest(rng);
    const SplitAssignment a = GreedyVideoSplit(planted.manifest);
    CHECK(a.assignment.size() == planted.manifest.videos.size());
    CHECK(oracle::CoverageHolds(planted.manifest, a));
    CHECK(ValidateSplit(planted.manifest, a).AllPassed());
    CHECK(SplitFingerprint(GreedyVideoSplit(planted.manifest)) == SplitFingerprint(a));
    std::size_t frames = 0;
    for (std::size_t n : a.frame_counts) frames += n;
    CHECK(frames == planted.manifest.TotalFrames());
  }
}

TEST_CASE("split does not depend on input order") {
  std::mt19937_64 rng(7);
  auto planted = oracle::MakePlantedManifest(rng);
  DatasetManifest shuffled = planted.manifest;
  std::shuffle(shuffled.videos.begin(), shuffled.videos.end(), rng);
  shuffled.Canonicalize();
  CHECK(SplitFingerprint(GreedyVideoSplit(shuffled)) ==
        SplitFingerprint(GreedyVideoSplit(planted.manifest)));
}

TEST_CASE("unsatisfiable coverage is reported, not hidden") {
  // One video holds both classes, so class 1 cannot be in train and test at once.
  DatasetManifest m;
  m.videos.push_back({"only", {{"only_1.jpg", 0}, {"only_2.jpg", 1}}});
  m.videos.push_back({"other", {{"other_1.jpg", 1}}});
  m.Canonicalize();
  const SplitAssignment a = GreedyVideoSplit(m);
  const SplitReport r = ValidateSplit(m, a);
  const bool coverage = oracle::CoverageHolds(m, a);
  CHECK(r.AllPassed() == coverage);
}

TEST_CASE("validation rejects assignments with unknown or missing videos") {
  DatasetManifest m;
  m.videos.push_back({"a", {{"a_1.jpg", 0}}});
  SplitAssignment a;
  a.assignment = {{"b", Split::kTrain}};
  CHECK_THROWS_AS(ValidateSplit(m, a), ValidationError);
  m.videos.push_back(m.videos[0]);
  CHECK_THROWS_AS(m.Canonicalize(), ValidationError);
}

TEST_CASE("materialize writes every class folder in every split") {
  const fs::path src = ScratchDir("mat_src");
  const fs::path out = ScratchDir("mat_out");
  Touch(src / "Ulcer" / "v1_1.jpg", "one");
  Touch(src / "Ulcer" / "v2_1.jpg", "two");
  Touch(src / "Erosion" / "v3_1.jpg", "three");
  const DatasetManifest m = ScanSourceTree(src);
  const SplitAssignment a = GreedyVideoSplit(m);
  MaterializeSplit(m, a, src, out);
  for (Split s : kAllSplits)
    for (auto name : kClassNames) CHECK(fs::is_directory(out / std::string(ToString(s)) / std::string(name)));
  std::size_t copied = 0;
  for (const auto& e : fs::recursive_directory_iterator(out)) copied += e.is_regular_file();
  CHECK(copied == 3);
  fs::remove(src / "Ulcer" / "v2_1.jpg");
  CHECK_THROWS_AS(MaterializeSplit(m, a, src, out), ValidationError);
}

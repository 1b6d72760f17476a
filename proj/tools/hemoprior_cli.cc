// Command-line front end: prior, split, eval, compare, sweep, audit, zeroshot.
//
// Exit codes: 0 success, 1 validation error, 2 computation degeneracy.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hemoprior/errors.h"
#include "hemoprior/eval/evaluate.h"
#include "hemoprior/io/classes.h"
#include "hemoprior/io/image.h"
#include "hemoprior/io/predictions.h"
#include "hemoprior/prior/prior.h"
#include "hemoprior/report/audit.h"
#include "hemoprior/report/compare.h"
#include "hemoprior/report/format.h"
#include "hemoprior/report/render.h"
#include "hemoprior/report/sweep.h"
#include "hemoprior/report/zeroshot.h"
#include "hemoprior/split/manifest.h"
#include "hemoprior/split/splitter.h"

namespace fs = std::filesystem;
using namespace hemoprior;

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitDegenerate = 2;

// Echo of every option on the invoked subcommand, keyed by long name.
nlohmann::json ConfigOf(const CLI::App* sub) {
  nlohmann::json cfg;
  cfg["subcommand"] = sub->get_name();
  nlohmann::json args = nlohmann::json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_name() == "--help" || opt->get_name().empty()) continue;
    std::string key = opt->get_name();
    key.erase(0, key.find_first_not_of('-'));
    auto results = opt->reduced_results();
    if (results.empty()) {
      const auto def = opt->get_default_str();
      if (def.empty()) continue;
      args[key] = def;
    } else if (results.size() == 1) {
      args[key] = results.front();
    } else {
      args[key] = results;
    }
  }
  cfg["args"] = args;
  return cfg;
}

class OutputWriter {
 public:
  OutputWriter(fs::path dir, FormatSet formats, Provenance provenance)
      : dir_(std::move(dir)), formats_(std::move(formats)), prov_(std::move(provenance)) {
    fs::create_directories(dir_);
  }

  bool Wants(OutputFormat f) const { return formats_.count(f) > 0; }

  void Json(const std::string& name, nlohmann::json body) {
    if (!Wants(OutputFormat::kJson)) return;
    body["provenance"] = prov_.ToJson();
    WriteJsonFile(dir_ / name, body);
    Written(name);
  }
  void Csv(const std::string& name, const std::string& body) {
    if (!Wants(OutputFormat::kCsv)) return;
    WriteTextFile(dir_ / name, "# provenance: " + prov_.Compact() + "\n" + body);
    Written(name);
  }
  void Md(const std::string& name, const std::string& body) {
    if (!Wants(OutputFormat::kMd)) return;
    WriteTextFile(dir_ / name, "<!-- provenance: " + prov_.Compact() + " -->\n\n" + body);
    Written(name);
  }
  void Svg(const std::string& name, const std::string& body) {
    if (!Wants(OutputFormat::kSvg)) return;
    WriteTextFile(dir_ / name, "<!-- provenance: " + EscapeComment(prov_.Compact()) + " -->\n" + body);
    Written(name);
  }

 private:
  static std::string EscapeComment(std::string s) {
    for (std::size_t pos; (pos = s.find("--")) != std::string::npos;) s.replace(pos, 2, "- -");
    return s;
  }
  void Written(const std::string& name) { std::cerr << "wrote " << (dir_ / name).string() << "\n"; }

  fs::path dir_;
  FormatSet formats_;
  Provenance prov_;
};

// ---------------------------------------------------------------- prior ---

struct PriorArgs {
  std::string input;
  std::string out;
  std::string version = "v1";
  std::optional<double> alpha;
  std::optional<double> pivot;
  double lambda_scale = 0.25;
  double epsilon = 1e-6;
  std::string percentile = "linear";
  double center_fraction = 0.5;
};

void WriteF32Grid(const fs::path& path, const ScalarMap& map) {
  std::vector<std::uint8_t> bytes(map.size() * 4);
  for (std::size_t i = 0; i < map.size(); ++i) {
    const float v = static_cast<float>(map.values[i]);
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    for (int b = 0; b < 4; ++b) bytes[i * 4 + static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(bits >> (8 * b));
  }
  WriteFile(path, bytes);
}

std::vector<fs::path> ImageInputs(const fs::path& input) {
  std::vector<fs::path> files;
  if (fs::is_regular_file(input)) {
    files.push_back(input);
  } else if (fs::is_directory(input)) {
    for (const auto& e : fs::directory_iterator(input)) {
      if (e.is_regular_file() && IsImagePath(e.path())) files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    throw ValidationError("input not found: " + input.string());
  }
  if (files.empty()) throw ValidationError("no PNG/JPEG images under " + input.string());
  return files;
}

PriorParams ParamsFrom(const PriorArgs& a, PriorVersion version) {
  PriorParams p;
  p.epsilon = a.epsilon;
  p.lambda_scale = a.lambda_scale;
  if (a.alpha) (version == PriorVersion::kV1 ? p.alpha_v1 : p.alpha_v2) = *a.alpha;
  if (a.pivot) p.pivot_v2 = *a.pivot;
  if (a.percentile == "linear") {
    p.percentile_method = PercentileMethod::kLinear;
  } else if (a.percentile == "nearest") {
    p.percentile_method = PercentileMethod::kNearestRank;
  } else {
    throw ValidationError("--percentile must be linear or nearest");
  }
  p.Validate();
  return p;
}

nlohmann::json ParamsJson(const PriorParams& p) {
  return {{"epsilon", p.epsilon},
          {"alpha_v1", p.alpha_v1},
          {"alpha_v2", p.alpha_v2},
          {"pivot_v2", p.pivot_v2},
          {"clip_lo_pct", p.clip_lo_pct},
          {"clip_hi_pct", p.clip_hi_pct},
          {"lambda_scale", p.lambda_scale},
          {"percentile_method", p.percentile_method == PercentileMethod::kLinear ? "linear" : "nearest"}};
}

RgbFrame Overlay(const RgbFrame& frame, const ScalarMap& p_blood) {
  RgbFrame out = frame;
  for (std::size_t i = 0; i < p_blood.size(); ++i) {
    const double a = std::clamp(p_blood.values[i], 0.0, 1.0);
    out.data[i * 3 + 0] = (1.0 - a) * frame.data[i * 3 + 0] + a;
    out.data[i * 3 + 1] = (1.0 - a) * frame.data[i * 3 + 1];
    out.data[i * 3 + 2] = (1.0 - a) * frame.data[i * 3 + 2];
  }
  return out;
}

int RunPrior(const PriorArgs& a, const nlohmann::json& config) {
  const PriorVersion version = ParsePriorVersion(a.version);
  const PriorParams params = ParamsFrom(a, version);
  const auto files = ImageInputs(a.input);
  const fs::path out(a.out);
  fs::create_directories(out);
  nlohmann::json summary;
  summary["provenance"] = Provenance{config, std::nullopt}.ToJson();
  summary["version"] = std::string(ToString(version));
  summary["params"] = ParamsJson(params);
  summary["grid_format"] = "float32 little-endian, row-major, width*height values";
  summary["frames"] = nlohmann::json::array();
  for (const auto& file : files) {
    const RgbFrame frame = ReadImageFile(file);
    const PriorMaps maps = ComputePriorMaps(frame, params, version);
    const std::string stem = file.stem().string();
    const std::pair<const char*, const ScalarMap*> grids[] = {
        {"h_norm", &maps.h_norm}, {"phi", &maps.phi}, {"p_blood", &maps.p_blood},
        {"h_afi_phi", &maps.h_afi_phi}};
    nlohmann::json entry;
    entry["source"] = file.filename().string();
    entry["width"] = frame.width;
    entry["height"] = frame.height;
    for (const auto& [name, map] : grids) {
      const std::string fname = stem + "." + name + ".f32";
      WriteF32Grid(out / fname, *map);
      entry["grids"][name] = fname;
    }
    WriteFile(out / (stem + ".p_blood.png"),
              EncodeGrayPng(frame.width, frame.height, maps.p_blood.values));
    WriteFile(out / (stem + ".overlay.png"), EncodePng(Overlay(frame, maps.p_blood)));
    entry["p_blood_center_area_mean"] = CenterAreaMean(maps.p_blood, a.center_fraction);
    entry["p_blood_mean"] = maps.p_blood.Mean();
    summary["frames"].push_back(std::move(entry));
  }
  WriteJsonFile(out / "prior_summary.json", summary);
  std::cerr << "processed " << files.size() << " frame(s) into " << out.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------- split ---

struct SplitArgs {
  std::string source;
  std::string out;
  std::string ratios = "0.70,0.15,0.15";
  std::string manifest_out;
  std::string manifest_in;
  std::string fingerprint_out;
  bool link = false;
  bool dry_run = false;
};

int RunSplit(const SplitArgs& a, const nlohmann::json& config) {
  const SplitRatios ratios = ParseRatios(a.ratios);
  if (a.out.empty()) throw ValidationError("--out (or KVASIR_DATA) is required");
  if (a.source.empty() && a.manifest_in.empty()) {
    throw ValidationError("--source (or KVASIR_RAW) or --manifest-in is required");
  }
  if (!a.dry_run && a.source.empty()) throw ValidationError("materializing needs --source");
  const fs::path out(a.out);
  fs::create_directories(out);
  const DatasetManifest manifest = a.manifest_in.empty()
                                       ? ScanSourceTree(a.source)
                                       : ManifestFromJson(ReadJsonFile(a.manifest_in));
  const SplitAssignment assignment = GreedyVideoSplit(manifest, ratios);
  const SplitReport report = ValidateSplit(manifest, assignment);
  const std::string fingerprint = SplitFingerprint(assignment);
  const Provenance prov{config, fingerprint};

  auto manifest_json = ManifestToJson(manifest);
  manifest_json["provenance"] = prov.ToJson();
  WriteJsonFile(a.manifest_out.empty() ? out / "manifest.json" : fs::path(a.manifest_out),
                manifest_json);
  auto assignment_json = AssignmentToJson(assignment);
  assignment_json["report"] = ReportToJson(report);
  assignment_json["provenance"] = prov.ToJson();
  WriteJsonFile(out / "split_assignment.json", assignment_json);
  WriteTextFile(a.fingerprint_out.empty() ? out / "split_fingerprint.txt" : fs::path(a.fingerprint_out),
                fingerprint + "\n");
  if (!a.dry_run) {
    MaterializeSplit(manifest, assignment, a.source, out,
                     a.link ? MaterializeMode::kHardLink : MaterializeMode::kCopy);
  }
  std::cerr << "videos train/val/test: " << assignment.video_counts[0] << "/"
            << assignment.video_counts[1] << "/" << assignment.video_counts[2]
            << "; frames: " << assignment.frame_counts[0] << "/" << assignment.frame_counts[1]
            << "/" << assignment.frame_counts[2] << "\nfingerprint " << fingerprint << "\n";
  if (!report.AllPassed()) {
    std::cerr << "coverage constraints not satisfiable for this manifest; see split_assignment.json\n";
    return kExitDegenerate;
  }
  return 0;
}

// ----------------------------------------------------------------- eval ---

struct EvalArgs {
  std::string pred;
  std::string score_kind = "logits";
  std::string format;
  std::string evaluable = "default";
  std::string out;
  std::string formats = "json,csv,md,svg";
  int bootstrap = 1000;
  std::uint64_t seed = 0;
  double level = 0.95;
  std::string stratify = "class";
  std::string arm;
  std::optional<int> run_seed;
  std::string split_fingerprint;
};

std::optional<std::string> FingerprintArg(const std::string& arg) {
  if (arg.empty()) return std::nullopt;
  if (fs::is_regular_file(arg)) {
    auto bytes = ReadFile(arg);
    std::string s(bytes.begin(), bytes.end());
    s.erase(s.find_last_not_of(" \r\n\t") + 1);
    return s;
  }
  return arg;
}

PredictionSet LoadDump(const std::string& path, const std::string& format, const std::string& kind) {
  const DumpFormat f = format.empty() ? FormatFromPath(path) : ParseDumpFormat(format);
  PredictionSet set = LoadPredictions(path, f, ParseScoreKind(kind));
  std::cerr << "loaded " << set.size() << " prediction rows from " << path << "\n";
  return set;
}

int RunEval(const EvalArgs& a, const nlohmann::json& config) {
  const FormatSet formats = ParseFormats(a.formats);
  const ClassSet evaluable = ParseClassSet(a.evaluable);
  const PredictionSet preds = LoadDump(a.pred, a.format, a.score_kind);
  EvalOptions opts;
  opts.with_ci = a.bootstrap > 0;
  opts.bootstrap.n_resamples = std::max(1, a.bootstrap);
  opts.bootstrap.seed = a.seed;
  opts.bootstrap.level = a.level;
  opts.bootstrap.stratify = ParseStratify(a.stratify);
  const EvalReport report = Evaluate(preds, evaluable, opts);

  OutputWriter w(a.out, formats, Provenance{config, FingerprintArg(a.split_fingerprint)});
  auto j = EvalReportToJson(report);
  if (!a.arm.empty() || a.run_seed) {
    if (!a.arm.empty()) j["run"]["arm"] = a.arm;
    if (a.run_seed) j["run"]["seed"] = *a.run_seed;
  }
  w.Json("report.json", j);
  w.Csv("report.csv", EvalReportToCsv(report));
  w.Csv("confusion_counts.csv", ConfusionToCsv(report.confusion, false));
  w.Csv("confusion_normalized.csv", ConfusionToCsv(report.confusion, true));
  w.Csv("roc_points.csv", RocToCsv(preds, evaluable));
  w.Md("report.md", EvalReportToMarkdown(report));
  w.Svg("roc.svg", RocToSvg(preds, evaluable));
  w.Svg("confusion.svg", ConfusionToSvg(report.confusion));
  return 0;
}

// -------------------------------------------------------------- compare ---

struct CompareArgs {
  std::string pred_a;
  std::string pred_b;
  std::string score_kind = "logits";
  std::string score_kind_b;
  std::string evaluable = "default";
  int bonferroni_m = 11;
  std::string out;
  std::string formats = "json,md,csv";
};

int RunCompare(const CompareArgs& a, const nlohmann::json& config) {
  const FormatSet formats = ParseFormats(a.formats);
  const PredictionSet pa = LoadDump(a.pred_a, "", a.score_kind);
  const PredictionSet pb = LoadDump(a.pred_b, "", a.score_kind_b.empty() ? a.score_kind : a.score_kind_b);
  const CompareReport report = ComparePredictions(pa, pb, ParseClassSet(a.evaluable), a.bonferroni_m);
  OutputWriter w(a.out, formats, Provenance{config, std::nullopt});
  w.Json("compare.json", CompareToJson(report));
  w.Md("compare.md", CompareToMarkdown(report));
  w.Csv("compare.csv", CompareToCsv(report));
  return 0;
}

// ---------------------------------------------------------------- sweep ---

struct SweepArgs {
  std::string reports;
  std::string out;
  std::string metric = "macro_auc_evaluable";
  std::string baseline;
  std::string formats = "json,md,csv";
};

int RunSweep(const SweepArgs& a, const nlohmann::json& config) {
  const FormatSet formats = ParseFormats(a.formats);
  SeedTable table = LoadSeedTable(a.reports, a.metric);
  std::string baseline = a.baseline;
  if (baseline.empty()) {
    baseline = std::find(table.arms.begin(), table.arms.end(), "RGB-only") != table.arms.end()
                   ? "RGB-only"
                   : table.arms.front();
  }
  auto it = std::find(table.arms.begin(), table.arms.end(), baseline);
  if (it != table.arms.end()) std::rotate(table.arms.begin(), it, it + 1);
  const SeedSweep sweep = CrossSeedAggregate(table, baseline);
  OutputWriter w(a.out, formats, Provenance{config, std::nullopt});
  w.Json("sweep.json", SweepToJson(sweep, a.metric));
  w.Md("sweep.md", SweepToMarkdown(sweep));
  w.Csv("sweep.csv", SweepToCsv(sweep));
  return 0;
}

// ---------------------------------------------------------------- audit ---

struct AuditArgs {
  std::string best;
  std::string last;
  std::string out;
  std::string formats = "json,md,csv";
};

int RunAudit(const AuditArgs& a, const nlohmann::json& config) {
  const FormatSet formats = ParseFormats(a.formats);
  auto entries = AuditEntriesFromJson(ReadJsonFile(a.best), CheckpointTag::kBest,
                                      fs::path(a.best).stem().string());
  auto last = AuditEntriesFromJson(ReadJsonFile(a.last), CheckpointTag::kLast,
                                   fs::path(a.best).stem().string());
  entries.insert(entries.end(), last.begin(), last.end());
  const AuditTable table = AuditBestVsLast(entries);
  OutputWriter w(a.out, formats, Provenance{config, std::nullopt});
  w.Json("best_vs_last.json", AuditToJson(table));
  w.Md("best_vs_last.md", AuditToMarkdown(table));
  w.Csv("best_vs_last.csv", AuditToCsv(table));
  return 0;
}

// ------------------------------------------------------------- zeroshot ---

struct ZeroShotArgs {
  std::string blood;
  std::string normal;
  std::string version = "both";
  std::string out;
  PriorArgs prior;
};

std::vector<RgbFrame> LoadFrames(const std::string& dir) {
  std::vector<RgbFrame> frames;
  for (const auto& f : ImageInputs(dir)) frames.push_back(ReadImageFile(f));
  return frames;
}

int RunZeroShot(const ZeroShotArgs& a, const nlohmann::json& config) {
  std::vector<PriorVersion> versions;
  if (a.version == "both") {
    versions = {PriorVersion::kV1, PriorVersion::kV2};
  } else {
    versions = {ParsePriorVersion(a.version)};
  }
  const auto blood = LoadFrames(a.blood);
  const auto normal = LoadFrames(a.normal);
  nlohmann::json j;
  j["provenance"] = Provenance{config, std::nullopt}.ToJson();
  j["n_blood"] = blood.size();
  j["n_normal"] = normal.size();
  j["center_fraction"] = a.prior.center_fraction;
  std::string md = "| Prior | AUC | Cohen d |\n|---|---|---|\n";
  for (PriorVersion v : versions) {
    const PriorParams params = ParamsFrom(a.prior, v);
    const ZeroShotResult r = ZeroShotSeparation(blood, normal, v, params, a.prior.center_fraction);
    nlohmann::json entry = {{"auc", r.auc}, {"params", ParamsJson(params)}};
    if (r.cohens_d && !r.cohens_d->degenerate) {
      entry["cohens_d"] = r.cohens_d->d;
    } else {
      entry["cohens_d"] = nullptr;
    }
    entry["cohens_d_degenerate"] = r.cohens_d ? r.cohens_d->degenerate : false;
    j["versions"][std::string(ToString(v))] = entry;
    md += "| " + std::string(ToString(v)) + " | " + Sig6(r.auc) + " | " +
          (r.cohens_d ? Sig6(r.cohens_d->d) : std::string("NA")) + " |\n";
  }
  fs::create_directories(a.out);
  WriteJsonFile(fs::path(a.out) / "zeroshot.json", j);
  WriteTextFile(fs::path(a.out) / "zeroshot.md",
                "<!-- provenance: " + Provenance{config, std::nullopt}.Compact() + " -->\n\n" + md);
  std::cerr << md;
  return 0;
}

void PrintError(const char* kind, const std::string& message) {
  nlohmann::json err = {{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
}

void AddPriorOptions(CLI::App* sub, PriorArgs& a) {
  sub->add_option("--alpha", a.alpha, "Sigmoid slope (defaults: 4 for v1, 6 for v2)");
  sub->add_option("--pivot", a.pivot, "v2 pivot (default 0.30)");
  sub->add_option("--lambda-scale", a.lambda_scale, "Fluence length scale factor")->capture_default_str();
  sub->add_option("--epsilon", a.epsilon, "Division guard")->capture_default_str();
  sub->add_option("--percentile", a.percentile, "Percentile convention: linear|nearest")
      ->capture_default_str();
  sub->add_option("--center-fraction", a.center_fraction, "Area fraction for the center mean")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analytic hemoglobin prior, video-level splitting and evaluation statistics"};
  app.require_subcommand(1);

  PriorArgs prior_args;
  auto* prior = app.add_subcommand("prior", "Compute prior maps for an image or a directory");
  prior->add_option("--input", prior_args.input, "Image file or directory")->required();
  prior->add_option("--out", prior_args.out, "Output directory")->required();
  prior->add_option("--physics_prior_version", prior_args.version, "v1|v2")->capture_default_str();
  AddPriorOptions(prior, prior_args);

  SplitArgs split_args;
  auto* split = app.add_subcommand("split", "Class-stratified video-level split");
  split->add_option("--source", split_args.source, "Class-folder source tree")->envname("KVASIR_RAW");
  split->add_option("--out", split_args.out, "Output root")->envname("KVASIR_DATA");
  split->add_option("--ratios", split_args.ratios, "train,val,test")->capture_default_str();
  split->add_option("--manifest-out", split_args.manifest_out, "Manifest JSON path");
  split->add_option("--manifest-in", split_args.manifest_in, "Use this manifest instead of scanning");
  split->add_option("--fingerprint-out", split_args.fingerprint_out, "Fingerprint text path");
  split->add_flag("--link", split_args.link, "Hard-link frames instead of copying");
  split->add_flag("--dry-run", split_args.dry_run, "Write manifest/assignment only");

  EvalArgs eval_args;
  auto* eval = app.add_subcommand("eval", "Frame-level evaluation of a prediction dump");
  eval->add_option("--pred", eval_args.pred, "Prediction dump (csv or jsonl)")->required();
  eval->add_option("--score-kind", eval_args.score_kind, "logits|probabilities")->capture_default_str();
  eval->add_option("--format", eval_args.format, "csv|jsonl (default: from extension)");
  eval->add_option("--evaluable", eval_args.evaluable, "default|all|comma-separated names")
      ->capture_default_str();
  eval->add_option("--out", eval_args.out, "Output directory")->required();
  eval->add_option("--formats", eval_args.formats, "Subset of json,csv,md,svg")->capture_default_str();
  eval->add_option("--bootstrap", eval_args.bootstrap, "Resamples for CIs (0 disables)")
      ->capture_default_str();
  eval->add_option("--seed", eval_args.seed, "Bootstrap seed")->capture_default_str();
  eval->add_option("--level", eval_args.level, "CI level")->capture_default_str();
  eval->add_option("--stratify", eval_args.stratify, "class|none")->capture_default_str();
  eval->add_option("--arm", eval_args.arm, "Arm name recorded in the report");
  eval->add_option("--run-seed", eval_args.run_seed, "Training seed recorded in the report");
  eval->add_option("--split-fingerprint", eval_args.split_fingerprint,
                   "Fingerprint string or file to embed");

  CompareArgs cmp_args;
  auto* cmp = app.add_subcommand("compare", "Paired DeLong + McNemar between two dumps");
  cmp->add_option("--pred-a", cmp_args.pred_a, "Baseline dump")->required();
  cmp->add_option("--pred-b", cmp_args.pred_b, "Candidate dump")->required();
  cmp->add_option("--score-kind", cmp_args.score_kind, "logits|probabilities")->capture_default_str();
  cmp->add_option("--score-kind-b", cmp_args.score_kind_b, "Score kind of --pred-b if different");
  cmp->add_option("--evaluable", cmp_args.evaluable, "default|all|names")->capture_default_str();
  cmp->add_option("--bonferroni-m", cmp_args.bonferroni_m, "Number of tests")->capture_default_str();
  cmp->add_option("--out", cmp_args.out, "Output directory")->required();
  cmp->add_option("--formats", cmp_args.formats, "Subset of json,csv,md")->capture_default_str();

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Cross-seed aggregation");
  sweep->add_option("--reports", sweep_args.reports, "Directory of per-seed reports")->required();
  sweep->add_option("--out", sweep_args.out, "Output directory")->required();
  sweep->add_option("--metric", sweep_args.metric, "Metric key")->capture_default_str();
  sweep->add_option("--baseline", sweep_args.baseline, "Baseline arm (default RGB-only or first)");
  sweep->add_option("--formats", sweep_args.formats, "Subset of json,csv,md")->capture_default_str();

  AuditArgs audit_args;
  auto* audit = app.add_subcommand("audit", "best vs last checkpoint audit");
  audit->add_option("--best", audit_args.best, "Metrics of best checkpoints")->required();
  audit->add_option("--last", audit_args.last, "Metrics of last checkpoints")->required();
  audit->add_option("--out", audit_args.out, "Output directory")->required();
  audit->add_option("--formats", audit_args.formats, "Subset of json,csv,md")->capture_default_str();

  ZeroShotArgs zs_args;
  auto* zs = app.add_subcommand("zeroshot", "Zero-shot blood vs normal separation of P_blood");
  zs->add_option("--blood", zs_args.blood, "Directory of blood frames")->required();
  zs->add_option("--normal", zs_args.normal, "Directory of normal frames")->required();
  zs->add_option("--version", zs_args.version, "v1|v2|both")->capture_default_str();
  zs->add_option("--out", zs_args.out, "Output directory")->required();
  AddPriorOptions(zs, zs_args.prior);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (*prior) return RunPrior(prior_args, ConfigOf(prior));
    if (*split) return RunSplit(split_args, ConfigOf(split));
    if (*eval) return RunEval(eval_args, ConfigOf(eval));
    if (*cmp) return RunCompare(cmp_args, ConfigOf(cmp));
    if (*sweep) return RunSweep(sweep_args, ConfigOf(sweep));
    if (*audit) return RunAudit(audit_args, ConfigOf(audit));
    if (*zs) return RunZeroShot(zs_args, ConfigOf(zs));
  } catch (const DegeneracyError& e) {
    PrintError("degenerate", e.what());
    return kExitDegenerate;
  } catch (const ValidationError& e) {
    PrintError("validation", e.what());
    return kExitValidation;
  } catch (const std::filesystem::filesystem_error& e) {
    PrintError("validation", e.what());
    return kExitValidation;
  }
  return kExitValidation;
}

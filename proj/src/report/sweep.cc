#include "hemoprior/report/sweep.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include "hemoprior/errors.h"
#include "hemoprior/report/format.h"

namespace hemoprior {

namespace {

std::optional<int> ParseInt(std::string_view s) {
  int v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

void AddArm(SeedTable& table, const std::string& arm) {
  if (std::find(table.arms.begin(), table.arms.end(), arm) == table.arms.end()) {
    table.arms.push_back(arm);
  }
}

void Put(SeedTable& table, int seed, const std::string& arm, double value,
         const std::string& where) {
  AddArm(table, arm);
  auto [it, inserted] = table.values[seed].emplace(arm, value);
  if (!inserted && it->second != value) {
    throw ValidationError("conflicting values for seed " + std::to_string(seed) + ", arm '" +
                          arm + "' (" + where + ")");
  }
}

struct RunKey {
  std::string arm;
  int seed = 0;
};

std::optional<RunKey> KeyFromPath(const std::filesystem::path& path) {
  const std::string stem = path.stem().string();
  const auto pos = stem.rfind("_seed");
  if (pos != std::string::npos && pos > 0) {
    if (auto seed = ParseInt(std::string_view(stem).substr(pos + 5))) {
      return RunKey{stem.substr(0, pos), *seed};
    }
  }
  const std::string parent = path.parent_path().filename().string();
  if (parent.rfind("seed", 0) == 0) {
    std::string_view digits(parent);
    digits.remove_prefix(4);
    if (!digits.empty() && digits.front() == '_') digits.remove_prefix(1);
    if (auto seed = ParseInt(digits)) return RunKey{stem, *seed};
  }
  return std::nullopt;
}

void Merge(SeedTable& into, const SeedTable& from, const std::string& where) {
  for (const auto& arm : from.arms) AddArm(into, arm);
  for (const auto& [seed, row] : from.values)
    for (const auto& [arm, v] : row) Put(into, seed, arm, v, where);
}

}  // namespace

SeedTable SeedTableFromSummary(const nlohmann::ordered_json& j) {
  SeedTable table;
  const char* seed_key = j.contains("seeds") ? "seeds" : (j.contains("per_seed") ? "per_seed" : nullptr);
  try {
    if (seed_key) {
      for (const auto& [seed_text, row] : j.at(seed_key).items()) {
        auto seed = ParseInt(seed_text);
        if (!seed) throw ValidationError("seed key is not an integer: '" + seed_text + "'");
        for (const auto& [arm, v] : row.items()) Put(table, *seed, arm, v.get<double>(), "summary");
      }
    } else if (j.contains("arms") && j.at("arms").is_object()) {
      for (const auto& [arm, col] : j.at("arms").items()) {
        for (const auto& [seed_text, v] : col.items()) {
          auto seed = ParseInt(seed_text);
          if (!seed) throw ValidationError("seed key is not an integer: '" + seed_text + "'");
          Put(table, *seed, arm, v.get<double>(), "summary");
        }
      }
    } else {
      throw ValidationError("summary has neither 'seeds', 'per_seed' nor 'arms'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed seed summary: ") + e.what());
  }
  return table;
}

SeedTable LoadSeedTable(const std::filesystem::path& dir, std::string_view metric) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ValidationError("reports directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw ValidationError("no JSON reports under " + dir.string());

  SeedTable table;
  std::vector<std::string> unmapped;
  for (const auto& path : files) {
    std::ifstream in(path);
    nlohmann::ordered_json j;
    try {
      j = nlohmann::ordered_json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      unmapped.push_back(path.string() + ": not valid JSON");
      continue;
    }
    if (j.contains("seeds") || j.contains("per_seed") ||
        (j.contains("arms") && j.at("arms").is_object() && !j.contains("metrics"))) {
      Merge(table, SeedTableFromSummary(j), path.string());
      continue;
    }
    if (!j.contains("metrics") || !j.at("metrics").contains(std::string(metric)) ||
        !j.at("metrics").at(std::string(metric)).is_number()) {
      unmapped.push_back(path.string() + ": no numeric metrics." + std::string(metric));
      continue;
    }
    std::optional<RunKey> key;
    if (j.contains("run") && j.at("run").contains("arm") && j.at("run").contains("seed")) {
      key = RunKey{j.at("run").at("arm").get<std::string>(), j.at("run").at("seed").get<int>()};
    } else {
      key = KeyFromPath(path);
    }
    if (!key) {
      unmapped.push_back(path.string() + ": cannot determine arm/seed");
      continue;
    }
    Put(table, key->seed, key->arm, j.at("metrics").at(std::string(metric)).get<double>(),
        path.string());
  }
  if (!unmapped.empty()) {
    std::ostringstream os;
    os << "unmappable sweep inputs:";
    for (const auto& u : unmapped) os << "\n  " << u;
    throw ValidationError(os.str());
  }
  return table;
}

nlohmann::json SweepToJson(const SeedSweep& sweep, std::string_view metric) {
  nlohmann::json j;
  j["metric"] = std::string(metric);
  j["seeds"] = sweep.seeds;
  for (const auto& a : sweep.arms) {
    j["arms"].push_back({{"arm", a.arm},
                         {"values", a.values},
                         {"mean", a.mean},
                         {"sd_population", a.sd_population}});
  }
  j["paired_deltas"] = nlohmann::json::array();
  for (const auto& d : sweep.deltas) {
    j["paired_deltas"].push_back({{"arm", d.arm},
                                  {"baseline", d.baseline},
                                  {"deltas", d.deltas},
                                  {"mean_delta", d.mean_delta},
                                  {"sign_positive", d.sign_positive},
                                  {"n_seeds", d.n_seeds}});
  }
  return j;
}

std::string SweepToMarkdown(const SeedSweep& sweep) {
  std::string md = "| Seed";
  for (const auto& a : sweep.arms) md += " | " + a.arm;
  for (const auto& d : sweep.deltas) md += " | Δ (" + d.arm + " - " + d.baseline + ")";
  md += " |\n|---";
  for (std::size_t i = 0; i < sweep.arms.size() + sweep.deltas.size(); ++i) md += "|---";
  md += "|\n";
  for (std::size_t s = 0; s < sweep.seeds.size(); ++s) {
    md += "| " + std::to_string(sweep.seeds[s]);
    for (const auto& a : sweep.arms) md += " | " + Fixed(a.values[s], 3);
    for (const auto& d : sweep.deltas) md += " | " + Fixed(d.deltas[s], 3, true);
    md += " |\n";
  }
  md += "| mean ± SD";
  for (const auto& a : sweep.arms) md += " | " + Fixed(a.mean, 3) + " ± " + Fixed(a.sd_population, 3);
  for (const auto& d : sweep.deltas) md += " | " + Fixed(d.mean_delta, 3, true);
  md += " |\n| sign-positive seeds";
  for (std::size_t i = 0; i < sweep.arms.size(); ++i) md += " | ---";
  for (const auto& d : sweep.deltas) {
    md += " | " + std::to_string(d.sign_positive) + " / " + std::to_string(d.n_seeds);
  }
  md += " |\n";
  return md;
}

std::string SweepToCsv(const SeedSweep& sweep) {
  std::string csv = "row,column,value\n";
  for (std::size_t s = 0; s < sweep.seeds.size(); ++s) {
    for (const auto& a : sweep.arms) {
      csv += std::to_string(sweep.seeds[s]) + "," + CsvEscape(a.arm) + "," + Sig6(a.values[s]) + "\n";
    }
  }
  for (const auto& a : sweep.arms) {
    csv += "mean," + CsvEscape(a.arm) + "," + Sig6(a.mean) + "\n";
    csv += "sd_population," + CsvEscape(a.arm) + "," + Sig6(a.sd_population) + "\n";
  }
  for (const auto& d : sweep.deltas) {
    const std::string col = CsvEscape("delta:" + d.arm + "-" + d.baseline);
    csv += "mean_delta," + col + "," + Sig6(d.mean_delta) + "\n";
    csv += "sign_positive," + col + "," + std::to_string(d.sign_positive) + "/" +
           std::to_string(d.n_seeds) + "\n";
  }
  return csv;
}

}  // namespace hemoprior

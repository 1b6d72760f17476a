#ifndef HEMOPRIOR_REPORT_SWEEP_H_
#define HEMOPRIOR_REPORT_SWEEP_H_

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "hemoprior/stats/summary.h"

namespace hemoprior {

// Accepted inputs, per JSON file in `dir` (and its immediate subdirectories):
//   * a seed summary: {"seeds": {"<seed>": {"<arm>": value, ...}, ...}}
//     ("per_seed" is accepted as an alias), or
//     {"arms": {"<arm>": {"<seed>": value, ...}, ...}};
//   * an eval report with metrics.<metric>; arm and seed come from the
//     report's "run" block, else from the file name "<arm>_seed<N>.json",
//     else from a parent folder "seed<N>" with the file stem as arm.
// Files that match none of these are reported in one ValidationError rather
// than skipped.
SeedTable LoadSeedTable(const std::filesystem::path& dir, std::string_view metric);

// Parses one summary document of the first form above.
SeedTable SeedTableFromSummary(const nlohmann::ordered_json& j);

nlohmann::json SweepToJson(const SeedSweep& sweep, std::string_view metric);
// Per-seed rows plus mean ± SD and sign-positive rows, 3 decimals.
std::string SweepToMarkdown(const SeedSweep& sweep);
std::string SweepToCsv(const SeedSweep& sweep);

}  // namespace hemoprior

#endif  // HEMOPRIOR_REPORT_SWEEP_H_

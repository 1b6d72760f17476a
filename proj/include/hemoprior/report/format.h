#ifndef HEMOPRIOR_REPORT_FORMAT_H_
#define HEMOPRIOR_REPORT_FORMAT_H_

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include <json.hpp>

namespace hemoprior {

inline constexpr std::string_view kToolVersion = "hemoprior 0.1.0";

// Human-readable float: 6 significant digits ("%.6g"). nullopt -> "NA".
std::string Sig6(double v);
std::string Sig6(const std::optional<double>& v);
// Fixed decimals, e.g. Fixed(0.05, 3) = "0.050"; a leading sign with
// signed = true ("+0.050", "-0.024").
std::string Fixed(double v, int decimals, bool signed_ = false);

enum class OutputFormat { kJson, kCsv, kMd, kSvg };
using FormatSet = std::set<OutputFormat>;

// Comma-separated subset of json,csv,md,svg.
FormatSet ParseFormats(std::string_view text);

// Provenance block embedded in every output: the invoking configuration and,
// when one applies, the split fingerprint.
struct Provenance {
  nlohmann::json config = nlohmann::json::object();
  std::optional<std::string> split_fingerprint;

  nlohmann::json ToJson() const;
  // Compact single-line JSON for comment headers.
  std::string Compact() const;
};

// Pretty JSON with sorted keys and a trailing newline.
void WriteJsonFile(const std::filesystem::path& path, const nlohmann::json& j);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);
nlohmann::json ReadJsonFile(const std::filesystem::path& path);

std::string CsvEscape(std::string_view s);

}  // namespace hemoprior

#endif  // HEMOPRIOR_REPORT_FORMAT_H_

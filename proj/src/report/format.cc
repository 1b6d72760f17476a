#include "hemoprior/report/format.h"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "hemoprior/errors.h"

namespace hemoprior {

std::string Sig6(double v) {
  if (std::isnan(v)) return "NA";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string Sig6(const std::optional<double>& v) { return v ? Sig6(*v) : "NA"; }

std::string Fixed(double v, int decimals, bool signed_) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), signed_ ? "%+.*f" : "%.*f", decimals, v);
  return buf;
}

FormatSet ParseFormats(std::string_view text) {
  FormatSet out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    if (item == "json") {
      out.insert(OutputFormat::kJson);
    } else if (item == "csv") {
      out.insert(OutputFormat::kCsv);
    } else if (item == "md") {
      out.insert(OutputFormat::kMd);
    } else if (item == "svg") {
      out.insert(OutputFormat::kSvg);
    } else {
      throw ValidationError("unknown output format '" + std::string(item) +
                            "' (expected json, csv, md, svg)");
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ValidationError("no output formats selected");
  return out;
}

nlohmann::json Provenance::ToJson() const {
  nlohmann::json j;
  j["config"] = config;
  j["tool"] = std::string(kToolVersion);
  if (split_fingerprint) j["split_fingerprint"] = *split_fingerprint;
  return j;
}

std::string Provenance::Compact() const { return ToJson().dump(); }

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw ValidationError("write failed: " + path.string());
}

void WriteJsonFile(const std::filesystem::path& path, const nlohmann::json& j) {
  WriteTextFile(path, j.dump(2) + "\n");
}

nlohmann::json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open: " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::string CsvEscape(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace hemoprior

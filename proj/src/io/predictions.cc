#include "hemoprior/io/predictions.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hemoprior/errors.h"

namespace hemoprior {

namespace {

constexpr double kProbabilitySumTolerance = 1e-4;
constexpr std::size_t kMaxListedOffenders = 20;

std::string ShortestDouble(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Accumulates row-level problems so a single error lists every offender.
class Offenders {
 public:
  void Add(std::string msg) {
    ++count_;
    if (messages_.size() < kMaxListedOffenders) messages_.push_back(std::move(msg));
  }
  void ThrowIfAny(std::string_view what) const {
    if (count_ == 0) return;
    std::ostringstream os;
    os << what << ": " << count_ << " problem(s)";
    for (const auto& m : messages_) os << "\n  " << m;
    if (count_ > messages_.size()) os << "\n  ... (" << count_ - messages_.size() << " more)";
    throw ValidationError(os.str());
  }

 private:
  std::size_t count_ = 0;
  std::vector<std::string> messages_;
};

std::vector<std::string> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string CsvField(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

bool ParseDouble(std::string_view s, double* out) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto res = std::from_chars(s.data(), s.data() + s.size(), *out);
  return res.ec == std::errc() && res.ptr == s.data() + s.size();
}

std::vector<std::string_view> Lines(std::string_view text) {
  std::vector<std::string_view> lines;
  if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::string CsvHeader() {
  std::string h = "frame_id,video_id,true_label";
  char buf[16];
  for (int c = 0; c < kNumClasses; ++c) {
    std::snprintf(buf, sizeof(buf), ",score_%02d", c);
    h += buf;
  }
  return h;
}

PredictionSet ParseCsv(std::string_view text, ScoreKind kind) {
  PredictionSet set;
  set.score_kind = kind;
  auto lines = Lines(text);
  if (lines.empty()) throw ValidationError("prediction CSV is empty");
  auto header = SplitCsvLine(lines[0]);
  const auto expected = SplitCsvLine(CsvHeader());
  if (header != expected) {
    throw ValidationError("prediction CSV header mismatch; expected '" + CsvHeader() + "'");
  }
  Offenders offenders;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (lines[ln].empty()) continue;
    const std::string where = "line " + std::to_string(ln + 1);
    auto fields = SplitCsvLine(lines[ln]);
    if (fields.size() < 3) {
      offenders.Add(where + ": expected at least 3 fields");
      continue;
    }
    PredictionRecord rec;
    rec.frame_id = fields[0];
    rec.video_id = fields[1];
    auto idx = ClassIndex(fields[2]);
    if (!idx) {
      offenders.Add(where + ": unknown class name '" + fields[2] + "'");
      continue;
    }
    rec.true_label = *idx;
    const std::size_t arity = fields.size() - 3;
    if (arity != kNumClasses) {
      offenders.Add(where + ": score arity " + std::to_string(arity) + " != " +
                    std::to_string(kNumClasses));
      continue;
    }
    bool ok = true;
    for (int c = 0; c < kNumClasses; ++c) {
      if (!ParseDouble(fields[3 + static_cast<std::size_t>(c)], &rec.scores[c])) {
        offenders.Add(where + ": unparsable score_" + std::to_string(c));
        ok = false;
        break;
      }
    }
    if (ok) set.records.push_back(std::move(rec));
  }
  offenders.ThrowIfAny("invalid prediction CSV");
  return set;
}

PredictionSet ParseJsonl(std::string_view text, ScoreKind kind) {
  PredictionSet set;
  set.score_kind = kind;
  Offenders offenders;
  auto lines = Lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    if (lines[ln].find_first_not_of(" \t") == std::string_view::npos) continue;
    const std::string where = "line " + std::to_string(ln + 1);
    try {
      auto obj = nlohmann::json::parse(lines[ln]);
      PredictionRecord rec;
      rec.frame_id = obj.at("frame_id").get<std::string>();
      rec.video_id = obj.at("video_id").get<std::string>();
      const auto name = obj.at("true_label").get<std::string>();
      auto idx = ClassIndex(name);
      if (!idx) {
        offenders.Add(where + ": unknown class name '" + name + "'");
        continue;
      }
      rec.true_label = *idx;
      const auto& scores = obj.at("scores");
      if (!scores.is_array() || scores.size() != kNumClasses) {
        offenders.Add(where + ": score arity " +
                      std::to_string(scores.is_array() ? scores.size() : 0) + " != " +
                      std::to_string(kNumClasses));
        continue;
      }
      for (int c = 0; c < kNumClasses; ++c) rec.scores[c] = scores[c].get<double>();
      set.records.push_back(std::move(rec));
    } catch (const nlohmann::json::exception& e) {
      offenders.Add(where + ": " + e.what());
    }
  }
  offenders.ThrowIfAny("invalid prediction JSONL");
  return set;
}

}  // namespace

ScoreKind ParseScoreKind(std::string_view s) {
  if (s == "logits") return ScoreKind::kLogits;
  if (s == "probabilities") return ScoreKind::kProbabilities;
  throw ValidationError("score kind must be 'logits' or 'probabilities', got '" +
                        std::string(s) + "'");
}

std::string_view ToString(ScoreKind kind) {
  return kind == ScoreKind::kLogits ? "logits" : "probabilities";
}

DumpFormat ParseDumpFormat(std::string_view s) {
  if (s == "csv") return DumpFormat::kCsv;
  if (s == "jsonl") return DumpFormat::kJsonl;
  throw ValidationError("dump format must be 'csv' or 'jsonl', got '" + std::string(s) + "'");
}

DumpFormat FormatFromPath(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv") return DumpFormat::kCsv;
  if (ext == ".jsonl" || ext == ".json") return DumpFormat::kJsonl;
  throw ValidationError("cannot infer dump format from extension: " + path.string());
}

void PredictionSet::Validate() const {
  Offenders offenders;
  std::map<std::string_view, std::size_t> seen;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    const std::string where = "record " + std::to_string(i) + " (" + r.frame_id + ")";
    if (r.true_label < 0 || r.true_label >= kNumClasses) {
      offenders.Add(where + ": label out of range");
    }
    if (!std::all_of(r.scores.begin(), r.scores.end(), [](double v) { return std::isfinite(v); })) {
      offenders.Add(where + ": non-finite score");
    } else if (score_kind == ScoreKind::kProbabilities) {
      double sum = 0.0;
      for (double v : r.scores) sum += v;
      if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
        offenders.Add(where + ": probabilities sum to " + ShortestDouble(sum));
      }
    }
    auto [it, inserted] = seen.emplace(r.frame_id, i);
    if (!inserted) {
      offenders.Add("duplicate frame_id '" + r.frame_id + "' (records " +
                    std::to_string(it->second) + " and " + std::to_string(i) + ")");
    }
  }
  offenders.ThrowIfAny("invalid prediction set");
}

ScoreVector Probabilities(const ScoreVector& scores, ScoreKind kind) {
  if (kind == ScoreKind::kProbabilities) return scores;
  const double mx = *std::max_element(scores.begin(), scores.end());
  ScoreVector p;
  double sum = 0.0;
  for (int c = 0; c < kNumClasses; ++c) {
    p[c] = std::exp(scores[c] - mx);
    sum += p[c];
  }
  for (double& v : p) v /= sum;
  return p;
}

int Argmax(const ScoreVector& scores) {
  return static_cast<int>(std::max_element(scores.begin(), scores.end()) - scores.begin());
}

PredictionSet ParsePredictions(std::string_view text, DumpFormat format, ScoreKind kind) {
  PredictionSet set = format == DumpFormat::kCsv ? ParseCsv(text, kind) : ParseJsonl(text, kind);
  set.Validate();
  return set;
}

std::string SerializePredictions(const PredictionSet& set, DumpFormat format) {
  std::string out;
  if (format == DumpFormat::kCsv) {
    out = CsvHeader() + "\n";
    for (const auto& r : set.records) {
      out += CsvField(r.frame_id) + "," + CsvField(r.video_id) + "," +
             CsvField(ClassName(r.true_label));
      for (double v : r.scores) out += "," + ShortestDouble(v);
      out += "\n";
    }
    return out;
  }
  for (const auto& r : set.records) {
    nlohmann::ordered_json obj;
    obj["frame_id"] = r.frame_id;
    obj["video_id"] = r.video_id;
    obj["true_label"] = std::string(ClassName(r.true_label));
    obj["scores"] = r.scores;
    out += obj.dump() + "\n";
  }
  return out;
}

PredictionSet LoadPredictions(const std::filesystem::path& path, DumpFormat format,
                              ScoreKind kind) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open prediction dump: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return ParsePredictions(ss.str(), format, kind);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

void WritePredictions(const std::filesystem::path& path, const PredictionSet& set,
                      DumpFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot open for writing: " + path.string());
  out << SerializePredictions(set, format);
}

}  // namespace hemoprior

#include "escher/metrics.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>

#include "escher/check.h"
#include "json.hpp"

namespace escher {

std::optional<double> PopulationVariance(std::vector<double> values) {
  const size_t n = values.size();
  if (n < 2) return std::nullopt;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / static_cast<double>(n);
  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  return sq / static_cast<double>(n);
}

EstimateLog::EstimateLog(int logging_rate) : logging_rate_(logging_rate) {
  ESCHER_CHECK_GE(logging_rate, 1);
}

void EstimateLog::BeginIteration() {
  Finish();
  open_ = true;
  open_count_ = 0;
  counter_ = 0;
  open_estimates_.clear();
}

void EstimateLog::Add(double estimate) {
  ESCHER_CHECK(open_);
  if (total_count_ == 0) {
    min_ = estimate;
    max_ = estimate;
  } else {
    min_ = std::min(min_, estimate);
    max_ = std::max(max_, estimate);
  }
  ++total_count_;
  ++open_count_;
  if (counter_ % logging_rate_ == 0) open_estimates_.push_back(estimate);
  ++counter_;
}

void EstimateLog::Finish() {
  if (!open_) return;
  variances_.push_back(PopulationVariance(std::move(open_estimates_)));
  counts_.push_back(open_count_);
  open_estimates_.clear();
  open_ = false;
}

const std::vector<std::optional<double>>& EstimateLog::IterationVariances()
    const {
  ESCHER_CHECK(!open_);
  return variances_;
}

const std::vector<int64_t>& EstimateLog::IterationCounts() const {
  ESCHER_CHECK(!open_);
  return counts_;
}

int EstimateLog::num_iterations() const {
  return static_cast<int>(variances_.size()) + (open_ ? 1 : 0);
}

VarianceReport WindowedVariance(const EstimateLog& log, int window) {
  return WindowedVariance(log.IterationVariances(), window);
}

VarianceReport WindowedVariance(
    const std::vector<std::optional<double>>& per_iteration, int window) {
  if (window < 1) throw UsageError("variance window must be >= 1");
  VarianceReport report;
  report.per_iteration = per_iteration;
  report.window = window;
  const int first = std::min<int>(window, static_cast<int>(per_iteration.size()));
  double sum = 0.0;
  for (int t = 0; t < first; ++t) {
    if (per_iteration[t].has_value()) {
      sum += *per_iteration[t];
      ++report.iterations_used;
    }
  }
  report.partial = report.iterations_used < window;
  if (report.iterations_used > 0) {
    report.windowed_mean = sum / report.iterations_used;
  }
  return report;
}

namespace {

constexpr const char* kSeriesHeader =
    "iteration,infosets_visited_cumulative,exploitability,iteration_variance";

std::string OptionalField(const std::optional<double>& value) {
  return value.has_value() ? FormatDouble17(*value) : std::string();
}

std::vector<std::string> SplitFields(const std::string& line, char sep) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double ParseDoubleField(const std::string& text, int line_number) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || text.empty()) {
    throw ConfigError("series line " + std::to_string(line_number) +
                      ": bad float '" + text + "'");
  }
  return value;
}

int64_t ParseIntField(const std::string& text, int line_number) {
  char* end = nullptr;
  const long long value = std::strtoll(text.c_str(), &end, 10);
  if (end != text.c_str() + text.size() || text.empty()) {
    throw ConfigError("series line " + std::to_string(line_number) +
                      ": bad integer '" + text + "'");
  }
  return value;
}

}  // namespace

std::string SeriesToCsv(const std::vector<SeriesRow>& rows) {
  std::string out = kSeriesHeader;
  out.push_back('\n');
  for (const SeriesRow& row : rows) {
    out += std::to_string(row.iteration);
    out.push_back(',');
    out += std::to_string(row.infosets_visited);
    out.push_back(',');
    out += OptionalField(row.exploitability);
    out.push_back(',');
    out += OptionalField(row.iteration_variance);
    out.push_back('\n');
  }
  return out;
}

std::vector<SeriesRow> ParseSeriesCsv(const std::string& text) {
  std::vector<std::string> lines;
  size_t start = 0;
  while (start < text.size()) {
    const size_t pos = text.find('\n', start);
    if (pos == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
  if (lines.empty() || lines[0] != kSeriesHeader) {
    throw ConfigError("series file missing header '" +
                      std::string(kSeriesHeader) + "'");
  }
  std::vector<SeriesRow> rows;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::vector<std::string> fields = SplitFields(lines[i], ',');
    if (fields.size() != 4) {
      throw ConfigError("series line " + std::to_string(i + 1) + ": expected " +
                        "4 fields, got " + std::to_string(fields.size()));
    }
    SeriesRow row;
    row.iteration = static_cast<int>(ParseIntField(fields[0], i + 1));
    row.infosets_visited = ParseIntField(fields[1], i + 1);
    if (!fields[2].empty()) {
      row.exploitability = ParseDoubleField(fields[2], i + 1);
    }
    if (!fields[3].empty()) {
      row.iteration_variance = ParseDoubleField(fields[3], i + 1);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string ManifestToJson(const RunManifest& manifest) {
  nlohmann::json j;
  j["version"] = manifest.version;
  j["game"] = manifest.game;
  j["algorithm"] = manifest.algorithm;
  j["seed"] = manifest.seed;
  nlohmann::json config =
      nlohmann::json::parse(manifest.config_json, nullptr, false);
  if (config.is_discarded()) {
    j["config"] = manifest.config_json;
  } else {
    j["config"] = config;
  }
  j["started_at"] = manifest.started_at;
  j["finished_at"] = manifest.finished_at;
  j["output_files"] = manifest.output_files;
  return j.dump(2) + "\n";
}

RunManifest ManifestFromJson(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("manifest is not valid JSON");
  RunManifest manifest;
  manifest.version = j.at("version").get<std::string>();
  manifest.game = j.at("game").get<std::string>();
  manifest.algorithm = j.at("algorithm").get<std::string>();
  manifest.seed = j.at("seed").get<uint64_t>();
  const nlohmann::json& config = j.at("config");
  manifest.config_json =
      config.is_string() ? config.get<std::string>() : config.dump();
  manifest.started_at = j.at("started_at").get<std::string>();
  manifest.finished_at = j.at("finished_at").get<std::string>();
  manifest.output_files =
      j.at("output_files").get<std::vector<std::string>>();
  return manifest;
}

std::string FormatDouble17(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string UtcTimestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

namespace {

void WriteFileOrThrow(const std::filesystem::path& path,
                      const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) FatalError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) FatalError("failed writing " + path.string());
}

}  // namespace

void EmitRunOutputs(const std::string& dir, const std::vector<SeriesRow>& rows,
                    RunManifest manifest) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) FatalError("cannot create " + dir + ": " + ec.message());
  manifest.output_files = {"series.csv", "manifest.json"};
  const std::filesystem::path base(dir);
  WriteFileOrThrow(base / "series.csv", SeriesToCsv(rows));
  WriteFileOrThrow(base / "manifest.json", ManifestToJson(manifest));
}

}  // namespace escher

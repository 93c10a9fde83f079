#ifndef ESCHER_METRICS_H_
#define ESCHER_METRICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace escher {

// Population variance. Values are sorted before summing so the result is
// exactly invariant to input ordering. Fewer than 2 values -> nullopt.
std::optional<double> PopulationVariance(std::vector<double> values);

// Per-iteration stream of instantaneous regret estimates. Every estimate is
// counted and folded into the global min/max; only every `logging_rate`-th
// one is retained for the variance, so decimation changes no solver state.
class EstimateLog {
 public:
  explicit EstimateLog(int logging_rate = 1);

  void BeginIteration();  // finalizes any open iteration first
  void Add(double estimate);
  void Finish();          // finalizes the last open iteration; idempotent

  // Valid after Finish (or before the first BeginIteration).
  const std::vector<std::optional<double>>& IterationVariances() const;
  const std::vector<int64_t>& IterationCounts() const;

  int num_iterations() const;
  int64_t total_count() const { return total_count_; }
  // Extremes over every estimate ever added; 0 when none were.
  double min_estimate() const { return total_count_ > 0 ? min_ : 0.0; }
  double max_estimate() const { return total_count_ > 0 ? max_ : 0.0; }
  int logging_rate() const { return logging_rate_; }

 private:
  int logging_rate_;
  int64_t counter_ = 0;
  int64_t total_count_ = 0;
  double min_ = 0.0;
  double max_ = 0.0;
  bool open_ = false;
  int64_t open_count_ = 0;
  std::vector<double> open_estimates_;
  std::vector<std::optional<double>> variances_;
  std::vector<int64_t> counts_;
};

// Mean of the per-iteration variances over the first `window` iterations.
// Iterations whose variance is undefined (fewer than 2 estimates) are
// skipped; `partial` marks reports built from fewer than `window` defined
// variances.
struct VarianceReport {
  std::vector<std::optional<double>> per_iteration;
  int window = 0;
  int iterations_used = 0;
  bool partial = false;
  std::optional<double> windowed_mean;
};

VarianceReport WindowedVariance(const EstimateLog& log, int window);
VarianceReport WindowedVariance(
    const std::vector<std::optional<double>>& per_iteration, int window);

// One row of the per-run time series. `exploitability` is present only on
// iterations where the exact evaluation was scheduled; `iteration_variance`
// is absent when the iteration produced fewer than 2 estimates.
struct SeriesRow {
  int iteration = 0;
  int64_t infosets_visited = 0;  // cumulative over training
  std::optional<double> exploitability;
  std::optional<double> iteration_variance;

  friend bool operator==(const SeriesRow&, const SeriesRow&) = default;
};

// CSV with the header row
// iteration,infosets_visited_cumulative,exploitability,iteration_variance
// and 17-significant-digit floats; absent optionals serialize as empty
// fields. ParseSeriesCsv inverts SeriesToCsv exactly.
std::string SeriesToCsv(const std::vector<SeriesRow>& rows);
std::vector<SeriesRow> ParseSeriesCsv(const std::string& text);

struct RunManifest {
  std::string version;
  std::string game;
  std::string algorithm;
  uint64_t seed = 0;
  std::string config_json;  // resolved solver/run configuration
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> output_files;
};

std::string ManifestToJson(const RunManifest& manifest);
RunManifest ManifestFromJson(const std::string& text);

// "%.17g": shortest decimal form that round-trips a double exactly.
std::string FormatDouble17(double value);
// Current time as an ISO-8601 UTC string, seconds resolution.
std::string UtcTimestamp();

// Creates `dir` if needed and writes series.csv and manifest.json there,
// recording both names in the manifest. I/O failures raise with the path.
void EmitRunOutputs(const std::string& dir, const std::vector<SeriesRow>& rows,
                    RunManifest manifest);

}  // namespace escher

#endif  // ESCHER_METRICS_H_

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <vector>

#include "doctest.h"
#include "escher/check.h"
#include "escher/metrics.h"
#include "escher/rng.h"

namespace escher {
namespace {

TEST_CASE("population variance") {
  CHECK(!PopulationVariance({}).has_value());
  CHECK(!PopulationVariance({4.2}).has_value());
  CHECK(PopulationVariance({1.0, 1.0, 1.0}) == 0.0);
  CHECK(PopulationVariance({0.0, 2.0}) == 1.0);
  CHECK(PopulationVariance({1.0, 2.0, 3.0, 4.0}) == 1.25);
  SUBCASE("exactly invariant to input order") {
    Rng rng(3);
    std::vector<double> values(101);
    for (double& v : values) v = rng.UniformDouble() * 10.0 - 5.0;
    std::vector<double> shuffled = values;
    for (size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[rng.UniformInt(static_cast<int>(i))]);
    }
    CHECK(*PopulationVariance(values) == *PopulationVariance(shuffled));
  }
}

TEST_CASE("estimate log tracks per-iteration variance and global extremes") {
  EstimateLog log;
  log.BeginIteration();
  log.Add(1.0);
  log.Add(3.0);
  log.BeginIteration();  // closes the first iteration
  log.Add(-2.0);
  log.BeginIteration();
  log.Finish();          // empty third iteration
  log.Finish();          // idempotent
  REQUIRE(log.num_iterations() == 3);
  CHECK(log.IterationVariances()[0] == 1.0);
  CHECK(!log.IterationVariances()[1].has_value());
  CHECK(!log.IterationVariances()[2].has_value());
  CHECK(log.IterationCounts() == std::vector<int64_t>{2, 1, 0});
  CHECK(log.total_count() == 3);
  CHECK(log.min_estimate() == -2.0);
  CHECK(log.max_estimate() == 3.0);
}

TEST_CASE("logging rate decimates retained estimates but not counts") {
  EstimateLog dense(1);
  EstimateLog sparse(3);
  for (EstimateLog* log : {&dense, &sparse}) {
    log->BeginIteration();
    for (int i = 0; i < 12; ++i) log->Add(static_cast<double>(i));
    log->Finish();
  }
  CHECK(dense.IterationCounts() == sparse.IterationCounts());
  CHECK(dense.min_estimate() == sparse.min_estimate());
  CHECK(dense.max_estimate() == sparse.max_estimate());
  // Retained samples differ, so the variances generally do too.
  CHECK(*dense.IterationVariances()[0] != *sparse.IterationVariances()[0]);
}

TEST_CASE("windowed variance averages the leading iterations") {
  std::vector<std::optional<double>> series = {2.0, 4.0, std::nullopt, 6.0,
                                               8.0, 100.0};
  SUBCASE("undefined entries are skipped and flagged") {
    const VarianceReport report = WindowedVariance(series, 5);
    CHECK(report.window == 5);
    CHECK(report.iterations_used == 4);
    CHECK(report.partial);
    CHECK(*report.windowed_mean == 5.0);
  }
  SUBCASE("fully defined window is not partial") {
    const VarianceReport report = WindowedVariance(series, 2);
    CHECK(report.iterations_used == 2);
    CHECK(!report.partial);
    CHECK(*report.windowed_mean == 3.0);
  }
  SUBCASE("window of one takes the first iteration") {
    const VarianceReport report = WindowedVariance(series, 1);
    CHECK(*report.windowed_mean == 2.0);
    CHECK(!report.partial);
  }
  SUBCASE("short series are reported as partial") {
    const VarianceReport report =
        WindowedVariance({std::optional<double>(3.0)}, 5);
    CHECK(report.partial);
    CHECK(report.iterations_used == 1);
    CHECK(*report.windowed_mean == 3.0);
  }
  SUBCASE("identical variances average to themselves") {
    const VarianceReport report = WindowedVariance(
        std::vector<std::optional<double>>{7.5, 7.5, 7.5, 7.5, 7.5}, 5);
    CHECK(*report.windowed_mean == 7.5);
  }
  SUBCASE("no defined variance yields no mean") {
    const VarianceReport report = WindowedVariance(
        std::vector<std::optional<double>>{std::nullopt, std::nullopt}, 5);
    CHECK(!report.windowed_mean.has_value());
    CHECK(report.partial);
  }
}

TEST_CASE("series round-trip through csv") {
  std::vector<SeriesRow> rows;
  SeriesRow a;
  a.iteration = 1;
  a.infosets_visited = 12;
  a.iteration_variance = 0.5;
  SeriesRow b;
  b.iteration = 2;
  b.infosets_visited = 25;
  b.exploitability = 0.9166666666666666;
  rows = {a, b};
  const std::string csv = SeriesToCsv(rows);
  CHECK(csv.substr(0, csv.find('\n')) ==
        "iteration,infosets_visited_cumulative,exploitability,"
        "iteration_variance");
  const std::vector<SeriesRow> parsed = ParseSeriesCsv(csv);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0] == a);
  CHECK(parsed[1] == b);
  SUBCASE("an empty series is only the header") {
    const std::string empty = SeriesToCsv({});
    CHECK(ParseSeriesCsv(empty).empty());
    CHECK(empty.find('\n') == empty.size() - 1);
  }
  SUBCASE("formatting preserves 17 significant digits") {
    CHECK(csv.find("0.91666666666666663") != std::string::npos);
  }
  SUBCASE("malformed rows name the line") {
    const std::string bad =
        "iteration,infosets_visited_cumulative,exploitability,"
        "iteration_variance\n1,2,oops,\n";
    try {
      ParseSeriesCsv(bad);
      FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
}

TEST_CASE("manifest round-trip through json") {
  RunManifest manifest;
  manifest.version = "escher test";
  manifest.game = "kuhn_poker";
  manifest.algorithm = "escher";
  manifest.seed = 42;
  manifest.config_json = "{\n  \"algorithm\": \"escher\"\n}\n";
  manifest.started_at = "2026-01-01T00:00:00Z";
  manifest.finished_at = "2026-01-01T00:00:05Z";
  manifest.output_files = {"series.csv", "manifest.json"};
  const std::string json = ManifestToJson(manifest);
  const RunManifest parsed = ManifestFromJson(json);
  CHECK(parsed.version == manifest.version);
  CHECK(parsed.game == manifest.game);
  CHECK(parsed.algorithm == manifest.algorithm);
  CHECK(parsed.seed == manifest.seed);
  CHECK(parsed.started_at == manifest.started_at);
  CHECK(parsed.finished_at == manifest.finished_at);
  CHECK(parsed.output_files == manifest.output_files);
  CHECK_THROWS_AS(ManifestFromJson("not json"), ConfigError);
}

TEST_CASE("run outputs land in the requested directory") {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "escher_metrics_test";
  std::filesystem::remove_all(dir);
  SeriesRow row;
  row.iteration = 1;
  row.infosets_visited = 3;
  RunManifest manifest;
  manifest.version = "escher test";
  manifest.game = "kuhn_poker";
  manifest.algorithm = "escher";
  EmitRunOutputs(dir.string(), {row}, manifest);
  CHECK(std::filesystem::exists(dir / "series.csv"));
  CHECK(std::filesystem::exists(dir / "manifest.json"));
  std::ifstream series(dir / "series.csv");
  std::string header;
  std::getline(series, header);
  CHECK(header ==
        "iteration,infosets_visited_cumulative,exploitability,"
        "iteration_variance");
  const RunManifest parsed = ManifestFromJson([&] {
    std::ifstream in(dir / "manifest.json");
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
  }());
  CHECK(parsed.output_files ==
        std::vector<std::string>{"series.csv", "manifest.json"});
  std::filesystem::remove_all(dir);
}

TEST_CASE("timestamps are utc iso-8601") {
  const std::string stamp = UtcTimestamp();
  REQUIRE(stamp.size() == 20);
  CHECK(stamp[4] == '-');
  CHECK(stamp[7] == '-');
  CHECK(stamp[10] == 'T');
  CHECK(stamp[13] == ':');
  CHECK(stamp[16] == ':');
  CHECK(stamp.back() == 'Z');
}

}  // namespace
}  // namespace escher

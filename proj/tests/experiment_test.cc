#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "escher/check.h"
#include "escher/experiment.h"
#include "escher/metrics.h"
#include "escher/solver.h"

namespace escher {
namespace {

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

TEST_CASE("game specs parse, normalize and round-trip") {
  CHECK(ParseGameSpec("kuhn_poker").name == "kuhn_poker");
  CHECK(ParseGameSpec("kuhn_poker").parameters.empty());
  CHECK(GameSpecString(ParseGameSpec("leduc_poker")) == "leduc_poker");

  const GameSpec full = ParseGameSpec("battleship(2,2,[2],[2],3,false)");
  CHECK(GameSpecString(full) == "battleship(2,2,[2],[2],3,false)");
  CHECK(ParseGameSpec(GameSpecString(full)) == full);
  CHECK(full.parameters.at("ship_sizes") == "[2]");
  CHECK(full.parameters.at("allow_repeated_shots") == "false");

  SUBCASE("omitted positions take defaults") {
    const GameSpec partial = ParseGameSpec("battleship(3,2)");
    CHECK(GameSpecString(partial) == "battleship(3,2,[2],[2],3,false)");
  }
  SUBCASE("whitespace is tolerated") {
    const GameSpec spaced =
        ParseGameSpec("  battleship( 2 , 2 , [2] , [2] , 3 , true )  ");
    CHECK(GameSpecString(spaced) == "battleship(2,2,[2],[2],3,true)");
  }
  SUBCASE("multi-ship lists keep bracket nesting intact") {
    const GameSpec two = ParseGameSpec("battleship(3,2,[1,2],[1,3],2,false)");
    CHECK(two.parameters.at("ship_sizes") == "[1,2]");
    CHECK(two.parameters.at("ship_values") == "[1,3]");
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(ParseGameSpec(""), ConfigError);
    CHECK_THROWS_AS(ParseGameSpec("battleship(2,2"), ConfigError);
    CHECK_THROWS_AS(ParseGameSpec("kuhn_poker(3)"), ConfigError);
    CHECK_THROWS_AS(ParseGameSpec("battleship(1,1,[1],[1],1,false,9)"),
                    ConfigError);
    CHECK_THROWS_AS(ParseGameSpec("battleship(x)"), ConfigError);
  }
}

TEST_CASE("a minimal config gets all documented defaults") {
  const ExperimentSpec spec = ParseConfig(
      R"({"game": "kuhn_poker", "algo": "escher", "iterations": 1000})");
  REQUIRE(spec.games.size() == 1);
  CHECK(spec.games[0].name == "kuhn_poker");
  REQUIRE(spec.algorithms.size() == 1);
  const SolverConfig& config = spec.algorithms[0];
  CHECK(config.algorithm == Algorithm::kEscher);
  CHECK(config.iterations == 1000);
  CHECK(config.trajectories_per_update == 1);
  CHECK(config.os_exploration_eps == 0.6);
  CHECK(config.averaging == AveragingScheme::kExact);
  CHECK(config.oracle_noise == 0.0);
  CHECK(!config.mode_override.has_value());
  const SamplingPolicySpec sampling = ResolveSampling(config);
  CHECK(sampling.kind == SamplingPolicySpec::Kind::kUniform);
  CHECK(spec.seeds == std::vector<uint64_t>{0});
  CHECK(spec.eval_every == 100);
  CHECK(spec.variance_window == 5);
  CHECK(spec.out_dir.empty());
  CHECK(spec.workers == 1);
  CHECK(spec.logging_rate == 1);
  // Outcome sampling defaults to its epsilon-greedy exploration instead.
  const ExperimentSpec os = ParseConfig(
      R"({"game": "kuhn_poker", "algo": "os_mccfr"})");
  CHECK(ResolveSampling(os.algorithms[0]).kind ==
        SamplingPolicySpec::Kind::kEpsilonMix);
  CHECK(ResolveSampling(os.algorithms[0]).epsilon == 0.6);
}

TEST_CASE("printing a parsed config is a fixed point") {
  const char* samples[] = {
      R"({"game": "kuhn_poker", "algo": "escher", "iterations": 20})",
      R"json({"games": ["kuhn_poker", "battleship(2,2,[2],[2],3,false)"],
          "algorithms": ["escher", "os_mccfr",
                         {"algorithm": "dream_oracle", "iterations": 7},
                         {"algorithm": "escher", "oracle_noise": 0.25,
                          "averaging": "sampled"},
                         {"algorithm": "escher",
                          "learned_value": {"mode": "monte_carlo",
                                            "rollouts": 100,
                                            "exploration_mix": 0.05}},
                         {"algorithm": "escher", "use_reach_weighting": true,
                          "sampling": {"kind": "epsilon_mix",
                                       "epsilon": 0.3}}],
          "seeds": [0, 1, 2], "iterations": 11, "eval_every": 5,
          "variance_window": 2, "workers": 2, "logging_rate": 4})json",
  };
  for (const char* text : samples) {
    CAPTURE(text);
    const ExperimentSpec spec = ParseConfig(text);
    const std::string printed = PrintConfig(spec);
    const ExperimentSpec reparsed = ParseConfig(printed);
    CHECK(PrintConfig(reparsed) == printed);
    CHECK(reparsed == ParseConfig(PrintConfig(reparsed)));
  }
}

TEST_CASE("algorithm entries accept objects with overrides") {
  const ExperimentSpec spec = ParseConfig(R"({
    "game": "kuhn_poker",
    "algorithms": [
      {"algorithm": "escher", "iterations": 5, "trajectories_per_update": 4,
       "oracle_noise": 0.5},
      {"algorithm": "escher",
       "learned_value": {"mode": "monte_carlo", "rollouts": 123}},
      {"algorithm": "escher", "use_bootstrap_baseline": true,
       "use_reach_weighting": true}
    ],
    "iterations": 9
  })");
  REQUIRE(spec.algorithms.size() == 3);
  CHECK(spec.algorithms[0].iterations == 5);
  CHECK(spec.algorithms[0].trajectories_per_update == 4);
  CHECK(ResolveMode(spec.algorithms[0]).value_source ==
        ValueSourceKind::kNoisy);
  CHECK(spec.algorithms[1].iterations == 9);
  CHECK(spec.algorithms[1].learned.rollouts == 123);
  CHECK(ResolveMode(spec.algorithms[1]).value_source ==
        ValueSourceKind::kLearned);
  CHECK(ResolveMode(spec.algorithms[2]) ==
        DefaultMode(Algorithm::kDreamOracle));
}

TEST_CASE("config errors name the offending field") {
  auto error_of = [](const char* text) {
    try {
      ParseConfig(text);
      return std::string();
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
  };
  CHECK(error_of(R"({"algo": "escher"})").find("game") != std::string::npos);
  CHECK(error_of(R"({"game": "kuhn_poker"})").find("algo") !=
        std::string::npos);
  CHECK(error_of(R"({"game": "kuhn_poker", "algo": "escher", "bogus": 1})")
            .find("bogus") != std::string::npos);
  CHECK(error_of(R"({"game": "kuhn_poker",
                     "algo": {"algorithm": "escher", "turbo": true}})")
            .find("turbo") != std::string::npos);
  CHECK(error_of(R"({"game": "kuhn_poker",
                     "algo": {"algorithm": "escher",
                              "os_exploration_eps": 1.5}})")
            .find("os_exploration_eps") != std::string::npos);
  CHECK(error_of(R"({"game": "kuhn_poker", "algo": "escher",
                     "eval_every": 0})")
            .find("eval_every") != std::string::npos);
  CHECK(error_of(R"({"game": "kuhn_poker", "algo": "escher",
                     "seeds": [0, -3]})")
            .find("seeds[1]") != std::string::npos);
  CHECK(error_of(R"({"game": "kuhn_poker", "algo": "escher",
                     "workers": "many"})")
            .find("workers") != std::string::npos);
  CHECK(error_of(R"({"game": "kuhn_poker",
                     "algo": {"algorithm": "escher",
                              "learned_value": {"mode": "magic"}}})")
            .find("learned_value.mode") != std::string::npos);
  CHECK(error_of(R"({"game": "kuhn_poker",
                     "algo": {"algorithm": "escher", "value_source": "oracle",
                              "learned_value": {"mode": "monte_carlo"}}})")
            .find("learned_value") != std::string::npos);
  CHECK(error_of(R"({"game": "kuhn_poker",
                     "algo": {"algorithm": "escher",
                              "sampling": {"kind": "psychic"}}})")
            .find("sampling.kind") != std::string::npos);
  CHECK(error_of("{") == "config is not valid JSON");
  CHECK(error_of("[1,2]").find("object") != std::string::npos);
  CHECK(error_of(R"({"game": "go", "algo": "escher"})").find("go") !=
        std::string::npos);
}

TEST_CASE("running a small grid fills results and files") {
  const std::filesystem::path out =
      std::filesystem::temp_directory_path() / "escher_experiment_test_grid";
  std::filesystem::remove_all(out);
  ExperimentSpec spec = ParseConfig(R"({
    "game": "kuhn_poker",
    "algorithms": ["escher", {"algorithm": "escher", "oracle_noise": 0.2}],
    "seeds": [0, 1],
    "iterations": 30,
    "eval_every": 10
  })");
  spec.out_dir = out.string();
  const ExperimentResult result = RunExperiment(spec);
  CHECK(result.all_ok);
  REQUIRE(result.runs.size() == 4);
  for (const RunResult& run : result.runs) {
    CHECK(run.ok);
    REQUIRE(run.series.size() == 30);
    for (const SeriesRow& row : run.series) {
      const bool scheduled = row.iteration % 10 == 0 || row.iteration == 30;
      CHECK(row.exploitability.has_value() == scheduled);
    }
    CHECK(run.final_exploitability.has_value());
    CHECK(run.windowed_variance.has_value());
    CHECK(run.infosets_visited > 0);
    CHECK(std::filesystem::exists(
        std::filesystem::path(run.output_dir) / "series.csv"));
    const RunManifest manifest = ManifestFromJson(
        Slurp(std::filesystem::path(run.output_dir) / "manifest.json"));
    CHECK(manifest.game == "kuhn_poker");
    CHECK(manifest.seed == run.seed);
    CHECK(manifest.algorithm == run.algorithm);
  }
  // Duplicate algorithm names get distinct labels and directories.
  CHECK(result.runs[0].algorithm == "escher");
  CHECK(result.runs[2].algorithm == "escher_2");
  CHECK(result.runs[0].output_dir != result.runs[2].output_dir);
  CHECK(result.summary.find("escher_2") != std::string::npos);
  CHECK(std::filesystem::exists(out / "summary.txt"));
  CHECK(Slurp(out / "summary.txt") == result.summary);
  std::filesystem::remove_all(out);
}

TEST_CASE("seeds are distinct but individually reproducible") {
  ExperimentSpec spec = ParseConfig(R"({
    "game": "kuhn_poker", "algo": "escher",
    "seeds": [0, 1, 2], "iterations": 25
  })");
  const ExperimentResult first = RunExperiment(spec);
  const ExperimentResult second = RunExperiment(spec);
  REQUIRE(first.runs.size() == 3);
  REQUIRE(second.runs.size() == 3);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(SeriesToCsv(first.runs[i].series) ==
          SeriesToCsv(second.runs[i].series));
  }
  CHECK(SeriesToCsv(first.runs[0].series) !=
        SeriesToCsv(first.runs[1].series));
  CHECK(SeriesToCsv(first.runs[1].series) !=
        SeriesToCsv(first.runs[2].series));
  CHECK(first.summary == second.summary);
}

TEST_CASE("removing grid cells leaves the remaining runs unchanged") {
  ExperimentSpec full = ParseConfig(R"({
    "game": "kuhn_poker",
    "algorithms": ["escher", "os_mccfr"],
    "seeds": [0, 1],
    "iterations": 20
  })");
  const ExperimentResult all = RunExperiment(full);
  REQUIRE(all.runs.size() == 4);

  ExperimentSpec single = full;
  single.algorithms = {full.algorithms[1]};
  single.seeds = {1};
  const ExperimentResult one = RunExperiment(single);
  REQUIRE(one.runs.size() == 1);
  for (const RunResult& run : all.runs) {
    if (run.algorithm == "os_mccfr" && run.seed == 1) {
      CHECK(SeriesToCsv(run.series) == SeriesToCsv(one.runs[0].series));
    }
  }
}

TEST_CASE("worker pools reproduce the sequential results") {
  ExperimentSpec spec = ParseConfig(R"({
    "game": "kuhn_poker",
    "algorithms": ["escher", "os_mccfr", "dream_oracle"],
    "seeds": [0, 1],
    "iterations": 15
  })");
  const ExperimentResult sequential = RunExperiment(spec);
  spec.workers = 4;
  const ExperimentResult parallel = RunExperiment(spec);
  REQUIRE(sequential.runs.size() == parallel.runs.size());
  for (size_t i = 0; i < sequential.runs.size(); ++i) {
    CHECK(sequential.runs[i].algorithm == parallel.runs[i].algorithm);
    CHECK(sequential.runs[i].seed == parallel.runs[i].seed);
    CHECK(SeriesToCsv(sequential.runs[i].series) ==
          SeriesToCsv(parallel.runs[i].series));
  }
  CHECK(sequential.summary == parallel.summary);
}

TEST_CASE("one failing run does not abort its siblings") {
  const std::filesystem::path out =
      std::filesystem::temp_directory_path() / "escher_experiment_test_fail";
  std::filesystem::remove_all(out);
  std::filesystem::create_directories(out);
  // Occupy one run's directory name with a plain file so only that run's
  // output emission fails.
  std::ofstream(out / "escher_kuhn_poker_s0").put('x');
  ExperimentSpec spec = ParseConfig(R"({
    "game": "kuhn_poker", "algo": "escher",
    "seeds": [0, 1], "iterations": 5
  })");
  spec.out_dir = out.string();
  const ExperimentResult result = RunExperiment(spec);
  CHECK(!result.all_ok);
  REQUIRE(result.runs.size() == 2);
  CHECK(!result.runs[0].ok);
  CHECK(!result.runs[0].error.empty());
  CHECK(result.runs[1].ok);
  CHECK(result.summary.find("failures:") != std::string::npos);
  CHECK(result.summary.find("seed 0") != std::string::npos);
  CHECK(std::filesystem::exists(out / "escher_kuhn_poker_s1" / "series.csv"));
  std::filesystem::remove_all(out);
}

TEST_CASE("experiment validation rejects empty or out-of-range fields") {
  ExperimentSpec spec;
  CHECK_THROWS_AS(ValidateExperiment(spec), ConfigError);
  spec.games.push_back(ParseGameSpec("kuhn_poker"));
  CHECK_THROWS_AS(ValidateExperiment(spec), ConfigError);
  spec.algorithms.push_back(SolverConfig{});
  ValidateExperiment(spec);
  spec.seeds.clear();
  CHECK_THROWS_AS(ValidateExperiment(spec), ConfigError);
  spec.seeds = {0};
  spec.variance_window = 0;
  CHECK_THROWS_AS(ValidateExperiment(spec), ConfigError);
  spec.variance_window = 5;
  spec.workers = 0;
  CHECK_THROWS_AS(ValidateExperiment(spec), ConfigError);
}

}  // namespace
}  // namespace escher

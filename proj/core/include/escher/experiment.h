#ifndef ESCHER_EXPERIMENT_H_
#define ESCHER_EXPERIMENT_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "escher/game.h"
#include "escher/metrics.h"
#include "escher/solver.h"

namespace escher {

// A game plus its parameters, parsed from forms like "kuhn_poker" or
// "battleship(2,2,[2],[2],3,false)" (board width, height, ship sizes, ship
// values, shots per player, repeated shots allowed).
struct GameSpec {
  std::string name;
  GameParameters parameters;

  friend bool operator==(const GameSpec&, const GameSpec&) = default;
};

GameSpec ParseGameSpec(const std::string& text);
// Canonical text form; ParseGameSpec(GameSpecString(g)) == g.
std::string GameSpecString(const GameSpec& spec);
std::shared_ptr<const Game> LoadGame(const GameSpec& spec);

// A full (algorithm x game x seed) grid. Each SolverConfig's seed and
// logging_rate fields are overridden per run by `seeds` and `logging_rate`.
struct ExperimentSpec {
  std::vector<GameSpec> games;
  std::vector<SolverConfig> algorithms;
  std::vector<uint64_t> seeds = {0};
  int eval_every = 100;     // iterations between exact exploitability evals
  int variance_window = 5;  // first-W-iterations variance window
  std::string out_dir;      // empty: keep results in memory only
  int workers = 1;
  int logging_rate = 1;

  friend bool operator==(const ExperimentSpec&, const ExperimentSpec&) =
      default;
};

// JSON configs. Accepted top-level keys: game | games, algo | algorithms,
// seeds, iterations (default for algorithm entries), eval_every,
// variance_window, out_dir, workers, logging_rate. Algorithm entries are
// either names or objects; see README for the object keys. Unknown keys
// raise ConfigError naming the offending field.
ExperimentSpec ParseConfig(const std::string& json_text);
// Canonical JSON with every field explicit; ParseConfig inverts it, and
// PrintConfig(ParseConfig(text)) is a fixed point.
std::string PrintConfig(const ExperimentSpec& spec);
// The per-run solver configuration as JSON (used for manifests).
std::string SolverConfigJson(const SolverConfig& config, bool include_seed);

void ValidateExperiment(const ExperimentSpec& spec);

struct RunResult {
  std::string game;
  std::string algorithm;
  uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::vector<SeriesRow> series;
  std::optional<double> windowed_variance;
  std::optional<double> final_exploitability;
  int64_t infosets_visited = 0;
  std::string output_dir;  // empty when nothing was written
};

struct ExperimentResult {
  std::vector<RunResult> runs;
  std::string summary;
  bool all_ok = true;
};

// Executes the grid with at most `workers` runs in flight. Failures are
// captured per run; sibling runs proceed. When out_dir is set, every run
// writes series.csv and manifest.json into its own subdirectory and the
// roll-up lands in out_dir/summary.txt.
ExperimentResult RunExperiment(const ExperimentSpec& spec);

// Roll-up with one row per game and one column per algorithm, reporting
// windowed variance and final exploitability as mean +/- std across seeds.
std::string SummaryTable(const ExperimentSpec& spec,
                         const std::vector<RunResult>& runs);

}  // namespace escher

#endif  // ESCHER_EXPERIMENT_H_

#include <cstdio>
#include <exception>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "escher/check.h"
#include "escher/experiment.h"
#include "escher/version.h"

namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw escher::ConfigError("cannot read config file " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Runs (algorithm x game x seed) experiment grids and reports "
               "windowed estimator variance and exploitability."};
  app.set_version_flag("--version", escher::kVersionString);

  std::string config_path;
  bool print_config = false;
  std::vector<std::string> games;
  std::vector<std::string> algos;
  int iterations = 0;
  std::vector<uint64_t> seeds;
  int eval_every = 0;
  int variance_window = 0;
  int trajectories = 0;
  double os_eps = 0.0;
  double oracle_noise = 0.0;
  bool use_bootstrap_baseline = false;
  bool use_reach_weighting = false;
  std::string value_source;
  std::string averaging;
  std::string out_dir;
  int workers = 0;
  int logging_rate = 0;

  app.add_option("--config", config_path, "JSON experiment config file")
      ->check(CLI::ExistingFile);
  app.add_flag("--print-config", print_config,
               "Print the resolved config as canonical JSON and exit");
  app.add_option("--game", games,
                 "Game, e.g. kuhn_poker, leduc_poker, liars_dice or "
                 "battleship(2,2,[2],[2],3,false); repeatable")
      ->delimiter(';');
  app.add_option("--algo", algos,
                 "Algorithm: cfr, os_mccfr, escher, dream_oracle, ablation1 "
                 "or ablation2; repeatable")
      ->delimiter(',');
  app.add_option("--iterations", iterations, "Training iterations per run");
  app.add_option("--seed,--seeds", seeds, "Seeds, one run per seed")
      ->delimiter(',');
  app.add_option("--eval-every", eval_every,
                 "Iterations between exact exploitability evaluations");
  app.add_option("--variance-window", variance_window,
                 "Number of leading iterations in the variance window");
  app.add_option("--trajectories-per-update", trajectories,
                 "Sampled trajectories per player update");
  app.add_option("--os-eps", os_eps,
                 "Epsilon for outcome sampling's exploration mix");
  app.add_option("--oracle-noise", oracle_noise,
                 "Relative noise amplitude added to oracle values");
  app.add_flag("--use-bootstrap-baseline,!--no-use-bootstrap-baseline",
               use_bootstrap_baseline,
               "Override the baseline-corrected bootstrapping flag");
  app.add_flag("--use-reach-weighting,!--no-use-reach-weighting",
               use_reach_weighting,
               "Override the 1/reach importance-weighting flag");
  app.add_option("--value-source", value_source,
                 "oracle, noisy, learned or terminal")
      ->check(CLI::IsMember({"oracle", "noisy", "learned", "terminal",
                             "terminal_rollout"}));
  app.add_option("--averaging", averaging, "exact or sampled")
      ->check(CLI::IsMember({"exact", "sampled"}));
  app.add_option("--out", out_dir,
                 "Output directory; one subdirectory per run plus summary.txt");
  app.add_option("--workers", workers, "Maximum concurrent runs");
  app.add_option("--logging-rate", logging_rate,
                 "Retain every n-th regret estimate for variance logging");

  CLI11_PARSE(app, argc, argv);

  try {
    escher::ExperimentSpec spec;
    if (!config_path.empty()) {
      spec = escher::ParseConfig(ReadFile(config_path));
    } else {
      if (games.empty()) games.push_back("kuhn_poker");
      if (algos.empty()) algos.push_back("escher");
    }
    if (!games.empty() && (config_path.empty() || app.count("--game"))) {
      spec.games.clear();
      for (const std::string& game : games) {
        spec.games.push_back(escher::ParseGameSpec(game));
      }
    }
    if (!algos.empty() && (config_path.empty() || app.count("--algo"))) {
      spec.algorithms.clear();
      for (const std::string& algo : algos) {
        escher::SolverConfig config;
        config.algorithm = escher::ParseAlgorithm(algo);
        spec.algorithms.push_back(config);
      }
    }
    if (app.count("--seed")) spec.seeds = seeds;
    if (app.count("--eval-every")) spec.eval_every = eval_every;
    if (app.count("--variance-window")) spec.variance_window = variance_window;
    if (app.count("--out")) spec.out_dir = out_dir;
    if (app.count("--workers")) spec.workers = workers;
    if (app.count("--logging-rate")) spec.logging_rate = logging_rate;

    for (escher::SolverConfig& config : spec.algorithms) {
      if (app.count("--iterations")) config.iterations = iterations;
      if (app.count("--trajectories-per-update")) {
        config.trajectories_per_update = trajectories;
      }
      if (app.count("--os-eps")) config.os_exploration_eps = os_eps;
      if (app.count("--oracle-noise")) config.oracle_noise = oracle_noise;
      if (app.count("--averaging")) {
        config.averaging = escher::ParseAveragingScheme(averaging);
      }
      const bool mode_flag_set = app.count("--use-bootstrap-baseline") ||
                                 app.count("--use-reach-weighting") ||
                                 app.count("--value-source");
      if (mode_flag_set) {
        escher::EstimatorMode mode = config.mode_override.value_or(
            escher::DefaultMode(config.algorithm));
        if (app.count("--use-bootstrap-baseline")) {
          mode.use_bootstrap_baseline = use_bootstrap_baseline;
        }
        if (app.count("--use-reach-weighting")) {
          mode.use_reach_weighting = use_reach_weighting;
        }
        if (app.count("--value-source")) {
          mode.value_source = escher::ParseValueSourceKind(value_source);
        }
        config.mode_override = mode;
      }
    }

    escher::ValidateExperiment(spec);
    if (print_config) {
      std::fputs(escher::PrintConfig(spec).c_str(), stdout);
      return 0;
    }

    const escher::ExperimentResult result = escher::RunExperiment(spec);
    std::fputs(result.summary.c_str(), stdout);
    if (!spec.out_dir.empty()) {
      std::printf("outputs written to %s\n", spec.out_dir.c_str());
    }
    return result.all_ok ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

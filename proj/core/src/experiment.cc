#include "escher/experiment.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <thread>

#include "escher/check.h"
#include "escher/game_tree.h"
#include "escher/values.h"
#include "escher/version.h"
#include "json.hpp"

namespace escher {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

std::string Trim(const std::string& text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
    ++begin;
  }
  while (end > begin &&
         std::isspace(static_cast<unsigned char>(text[end - 1]))) {
    --end;
  }
  return text.substr(begin, end - begin);
}

std::string StripSpaces(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

// Splits on commas that are not nested inside [] brackets.
std::vector<std::string> SplitTopLevel(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  int depth = 0;
  for (char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

std::string IntListString(const std::vector<int>& values) {
  std::string out = "[";
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += std::to_string(values[i]);
  }
  out.push_back(']');
  return out;
}

const char* const kBattleshipPositional[] = {
    "board_width", "board_height",      "ship_sizes",
    "ship_values", "num_shots",         "allow_repeated_shots"};

}  // namespace

GameSpec ParseGameSpec(const std::string& text) {
  const std::string trimmed = Trim(text);
  if (trimmed.empty()) throw ConfigError("game: name must not be empty");
  const size_t open = trimmed.find('(');
  GameSpec spec;
  if (open == std::string::npos) {
    spec.name = trimmed;
    return spec;
  }
  if (trimmed.back() != ')') {
    throw ConfigError("game: '" + trimmed + "' is missing a closing ')'");
  }
  spec.name = Trim(trimmed.substr(0, open));
  const std::string inner = trimmed.substr(open + 1, trimmed.size() - open - 2);
  if (spec.name != "battleship") {
    throw ConfigError("game: " + spec.name + " takes no parameters");
  }
  const std::vector<std::string> parts = SplitTopLevel(inner);
  if (parts.size() > 6) {
    throw ConfigError(
        "game: battleship takes at most 6 parameters "
        "(width, height, ship sizes, ship values, shots, repeated shots)");
  }
  GameParameters raw;
  for (size_t i = 0; i < parts.size(); ++i) {
    const std::string value = StripSpaces(parts[i]);
    if (value.empty()) {
      throw ConfigError("game: battleship parameter " + std::to_string(i + 1) +
                        " is empty");
    }
    raw[kBattleshipPositional[i]] = value;
  }
  // Normalize to the full named form so equal instances compare equal.
  spec.parameters["board_width"] =
      std::to_string(ParamInt(raw, "board_width", 2));
  spec.parameters["board_height"] =
      std::to_string(ParamInt(raw, "board_height", 2));
  spec.parameters["ship_sizes"] =
      IntListString(ParamIntList(raw, "ship_sizes", {2}));
  spec.parameters["ship_values"] =
      IntListString(ParamIntList(raw, "ship_values", {2}));
  spec.parameters["num_shots"] = std::to_string(ParamInt(raw, "num_shots", 3));
  spec.parameters["allow_repeated_shots"] =
      ParamBool(raw, "allow_repeated_shots", false) ? "true" : "false";
  return spec;
}

std::string GameSpecString(const GameSpec& spec) {
  if (spec.parameters.empty()) return spec.name;
  std::string out = spec.name + "(";
  for (size_t i = 0; i < 6; ++i) {
    if (i > 0) out.push_back(',');
    out += spec.parameters.at(kBattleshipPositional[i]);
  }
  out.push_back(')');
  return out;
}

std::shared_ptr<const Game> LoadGame(const GameSpec& spec) {
  return LoadGame(spec.name, spec.parameters);
}

namespace {

int JsonInt(const Json& value, const std::string& field) {
  if (!value.is_number_integer()) {
    throw ConfigError(field + ": expected an integer");
  }
  return value.get<int>();
}

double JsonDouble(const Json& value, const std::string& field) {
  if (!value.is_number()) {
    throw ConfigError(field + ": expected a number");
  }
  return value.get<double>();
}

bool JsonBool(const Json& value, const std::string& field) {
  if (!value.is_boolean()) {
    throw ConfigError(field + ": expected a boolean");
  }
  return value.get<bool>();
}

std::string JsonString(const Json& value, const std::string& field) {
  if (!value.is_string()) {
    throw ConfigError(field + ": expected a string");
  }
  return value.get<std::string>();
}

void RejectUnknownKeys(const Json& object, const std::string& context,
                       std::initializer_list<const char*> known) {
  for (const auto& item : object.items()) {
    bool found = false;
    for (const char* key : known) {
      if (item.key() == key) {
        found = true;
        break;
      }
    }
    if (!found) {
      throw ConfigError(context + ": unknown field '" + item.key() + "'");
    }
  }
}

SolverConfig ParseSolverConfigJson(const Json& entry, int default_iterations,
                                   const std::string& context) {
  if (entry.is_string()) {
    SolverConfig config;
    config.algorithm = ParseAlgorithm(entry.get<std::string>());
    config.iterations = default_iterations;
    return config;
  }
  if (!entry.is_object()) {
    throw ConfigError(context + ": expected an algorithm name or an object");
  }
  RejectUnknownKeys(entry, context,
                    {"algorithm", "iterations", "trajectories_per_update",
                     "os_exploration_eps", "oracle_noise", "averaging",
                     "use_bootstrap_baseline", "use_reach_weighting",
                     "value_source", "learned_value", "sampling"});
  if (!entry.contains("algorithm")) {
    throw ConfigError(context + ".algorithm: required");
  }
  SolverConfig config;
  config.algorithm =
      ParseAlgorithm(JsonString(entry["algorithm"], context + ".algorithm"));
  config.iterations = default_iterations;
  if (entry.contains("iterations")) {
    config.iterations = JsonInt(entry["iterations"], context + ".iterations");
  }
  if (entry.contains("trajectories_per_update")) {
    config.trajectories_per_update = JsonInt(
        entry["trajectories_per_update"], context + ".trajectories_per_update");
  }
  if (entry.contains("os_exploration_eps")) {
    config.os_exploration_eps = JsonDouble(entry["os_exploration_eps"],
                                           context + ".os_exploration_eps");
  }
  if (entry.contains("oracle_noise")) {
    config.oracle_noise =
        JsonDouble(entry["oracle_noise"], context + ".oracle_noise");
  }
  if (entry.contains("averaging")) {
    config.averaging = ParseAveragingScheme(
        JsonString(entry["averaging"], context + ".averaging"));
  }

  const bool has_mode_field = entry.contains("use_bootstrap_baseline") ||
                              entry.contains("use_reach_weighting") ||
                              entry.contains("value_source");
  std::optional<ValueSourceKind> explicit_source;
  if (has_mode_field) {
    EstimatorMode mode = DefaultMode(config.algorithm);
    if (entry.contains("use_bootstrap_baseline")) {
      mode.use_bootstrap_baseline = JsonBool(
          entry["use_bootstrap_baseline"], context + ".use_bootstrap_baseline");
    }
    if (entry.contains("use_reach_weighting")) {
      mode.use_reach_weighting = JsonBool(entry["use_reach_weighting"],
                                          context + ".use_reach_weighting");
    }
    if (entry.contains("value_source")) {
      mode.value_source = ParseValueSourceKind(
          JsonString(entry["value_source"], context + ".value_source"));
      explicit_source = mode.value_source;
    }
    config.mode_override = mode;
  }

  if (entry.contains("learned_value")) {
    const Json& lv = entry["learned_value"];
    const std::string lv_context = context + ".learned_value";
    if (!lv.is_object()) {
      throw ConfigError(lv_context + ": expected an object with a 'mode' key");
    }
    RejectUnknownKeys(lv, lv_context, {"mode", "rollouts", "exploration_mix"});
    const std::string mode_name =
        lv.contains("mode") ? JsonString(lv["mode"], lv_context + ".mode")
                            : std::string("off");
    if (mode_name == "monte_carlo") {
      if (explicit_source.has_value() &&
          *explicit_source != ValueSourceKind::kLearned) {
        throw ConfigError(context +
                          ": learned_value.mode monte_carlo conflicts with "
                          "value_source " +
                          ValueSourceName(*explicit_source));
      }
      EstimatorMode mode =
          config.mode_override.value_or(DefaultMode(config.algorithm));
      mode.value_source = ValueSourceKind::kLearned;
      config.mode_override = mode;
      if (lv.contains("rollouts")) {
        config.learned.rollouts =
            JsonInt(lv["rollouts"], lv_context + ".rollouts");
      }
      if (lv.contains("exploration_mix")) {
        config.learned.exploration_mix =
            JsonDouble(lv["exploration_mix"], lv_context + ".exploration_mix");
      }
    } else if (mode_name != "off") {
      throw ConfigError(lv_context + ".mode: expected off or monte_carlo");
    }
  }

  if (entry.contains("sampling")) {
    const Json& sampling = entry["sampling"];
    const std::string s_context = context + ".sampling";
    if (!sampling.is_object()) {
      throw ConfigError(s_context + ": expected an object with a 'kind' key");
    }
    RejectUnknownKeys(sampling, s_context, {"kind", "epsilon"});
    SamplingPolicySpec spec;
    const std::string kind =
        sampling.contains("kind")
            ? JsonString(sampling["kind"], s_context + ".kind")
            : std::string("uniform");
    if (kind == "uniform") {
      spec.kind = SamplingPolicySpec::Kind::kUniform;
    } else if (kind == "epsilon_mix") {
      spec.kind = SamplingPolicySpec::Kind::kEpsilonMix;
    } else {
      throw ConfigError(s_context + ".kind: expected uniform or epsilon_mix");
    }
    if (sampling.contains("epsilon")) {
      spec.epsilon = JsonDouble(sampling["epsilon"], s_context + ".epsilon");
    }
    config.sampling = spec;
  }

  ValidateConfig(config);
  return config;
}

OrderedJson SolverConfigToJson(const SolverConfig& config, bool include_seed) {
  const EstimatorMode mode = ResolveMode(config);
  const SamplingPolicySpec sampling = ResolveSampling(config);
  OrderedJson j;
  j["algorithm"] = AlgorithmName(config.algorithm);
  j["iterations"] = config.iterations;
  if (include_seed) j["seed"] = config.seed;
  j["trajectories_per_update"] = config.trajectories_per_update;
  j["os_exploration_eps"] = config.os_exploration_eps;
  j["oracle_noise"] = config.oracle_noise;
  j["averaging"] = AveragingSchemeName(config.averaging);
  if (config.algorithm != Algorithm::kCfr) {
    j["use_bootstrap_baseline"] = mode.use_bootstrap_baseline;
    j["use_reach_weighting"] = mode.use_reach_weighting;
    j["value_source"] = ValueSourceName(mode.value_source);
    OrderedJson lv;
    if (mode.value_source == ValueSourceKind::kLearned) {
      lv["mode"] = "monte_carlo";
      lv["rollouts"] = config.learned.rollouts;
      lv["exploration_mix"] = config.learned.exploration_mix;
    } else {
      lv["mode"] = "off";
    }
    j["learned_value"] = lv;
    OrderedJson s;
    s["kind"] = sampling.kind == SamplingPolicySpec::Kind::kUniform
                    ? "uniform"
                    : "epsilon_mix";
    s["epsilon"] = sampling.epsilon;
    j["sampling"] = s;
  }
  return j;
}

}  // namespace

ExperimentSpec ParseConfig(const std::string& json_text) {
  const Json root = Json::parse(json_text, nullptr, false);
  if (root.is_discarded()) throw ConfigError("config is not valid JSON");
  if (!root.is_object()) throw ConfigError("config must be a JSON object");
  RejectUnknownKeys(root, "config",
                    {"game", "games", "algo", "algorithms", "seeds",
                     "iterations", "eval_every", "variance_window", "out_dir",
                     "workers", "logging_rate"});
  ExperimentSpec spec;

  if (root.contains("game") && root.contains("games")) {
    throw ConfigError("config: specify either game or games, not both");
  }
  if (root.contains("game")) {
    spec.games.push_back(ParseGameSpec(JsonString(root["game"], "game")));
  } else if (root.contains("games")) {
    if (!root["games"].is_array()) {
      throw ConfigError("games: expected an array of game names");
    }
    for (size_t i = 0; i < root["games"].size(); ++i) {
      spec.games.push_back(ParseGameSpec(JsonString(
          root["games"][i], "games[" + std::to_string(i) + "]")));
    }
  } else {
    throw ConfigError("config: a game or games entry is required");
  }

  int default_iterations = SolverConfig().iterations;
  if (root.contains("iterations")) {
    default_iterations = JsonInt(root["iterations"], "iterations");
  }

  if (root.contains("algo") && root.contains("algorithms")) {
    throw ConfigError("config: specify either algo or algorithms, not both");
  }
  if (root.contains("algo")) {
    spec.algorithms.push_back(ParseSolverConfigJson(
        root["algo"], default_iterations, "algo"));
  } else if (root.contains("algorithms")) {
    if (!root["algorithms"].is_array()) {
      throw ConfigError("algorithms: expected an array");
    }
    for (size_t i = 0; i < root["algorithms"].size(); ++i) {
      spec.algorithms.push_back(
          ParseSolverConfigJson(root["algorithms"][i], default_iterations,
                                "algorithms[" + std::to_string(i) + "]"));
    }
  } else {
    throw ConfigError("config: an algo or algorithms entry is required");
  }

  if (root.contains("seeds")) {
    if (!root["seeds"].is_array()) {
      throw ConfigError("seeds: expected an array of non-negative integers");
    }
    spec.seeds.clear();
    for (size_t i = 0; i < root["seeds"].size(); ++i) {
      const std::string field = "seeds[" + std::to_string(i) + "]";
      const Json& value = root["seeds"][i];
      if (!value.is_number_integer() || value.get<int64_t>() < 0) {
        throw ConfigError(field + ": expected a non-negative integer");
      }
      spec.seeds.push_back(value.get<uint64_t>());
    }
  }
  if (root.contains("eval_every")) {
    spec.eval_every = JsonInt(root["eval_every"], "eval_every");
  }
  if (root.contains("variance_window")) {
    spec.variance_window = JsonInt(root["variance_window"], "variance_window");
  }
  if (root.contains("out_dir")) {
    spec.out_dir = JsonString(root["out_dir"], "out_dir");
  }
  if (root.contains("workers")) {
    spec.workers = JsonInt(root["workers"], "workers");
  }
  if (root.contains("logging_rate")) {
    spec.logging_rate = JsonInt(root["logging_rate"], "logging_rate");
  }

  ValidateExperiment(spec);
  return spec;
}

std::string PrintConfig(const ExperimentSpec& spec) {
  OrderedJson j;
  OrderedJson games = OrderedJson::array();
  for (const GameSpec& game : spec.games) games.push_back(GameSpecString(game));
  j["games"] = games;
  OrderedJson algorithms = OrderedJson::array();
  for (const SolverConfig& config : spec.algorithms) {
    algorithms.push_back(SolverConfigToJson(config, /*include_seed=*/false));
  }
  j["algorithms"] = algorithms;
  j["seeds"] = spec.seeds;
  j["eval_every"] = spec.eval_every;
  j["variance_window"] = spec.variance_window;
  j["out_dir"] = spec.out_dir;
  j["workers"] = spec.workers;
  j["logging_rate"] = spec.logging_rate;
  return j.dump(2) + "\n";
}

std::string SolverConfigJson(const SolverConfig& config, bool include_seed) {
  return SolverConfigToJson(config, include_seed).dump(2) + "\n";
}

void ValidateExperiment(const ExperimentSpec& spec) {
  if (spec.games.empty()) {
    throw ConfigError("games: at least one game is required");
  }
  if (spec.algorithms.empty()) {
    throw ConfigError("algorithms: at least one algorithm is required");
  }
  if (spec.seeds.empty()) {
    throw ConfigError("seeds: at least one seed is required");
  }
  if (spec.eval_every < 1) throw ConfigError("eval_every: must be >= 1");
  if (spec.variance_window < 1) {
    throw ConfigError("variance_window: must be >= 1");
  }
  if (spec.workers < 1) throw ConfigError("workers: must be >= 1");
  if (spec.logging_rate < 1) throw ConfigError("logging_rate: must be >= 1");
  for (const SolverConfig& config : spec.algorithms) ValidateConfig(config);
  for (const GameSpec& game : spec.games) LoadGame(game);
}

namespace {

std::string SanitizeForPath(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') {
      out.push_back(c);
    } else if (c == '(' || c == ',') {
      out.push_back('_');
    }
  }
  return out;
}

// Duplicate algorithm names get positional suffixes so output directories
// and summary columns stay distinct.
std::vector<std::string> AlgorithmLabels(const ExperimentSpec& spec) {
  std::vector<std::string> labels;
  for (size_t i = 0; i < spec.algorithms.size(); ++i) {
    const std::string base = AlgorithmName(spec.algorithms[i].algorithm);
    int occurrence = 1;
    for (size_t k = 0; k < i; ++k) {
      if (AlgorithmName(spec.algorithms[k].algorithm) == base) ++occurrence;
    }
    labels.push_back(occurrence == 1 ? base
                                     : base + "_" + std::to_string(occurrence));
  }
  return labels;
}

RunResult ExecuteRun(const ExperimentSpec& spec,
                     const std::shared_ptr<const GameTree>& tree,
                     const GameSpec& game, const SolverConfig& algorithm,
                     const std::string& label, uint64_t seed) {
  RunResult result;
  result.game = GameSpecString(game);
  result.algorithm = label;
  result.seed = seed;
  const std::string started = UtcTimestamp();
  try {
    SolverConfig config = algorithm;
    config.seed = seed;
    config.logging_rate = spec.logging_rate;
    Solver solver(tree, config);
    for (int t = 1; t <= config.iterations; ++t) {
      solver.RunIteration();
      SeriesRow row;
      row.iteration = t;
      row.infosets_visited = solver.infosets_visited();
      row.iteration_variance =
          solver.estimate_log().IterationVariances().back();
      if (t % spec.eval_every == 0 || t == config.iterations) {
        row.exploitability = Exploitability(*tree, solver.AveragePolicy());
        result.final_exploitability = row.exploitability;
      }
      result.series.push_back(row);
    }
    result.windowed_variance =
        WindowedVariance(solver.estimate_log(), spec.variance_window)
            .windowed_mean;
    result.infosets_visited = solver.infosets_visited();
    result.ok = true;
    if (!spec.out_dir.empty()) {
      result.output_dir = spec.out_dir + "/" + label + "_" +
                          SanitizeForPath(result.game) + "_s" +
                          std::to_string(seed);
      RunManifest manifest;
      manifest.version = kVersionString;
      manifest.game = result.game;
      manifest.algorithm = label;
      manifest.seed = seed;
      manifest.config_json = SolverConfigJson(config, /*include_seed=*/true);
      manifest.started_at = started;
      manifest.finished_at = UtcTimestamp();
      EmitRunOutputs(result.output_dir, result.series, manifest);
    }
  } catch (const std::exception& e) {
    result.ok = false;
    result.error = e.what();
  }
  return result;
}

struct SeedStats {
  int count = 0;
  int failed = 0;
  double mean = 0.0;
  double stddev = 0.0;
};

SeedStats AcrossSeeds(const std::vector<RunResult>& runs,
                      const std::string& game, const std::string& algorithm,
                      std::optional<double> RunResult::*field) {
  SeedStats stats;
  std::vector<double> values;
  for (const RunResult& run : runs) {
    if (run.game != game || run.algorithm != algorithm) continue;
    if (!run.ok) {
      ++stats.failed;
      continue;
    }
    if ((run.*field).has_value()) values.push_back(*(run.*field));
  }
  stats.count = static_cast<int>(values.size());
  if (values.empty()) return stats;
  double sum = 0.0;
  for (double v : values) sum += v;
  stats.mean = sum / values.size();
  double sq = 0.0;
  for (double v : values) sq += (v - stats.mean) * (v - stats.mean);
  stats.stddev = std::sqrt(sq / values.size());
  return stats;
}

std::string FormatCell(const SeedStats& stats) {
  if (stats.failed > 0 && stats.count == 0) {
    return "failed(" + std::to_string(stats.failed) + ")";
  }
  if (stats.count == 0) return "-";
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.3g +/- %.2g", stats.mean,
                stats.stddev);
  std::string cell = buffer;
  if (stats.failed > 0) {
    cell += " [" + std::to_string(stats.failed) + " failed]";
  }
  return cell;
}

void AppendTable(std::string* out, const std::string& title,
                 const ExperimentSpec& spec,
                 const std::vector<std::string>& labels,
                 const std::vector<RunResult>& runs,
                 std::optional<double> RunResult::*field) {
  const size_t columns = labels.size() + 1;
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header(columns);
  header[0] = "game";
  for (size_t a = 0; a < labels.size(); ++a) header[a + 1] = labels[a];
  cells.push_back(header);
  for (const GameSpec& game : spec.games) {
    std::vector<std::string> row(columns);
    row[0] = GameSpecString(game);
    for (size_t a = 0; a < labels.size(); ++a) {
      row[a + 1] =
          FormatCell(AcrossSeeds(runs, GameSpecString(game), labels[a], field));
    }
    cells.push_back(row);
  }
  std::vector<size_t> widths(columns, 0);
  for (const auto& row : cells) {
    for (size_t c = 0; c < columns; ++c) {
      widths[c] = std::max(widths[c], row[c].size());
    }
  }
  *out += title;
  *out += "\n";
  for (const auto& row : cells) {
    for (size_t c = 0; c < columns; ++c) {
      *out += row[c];
      if (c + 1 < columns) {
        out->append(widths[c] - row[c].size() + 2, ' ');
      }
    }
    *out += "\n";
  }
  *out += "\n";
}

}  // namespace

std::string SummaryTable(const ExperimentSpec& spec,
                         const std::vector<RunResult>& runs) {
  const std::vector<std::string> labels = AlgorithmLabels(spec);
  std::string out;
  AppendTable(&out,
              "windowed variance, first " +
                  std::to_string(spec.variance_window) +
                  " iterations (mean +/- std over " +
                  std::to_string(spec.seeds.size()) + " seeds)",
              spec, labels, runs, &RunResult::windowed_variance);
  AppendTable(&out, "final exploitability (mean +/- std over " +
                        std::to_string(spec.seeds.size()) + " seeds)",
              spec, labels, runs, &RunResult::final_exploitability);
  bool any_failed = false;
  for (const RunResult& run : runs) {
    if (!run.ok) {
      if (!any_failed) out += "failures:\n";
      any_failed = true;
      out += "  " + run.algorithm + " / " + run.game + " / seed " +
             std::to_string(run.seed) + ": " + run.error + "\n";
    }
  }
  return out;
}

ExperimentResult RunExperiment(const ExperimentSpec& spec) {
  ValidateExperiment(spec);
  std::vector<std::shared_ptr<const GameTree>> trees;
  trees.reserve(spec.games.size());
  for (const GameSpec& game : spec.games) {
    trees.push_back(GameTree::Build(LoadGame(game)));
  }
  const std::vector<std::string> labels = AlgorithmLabels(spec);

  struct Task {
    size_t game_index;
    size_t algo_index;
    uint64_t seed;
  };
  std::vector<Task> tasks;
  for (size_t g = 0; g < spec.games.size(); ++g) {
    for (size_t a = 0; a < spec.algorithms.size(); ++a) {
      for (uint64_t seed : spec.seeds) tasks.push_back({g, a, seed});
    }
  }

  ExperimentResult result;
  result.runs.resize(tasks.size());
  std::atomic<size_t> next{0};
  auto work = [&]() {
    while (true) {
      const size_t index = next.fetch_add(1);
      if (index >= tasks.size()) break;
      const Task& task = tasks[index];
      result.runs[index] =
          ExecuteRun(spec, trees[task.game_index], spec.games[task.game_index],
                     spec.algorithms[task.algo_index], labels[task.algo_index],
                     task.seed);
    }
  };
  const int workers =
      std::min<int>(spec.workers, static_cast<int>(tasks.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(work);
    for (std::thread& thread : pool) thread.join();
  }

  for (const RunResult& run : result.runs) {
    if (!run.ok) result.all_ok = false;
  }
  result.summary = SummaryTable(spec, result.runs);
  if (!spec.out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(spec.out_dir, ec);
    if (ec) FatalError("cannot create " + spec.out_dir + ": " + ec.message());
    std::ofstream out(std::filesystem::path(spec.out_dir) / "summary.txt",
                      std::ios::binary | std::ios::trunc);
    if (!out) FatalError("cannot open " + spec.out_dir + "/summary.txt");
    out << result.summary;
  }
  return result;
}

}  // namespace escher

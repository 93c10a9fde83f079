#include "escher/solver.h"

#include <algorithm>
#include <utility>

#include "escher/check.h"
#include "escher/game.h"
#include "escher/game_tree.h"

namespace escher {

std::string AlgorithmName(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kCfr: return "cfr";
    case Algorithm::kOsMccfr: return "os_mccfr";
    case Algorithm::kEscher: return "escher";
    case Algorithm::kDreamOracle: return "dream_oracle";
    case Algorithm::kAblation1: return "ablation1";
    case Algorithm::kAblation2: return "ablation2";
  }
  FatalError("unknown algorithm enumerator");
}

Algorithm ParseAlgorithm(const std::string& name) {
  if (name == "cfr") return Algorithm::kCfr;
  if (name == "os_mccfr") return Algorithm::kOsMccfr;
  if (name == "escher") return Algorithm::kEscher;
  if (name == "dream_oracle") return Algorithm::kDreamOracle;
  if (name == "ablation1") return Algorithm::kAblation1;
  if (name == "ablation2") return Algorithm::kAblation2;
  throw ConfigError("algorithm: unknown name '" + name +
                    "' (expected cfr, os_mccfr, escher, dream_oracle, "
                    "ablation1 or ablation2)");
}

std::string ValueSourceName(ValueSourceKind kind) {
  switch (kind) {
    case ValueSourceKind::kOracle: return "oracle";
    case ValueSourceKind::kNoisy: return "noisy";
    case ValueSourceKind::kLearned: return "learned";
    case ValueSourceKind::kTerminalRollout: return "terminal_rollout";
  }
  FatalError("unknown value source enumerator");
}

ValueSourceKind ParseValueSourceKind(const std::string& name) {
  if (name == "oracle") return ValueSourceKind::kOracle;
  if (name == "noisy") return ValueSourceKind::kNoisy;
  if (name == "learned") return ValueSourceKind::kLearned;
  if (name == "terminal" || name == "terminal_rollout") {
    return ValueSourceKind::kTerminalRollout;
  }
  throw ConfigError("value_source: unknown name '" + name +
                    "' (expected oracle, noisy, learned or terminal)");
}

std::string AveragingSchemeName(AveragingScheme scheme) {
  return scheme == AveragingScheme::kExact ? "exact" : "sampled";
}

AveragingScheme ParseAveragingScheme(const std::string& name) {
  if (name == "exact") return AveragingScheme::kExact;
  if (name == "sampled") return AveragingScheme::kSampled;
  throw ConfigError("averaging: unknown name '" + name +
                    "' (expected exact or sampled)");
}

EstimatorMode DefaultMode(Algorithm algorithm) {
  EstimatorMode mode;
  switch (algorithm) {
    case Algorithm::kCfr:
    case Algorithm::kEscher:
      break;
    case Algorithm::kOsMccfr:
      mode.use_reach_weighting = true;
      mode.value_source = ValueSourceKind::kTerminalRollout;
      break;
    case Algorithm::kDreamOracle:
      mode.use_bootstrap_baseline = true;
      mode.use_reach_weighting = true;
      break;
    case Algorithm::kAblation1:
      mode.use_bootstrap_baseline = true;
      break;
    case Algorithm::kAblation2:
      mode.use_reach_weighting = true;
      break;
  }
  return mode;
}

SamplingPolicySpec DefaultSampling(Algorithm algorithm, double os_eps) {
  SamplingPolicySpec spec;
  if (algorithm == Algorithm::kOsMccfr) {
    spec.kind = SamplingPolicySpec::Kind::kEpsilonMix;
    spec.epsilon = os_eps;
  }
  return spec;
}

EstimatorMode ResolveMode(const SolverConfig& config) {
  EstimatorMode mode =
      config.mode_override.value_or(DefaultMode(config.algorithm));
  if (config.oracle_noise > 0.0) {
    if (mode.value_source == ValueSourceKind::kOracle) {
      mode.value_source = ValueSourceKind::kNoisy;
    } else if (mode.value_source != ValueSourceKind::kNoisy) {
      throw ConfigError(
          "oracle_noise: only meaningful with an oracle value source, not " +
          ValueSourceName(mode.value_source));
    }
  }
  if (mode.use_bootstrap_baseline &&
      mode.value_source == ValueSourceKind::kTerminalRollout) {
    throw ConfigError(
        "use_bootstrap_baseline: requires a value function "
        "(value_source must not be terminal_rollout)");
  }
  return mode;
}

SamplingPolicySpec ResolveSampling(const SolverConfig& config) {
  if (config.sampling.has_value()) return *config.sampling;
  return DefaultSampling(config.algorithm, config.os_exploration_eps);
}

void ValidateConfig(const SolverConfig& config) {
  if (config.iterations < 1) {
    throw ConfigError("iterations: must be >= 1");
  }
  if (config.trajectories_per_update < 1) {
    throw ConfigError("trajectories_per_update: must be >= 1");
  }
  if (config.logging_rate < 1) {
    throw ConfigError("logging_rate: must be >= 1");
  }
  if (config.os_exploration_eps < 0.0 || config.os_exploration_eps > 1.0) {
    throw ConfigError("os_exploration_eps: must be in [0, 1]");
  }
  if (config.oracle_noise < 0.0) {
    throw ConfigError("oracle_noise: must be >= 0");
  }
  if (config.learned.rollouts < 1) {
    throw ConfigError("learned_value.rollouts: must be >= 1");
  }
  if (config.learned.exploration_mix < 0.0 ||
      config.learned.exploration_mix > 1.0) {
    throw ConfigError("learned_value.exploration_mix: must be in [0, 1]");
  }
  if (config.sampling.has_value()) {
    const SamplingPolicySpec& spec = *config.sampling;
    if (spec.kind == SamplingPolicySpec::Kind::kEpsilonMix &&
        (spec.epsilon <= 0.0 || spec.epsilon > 1.0)) {
      throw ConfigError(
          "sampling.epsilon: must be in (0, 1] to keep full support");
    }
    if (spec.kind == SamplingPolicySpec::Kind::kCustomTable && !spec.table) {
      throw ConfigError("sampling.table: required for a custom sampling policy");
    }
  }
  if (config.algorithm == Algorithm::kCfr) {
    if (config.mode_override.has_value()) {
      throw ConfigError("mode: cfr runs exact traversals; estimator mode "
                        "flags do not apply");
    }
    if (config.sampling.has_value()) {
      throw ConfigError("sampling: cfr runs exact traversals; a sampling "
                        "policy does not apply");
    }
    if (config.averaging == AveragingScheme::kSampled) {
      throw ConfigError("averaging: cfr draws no trajectories; use exact");
    }
  }
  ResolveMode(config);
}

SamplingRule::SamplingRule(std::shared_ptr<const GameTree> tree,
                           int update_player, const PolicyTable* policy,
                           SamplingPolicySpec spec)
    : tree_(std::move(tree)),
      update_player_(update_player),
      policy_(policy),
      spec_(std::move(spec)) {
  ESCHER_CHECK(update_player_ == 0 || update_player_ == 1);
  ESCHER_CHECK(policy_ != nullptr);
  if (spec_.kind == SamplingPolicySpec::Kind::kEpsilonMix &&
      (spec_.epsilon <= 0.0 || spec_.epsilon > 1.0)) {
    throw ConfigError(
        "sampling.epsilon: must be in (0, 1] to keep full support");
  }
  if (spec_.kind == SamplingPolicySpec::Kind::kCustomTable && !spec_.table) {
    throw ConfigError("sampling.table: required for a custom sampling policy");
  }
}

std::vector<double> SamplingRule::ActionProbs(int node) const {
  const GameTree::Node& n = tree_->node(node);
  ESCHER_CHECK_NE(n.player, kTerminalPlayerId);
  if (n.player == kChancePlayerId) {
    std::vector<double> probs(n.num_actions);
    for (int a = 0; a < n.num_actions; ++a) {
      probs[a] = tree_->ChanceProb(node, a);
    }
    return probs;
  }
  if (n.player != update_player_) return (*policy_)[n.infoset];
  switch (spec_.kind) {
    case SamplingPolicySpec::Kind::kUniform:
      return UniformProbs(n.num_actions);
    case SamplingPolicySpec::Kind::kEpsilonMix: {
      const std::vector<double>& pi = (*policy_)[n.infoset];
      std::vector<double> probs(n.num_actions);
      const double uniform = 1.0 / n.num_actions;
      for (int a = 0; a < n.num_actions; ++a) {
        probs[a] = spec_.epsilon * uniform + (1.0 - spec_.epsilon) * pi[a];
      }
      return probs;
    }
    case SamplingPolicySpec::Kind::kCustomTable: {
      const GameTree::Infoset& set = tree_->infoset(n.infoset);
      std::vector<double> probs =
          spec_.table->GetProbs({set.player, set.key}, set.num_actions);
      for (int a = 0; a < n.num_actions; ++a) {
        if (probs[a] <= 0.0) {
          throw ConfigError("sampling.table: zero probability for action " +
                            std::to_string(a) + " at infoset '" + set.key +
                            "'; the sampling policy must have full support");
        }
      }
      return probs;
    }
  }
  FatalError("unknown sampling policy kind");
}

namespace {

Trajectory WalkTrajectory(const GameTree& tree, const SamplingRule& rule,
                          Rng* rng, const std::vector<Action>* forced) {
  Trajectory trajectory;
  trajectory.update_player = rule.update_player();
  int node = tree.root();
  size_t depth = 0;
  while (tree.node(node).player != kTerminalPlayerId) {
    const GameTree::Node& n = tree.node(node);
    const std::vector<double> probs = rule.ActionProbs(node);
    Action action;
    if (forced != nullptr) {
      ESCHER_CHECK_LT(depth, forced->size());
      action = (*forced)[depth];
      ESCHER_CHECK_GE(action, 0);
      ESCHER_CHECK_LT(action, n.num_actions);
    } else {
      action = SampleIndex(probs, *rng);
    }
    TrajectoryStep step;
    step.node = node;
    step.player = n.player;
    step.infoset = n.infoset;
    step.action = action;
    step.sample_prob = probs[action];
    step.policy_prob = n.player == kChancePlayerId
                           ? tree.ChanceProb(node, action)
                           : rule.policy()[n.infoset][action];
    step.own_sample_reach_in =
        n.player == kChancePlayerId ? 1.0 : trajectory.sample_reach[n.player];
    trajectory.steps.push_back(step);
    if (n.player != kChancePlayerId) {
      trajectory.sample_reach[n.player] *= step.sample_prob;
    }
    node = tree.Child(node, action);
    ++depth;
  }
  if (forced != nullptr) {
    ESCHER_CHECK_EQ(depth, forced->size());
  }
  trajectory.terminal_node = node;
  trajectory.terminal_utility0 = tree.node(node).utility0;
  return trajectory;
}

}  // namespace

Trajectory SampleTrajectory(const GameTree& tree, const SamplingRule& rule,
                            Rng& rng) {
  return WalkTrajectory(tree, rule, &rng, nullptr);
}

Trajectory TrajectoryFromActions(const GameTree& tree, const SamplingRule& rule,
                                 const std::vector<Action>& actions) {
  return WalkTrajectory(tree, rule, nullptr, &actions);
}

double InfosetSamplingReach(const SamplingRule& rule, int infoset) {
  const GameTree& tree = rule.tree();
  const GameTree::Infoset& set = tree.infoset(infoset);
  ESCHER_CHECK(!set.members.empty());
  double reach = 1.0;
  for (int cur = set.members[0]; tree.node(cur).parent >= 0;
       cur = tree.node(cur).parent) {
    const int parent = tree.node(cur).parent;
    if (tree.node(parent).player == set.player) {
      reach *= rule.ActionProbs(parent)[tree.node(cur).parent_action];
    }
  }
  return reach;
}

LearnedValues::LearnedValues(std::shared_ptr<const GameTree> tree,
                             LearnedValueConfig config, OracleValues* fallback)
    : tree_(std::move(tree)),
      config_(config),
      fallback_(fallback),
      sum_utility0_(tree_->num_edges(), 0.0),
      visit_count_(tree_->num_edges(), 0) {
  ESCHER_CHECK(fallback_ != nullptr);
  ESCHER_CHECK_GE(config_.rollouts, 1);
}

void LearnedValues::Refresh(const PolicyTable& policy, Rng& rng) {
  policy_copy_ = policy;
  refreshed_ = true;
  std::fill(sum_utility0_.begin(), sum_utility0_.end(), 0.0);
  std::fill(visit_count_.begin(), visit_count_.end(), 0);
  const double mix = config_.exploration_mix;
  std::vector<int> path;
  std::vector<double> probs;
  for (int rollout = 0; rollout < config_.rollouts; ++rollout) {
    path.clear();
    int node = tree_->root();
    while (tree_->node(node).player != kTerminalPlayerId) {
      const GameTree::Node& n = tree_->node(node);
      probs.assign(n.num_actions, 0.0);
      if (n.player == kChancePlayerId) {
        for (int a = 0; a < n.num_actions; ++a) {
          probs[a] = tree_->ChanceProb(node, a);
        }
      } else {
        const std::vector<double>& pi = policy_copy_[n.infoset];
        const double uniform = 1.0 / n.num_actions;
        for (int a = 0; a < n.num_actions; ++a) {
          probs[a] = (1.0 - mix) * pi[a] + mix * uniform;
        }
      }
      const Action action = SampleIndex(probs, rng);
      path.push_back(tree_->EdgeIndex(node, action));
      node = tree_->Child(node, action);
    }
    const double utility0 = tree_->node(node).utility0;
    for (int edge : path) {
      sum_utility0_[edge] += utility0;
      ++visit_count_[edge];
    }
  }
}

double LearnedValues::HistoryValue(int node, int player) {
  const GameTree::Node& n = tree_->node(node);
  if (n.player == kTerminalPlayerId) return tree_->Utility(node, player);
  ESCHER_CHECK(refreshed_);
  double value = 0.0;
  for (int a = 0; a < n.num_actions; ++a) {
    const double prob = n.player == kChancePlayerId
                            ? tree_->ChanceProb(node, a)
                            : policy_copy_[n.infoset][a];
    value += prob * ActionValue(node, a, player);
  }
  return value;
}

double LearnedValues::ActionValue(int node, Action action, int player) {
  const int edge = tree_->EdgeIndex(node, action);
  if (visit_count_[edge] > 0) {
    const double mean = sum_utility0_[edge] / visit_count_[edge];
    return player == 0 ? mean : -mean;
  }
  ++fallback_count_;
  return fallback_->ActionValue(node, action, player);
}

int64_t LearnedValues::edges_with_data() const {
  int64_t n = 0;
  for (int32_t c : visit_count_) {
    if (c > 0) ++n;
  }
  return n;
}

std::vector<double> DirectRegretEstimate(const GameTree& tree,
                                         const PolicyTable& policy,
                                         ValueSource& values,
                                         const Trajectory& trajectory,
                                         int step_index,
                                         bool use_reach_weighting) {
  const TrajectoryStep& step = trajectory.steps.at(step_index);
  if (step.player != trajectory.update_player) {
    throw UsageError("regret estimate requested at a step the update player "
                     "does not act at");
  }
  const GameTree::Node& n = tree.node(step.node);
  const std::vector<double>& pi = policy[n.infoset];
  std::vector<double> q(n.num_actions);
  double value = 0.0;
  for (int a = 0; a < n.num_actions; ++a) {
    q[a] = values.ActionValue(step.node, a, step.player);
    value += pi[a] * q[a];
  }
  std::vector<double> regrets(n.num_actions);
  const double scale =
      use_reach_weighting ? 1.0 / step.own_sample_reach_in : 1.0;
  for (int a = 0; a < n.num_actions; ++a) {
    regrets[a] = (q[a] - value) * scale;
  }
  return regrets;
}

std::vector<StepRegrets> BaselineCorrectedRegrets(const GameTree& tree,
                                                  const PolicyTable& policy,
                                                  ValueSource* baseline,
                                                  const Trajectory& trajectory,
                                                  bool use_reach_weighting) {
  const int player = trajectory.update_player;
  double child_value = player == 0 ? trajectory.terminal_utility0
                                   : -trajectory.terminal_utility0;
  std::vector<StepRegrets> updates;
  std::vector<double> b;
  for (int k = static_cast<int>(trajectory.steps.size()) - 1; k >= 0; --k) {
    const TrajectoryStep& step = trajectory.steps[k];
    const GameTree::Node& n = tree.node(step.node);
    b.assign(n.num_actions, 0.0);
    if (baseline != nullptr) {
      for (int a = 0; a < n.num_actions; ++a) {
        b[a] = baseline->ActionValue(step.node, a, player);
      }
    }
    const double corrected =
        b[step.action] + (child_value - b[step.action]) / step.sample_prob;
    double node_value = 0.0;
    for (int a = 0; a < n.num_actions; ++a) {
      const double prob = n.player == kChancePlayerId
                              ? tree.ChanceProb(step.node, a)
                              : policy[n.infoset][a];
      node_value += prob * (a == step.action ? corrected : b[a]);
    }
    if (step.player == player) {
      StepRegrets update;
      update.step_index = k;
      update.infoset = step.infoset;
      update.regrets.resize(n.num_actions);
      const double scale =
          use_reach_weighting ? 1.0 / step.own_sample_reach_in : 1.0;
      for (int a = 0; a < n.num_actions; ++a) {
        update.regrets[a] =
            ((a == step.action ? corrected : b[a]) - node_value) * scale;
      }
      updates.push_back(std::move(update));
    }
    child_value = node_value;
  }
  std::reverse(updates.begin(), updates.end());
  return updates;
}

std::vector<double> OsMccfrRegretEstimate(const GameTree& tree,
                                          const PolicyTable& policy,
                                          const Trajectory& trajectory,
                                          int step_index) {
  const TrajectoryStep& step = trajectory.steps.at(step_index);
  const int player = trajectory.update_player;
  if (step.player != player) {
    throw UsageError("regret estimate requested at a step the update player "
                     "does not act at");
  }
  const double utility = player == 0 ? trajectory.terminal_utility0
                                     : -trajectory.terminal_utility0;
  // Update player's products over the trajectory tail. The sampling product
  // includes this step's own factor; the policy product excludes it so the
  // sampled action's tail correction needs no division by pi(a|s).
  double policy_tail_after = 1.0;
  double sample_tail = step.sample_prob;
  for (size_t t = step_index + 1; t < trajectory.steps.size(); ++t) {
    const TrajectoryStep& tail_step = trajectory.steps[t];
    if (tail_step.player != player) continue;
    policy_tail_after *= policy[tail_step.infoset][tail_step.action];
    sample_tail *= tail_step.sample_prob;
  }
  if (step.own_sample_reach_in <= 0.0 || sample_tail <= 0.0) {
    FatalError("sampled trajectory has zero sampling reach");
  }
  const GameTree::Node& n = tree.node(step.node);
  const std::vector<double>& pi = policy[n.infoset];
  const double sampled_q =
      utility * policy_tail_after / (step.own_sample_reach_in * sample_tail);
  const double value = pi[step.action] * sampled_q;
  std::vector<double> regrets(n.num_actions, -value);
  regrets[step.action] = sampled_q - value;
  return regrets;
}

std::vector<StepRegrets> ComputeUpdateRegrets(const GameTree& tree,
                                              const PolicyTable& policy,
                                              const EstimatorMode& mode,
                                              ValueSource* source,
                                              const Trajectory& trajectory) {
  if (mode.use_bootstrap_baseline ||
      mode.value_source == ValueSourceKind::kTerminalRollout) {
    ValueSource* baseline = mode.use_bootstrap_baseline ? source : nullptr;
    if (mode.use_bootstrap_baseline) ESCHER_CHECK(source != nullptr);
    return BaselineCorrectedRegrets(tree, policy, baseline, trajectory,
                                    mode.use_reach_weighting);
  }
  ESCHER_CHECK(source != nullptr);
  std::vector<StepRegrets> updates;
  for (int k = 0; k < static_cast<int>(trajectory.steps.size()); ++k) {
    if (trajectory.steps[k].player != trajectory.update_player) continue;
    StepRegrets update;
    update.step_index = k;
    update.infoset = trajectory.steps[k].infoset;
    update.regrets = DirectRegretEstimate(tree, policy, *source, trajectory, k,
                                          mode.use_reach_weighting);
    updates.push_back(std::move(update));
  }
  return updates;
}

Solver::Solver(std::shared_ptr<const GameTree> tree, SolverConfig config)
    : tree_(std::move(tree)),
      config_(std::move(config)),
      mode_(ResolveMode(config_)),
      sampling_spec_(ResolveSampling(config_)),
      rng_(config_.seed),
      accumulator_(tree_),
      oracle_(tree_),
      estimate_log_(config_.logging_rate) {
  ValidateConfig(config_);
  if (mode_.value_source == ValueSourceKind::kNoisy) {
    noisy_ = std::make_unique<NoisyOracle>(&oracle_, config_.oracle_noise,
                                           config_.seed);
    noisy_source_ = std::make_unique<NoisySource>(noisy_.get());
  }
  oracle_source_ = std::make_unique<OracleSource>(&oracle_);
  if (mode_.value_source == ValueSourceKind::kLearned) {
    learned_ =
        std::make_unique<LearnedValues>(tree_, config_.learned, &oracle_);
  }
}

ValueSource* Solver::EstimatorSource() {
  switch (mode_.value_source) {
    case ValueSourceKind::kOracle: return oracle_source_.get();
    case ValueSourceKind::kNoisy: return noisy_source_.get();
    case ValueSourceKind::kLearned: return learned_.get();
    case ValueSourceKind::kTerminalRollout: return nullptr;
  }
  FatalError("unknown value source enumerator");
}

void Solver::RunIteration() {
  estimate_log_.BeginIteration();
  if (learned_) {
    snapshot_ = accumulator_.CurrentPolicyTable();
    learned_->Refresh(snapshot_, rng_);
  }
  for (int player = 0; player < kNumPlayers; ++player) {
    if (config_.algorithm == Algorithm::kCfr) {
      ExactCfrPhase(player);
    } else {
      SampledPhase(player);
    }
  }
  accumulator_.AdvanceIteration();
  estimate_log_.Finish();
}

void Solver::Run(int iterations) {
  for (int i = 0; i < iterations; ++i) RunIteration();
}

void Solver::SampledPhase(int update_player) {
  snapshot_ = accumulator_.CurrentPolicyTable();
  oracle_.SetPolicy(&snapshot_);
  SamplingRule rule(tree_, update_player, &snapshot_, sampling_spec_);
  for (int p = 0; p < config_.trajectories_per_update; ++p) {
    const Trajectory trajectory = SampleTrajectory(*tree_, rule, rng_);
    const std::vector<StepRegrets> updates = ComputeUpdateRegrets(
        *tree_, snapshot_, mode_, EstimatorSource(), trajectory);
    for (const StepRegrets& update : updates) {
      accumulator_.AccumulateRegret(update.infoset, update.regrets);
      ++infosets_visited_;
      for (double r : update.regrets) estimate_log_.Add(r);
    }
    if (config_.averaging == AveragingScheme::kSampled) {
      for (const TrajectoryStep& step : trajectory.steps) {
        if (step.player != update_player) continue;
        accumulator_.UpdateAverage(step.infoset, snapshot_[step.infoset], 1.0);
      }
    }
  }
  if (config_.averaging == AveragingScheme::kExact) {
    ExactAverageUpdate(update_player);
  }
}

void Solver::ExactCfrPhase(int update_player) {
  snapshot_ = accumulator_.CurrentPolicyTable();
  oracle_.SetPolicy(&snapshot_);
  const ReachTable reaches = ComputeReaches(*tree_, snapshot_);
  const std::vector<double>& opponent = update_player == 0
                                            ? reaches.player1
                                            : reaches.player0;
  std::vector<double> regrets;
  for (int infoset : tree_->InfosetsOfPlayer(update_player)) {
    const GameTree::Infoset& set = tree_->infoset(infoset);
    regrets.assign(set.num_actions, 0.0);
    for (int member : set.members) {
      const double weight = opponent[member] * reaches.chance[member];
      if (weight == 0.0) continue;
      const double value = oracle_.HistoryValue(member, update_player);
      for (int a = 0; a < set.num_actions; ++a) {
        regrets[a] +=
            weight * (oracle_.ActionValue(member, a, update_player) - value);
      }
    }
    accumulator_.AccumulateRegret(infoset, regrets);
    ++infosets_visited_;
    for (double r : regrets) estimate_log_.Add(r);
  }
  ExactAverageUpdate(update_player);
}

void Solver::ExactAverageUpdate(int update_player) {
  const PolicyTable current = accumulator_.CurrentPolicyTable();
  for (int infoset : tree_->InfosetsOfPlayer(update_player)) {
    const GameTree::Infoset& set = tree_->infoset(infoset);
    double reach = 1.0;
    for (int cur = set.members[0]; tree_->node(cur).parent >= 0;
         cur = tree_->node(cur).parent) {
      const int parent = tree_->node(cur).parent;
      const GameTree::Node& pn = tree_->node(parent);
      if (pn.player == update_player) {
        reach *= current[pn.infoset][tree_->node(cur).parent_action];
      }
    }
    accumulator_.UpdateAverage(infoset, current[infoset], reach);
  }
}

}  // namespace escher

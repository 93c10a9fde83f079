#ifndef ESCHER_SOLVER_H_
#define ESCHER_SOLVER_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "escher/metrics.h"
#include "escher/policy.h"
#include "escher/rng.h"
#include "escher/values.h"

namespace escher {

enum class Algorithm {
  kCfr,          // exact counterfactual regret minimization, full traversals
  kOsMccfr,      // outcome-sampling MCCFR with importance weighting
  kEscher,       // direct oracle regret estimates, no importance weights
  kDreamOracle,  // oracle-baseline-corrected sampled returns, reach-weighted
  kAblation1,    // escher plus the bootstrapped baseline recursion
  kAblation2,    // escher plus 1/reach importance weighting
};

std::string AlgorithmName(Algorithm algorithm);
Algorithm ParseAlgorithm(const std::string& name);

enum class ValueSourceKind { kOracle, kNoisy, kLearned, kTerminalRollout };

std::string ValueSourceName(ValueSourceKind kind);
ValueSourceKind ParseValueSourceKind(const std::string& name);

enum class AveragingScheme { kExact, kSampled };

std::string AveragingSchemeName(AveragingScheme scheme);
AveragingScheme ParseAveragingScheme(const std::string& name);

// The two estimator switches plus the source of state-action values. Each
// sampled algorithm is one fixed combination:
//   escher       = (baseline off, reach off, oracle)
//   ablation1    = (baseline on,  reach off, oracle)
//   ablation2    = (baseline off, reach on,  oracle)
//   dream_oracle = (baseline on,  reach on,  oracle)
//   os_mccfr     = (baseline off, reach on,  terminal_rollout)
struct EstimatorMode {
  bool use_bootstrap_baseline = false;
  bool use_reach_weighting = false;
  ValueSourceKind value_source = ValueSourceKind::kOracle;

  friend bool operator==(const EstimatorMode&, const EstimatorMode&) = default;
};

EstimatorMode DefaultMode(Algorithm algorithm);
SamplingPolicySpec DefaultSampling(Algorithm algorithm, double os_eps);

struct LearnedValueConfig {
  int rollouts = 2000;           // Monte-Carlo rollouts per refresh
  double exploration_mix = 0.01; // uniform weight mixed into the roll-in policy

  friend bool operator==(const LearnedValueConfig&,
                         const LearnedValueConfig&) = default;
};

struct SolverConfig {
  Algorithm algorithm = Algorithm::kEscher;
  int iterations = 1000;
  int trajectories_per_update = 1;
  std::optional<SamplingPolicySpec> sampling;  // default depends on algorithm
  double os_exploration_eps = 0.6;
  uint64_t seed = 0;
  AveragingScheme averaging = AveragingScheme::kExact;
  double oracle_noise = 0.0;  // > 0 switches the oracle source to noisy
  std::optional<EstimatorMode> mode_override;
  LearnedValueConfig learned;
  int logging_rate = 1;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

// Resolved estimator mode: algorithm default, then the override, then the
// oracle_noise upgrade from kOracle to kNoisy. Throws ConfigError on invalid
// combinations (e.g. a bootstrapped baseline over terminal rollouts).
EstimatorMode ResolveMode(const SolverConfig& config);
SamplingPolicySpec ResolveSampling(const SolverConfig& config);
// Field-by-field range validation; raises ConfigError naming the field.
void ValidateConfig(const SolverConfig& config);

// One decision or chance step of a sampled playout.
struct TrajectoryStep {
  int node = 0;
  int player = 0;   // acting player, or kChancePlayerId
  int infoset = -1; // -1 at chance nodes
  Action action = 0;
  double sample_prob = 0.0;  // probability the sampler gave `action`
  double policy_prob = 0.0;  // snapshot policy (or chance) probability
  // Acting player's sampling-policy reach product into `node`, i.e. the
  // product of sample_prob over that player's earlier steps.
  double own_sample_reach_in = 1.0;
};

struct Trajectory {
  int update_player = 0;
  std::vector<TrajectoryStep> steps;
  int terminal_node = 0;
  double terminal_utility0 = 0.0;
  // Final per-player sampling reaches eta^{sampling}_i(z).
  double sample_reach[2] = {1.0, 1.0};
};

// Per-node action distribution of the joint sampling policy: the update
// player draws from the exploration spec, the opponent plays the snapshot
// policy, chance plays its own distribution.
class SamplingRule {
 public:
  SamplingRule(std::shared_ptr<const GameTree> tree, int update_player,
               const PolicyTable* policy, SamplingPolicySpec spec);

  std::vector<double> ActionProbs(int node) const;

  int update_player() const { return update_player_; }
  const GameTree& tree() const { return *tree_; }
  const PolicyTable& policy() const { return *policy_; }

 private:
  std::shared_ptr<const GameTree> tree_;
  int update_player_;
  const PolicyTable* policy_;
  SamplingPolicySpec spec_;
};

Trajectory SampleTrajectory(const GameTree& tree, const SamplingRule& rule,
                            Rng& rng);
// Replays a forced root-to-terminal action sequence, recording the
// probabilities the sampler would have assigned; used to enumerate the full
// trajectory distribution in expectation tests.
Trajectory TrajectoryFromActions(const GameTree& tree, const SamplingRule& rule,
                                 const std::vector<Action>& actions);

// w(s): the update player's sampling-policy reach of the infoset, a product
// over the infoset's own-action prefix and hence member-independent.
double InfosetSamplingReach(const SamplingRule& rule, int infoset);

// State-action value lookups backing the estimators.
class ValueSource {
 public:
  virtual ~ValueSource() = default;
  virtual double HistoryValue(int node, int player) = 0;
  virtual double ActionValue(int node, Action action, int player) = 0;
};

class OracleSource : public ValueSource {
 public:
  explicit OracleSource(OracleValues* oracle) : oracle_(oracle) {}
  double HistoryValue(int node, int player) override {
    return oracle_->HistoryValue(node, player);
  }
  double ActionValue(int node, Action action, int player) override {
    return oracle_->ActionValue(node, action, player);
  }

 private:
  OracleValues* oracle_;
};

class NoisySource : public ValueSource {
 public:
  explicit NoisySource(NoisyOracle* oracle) : oracle_(oracle) {}
  double HistoryValue(int node, int player) override {
    return oracle_->HistoryValue(node, player);
  }
  double ActionValue(int node, Action action, int player) override {
    return oracle_->ActionValue(node, action, player);
  }

 private:
  NoisyOracle* oracle_;
};

// Monte-Carlo state-action values: per-edge averages of terminal returns
// observed on rollouts under (1-mix)*policy + mix*uniform. Lookups of edges
// no rollout reached fall back to the exact oracle and are counted.
class LearnedValues : public ValueSource {
 public:
  LearnedValues(std::shared_ptr<const GameTree> tree, LearnedValueConfig config,
                OracleValues* fallback);

  // Discards previous estimates and rebuilds from `config.rollouts` fresh
  // playouts. The policy must outlive subsequent lookups.
  void Refresh(const PolicyTable& policy, Rng& rng);

  double HistoryValue(int node, int player) override;
  double ActionValue(int node, Action action, int player) override;

  int64_t fallback_count() const { return fallback_count_; }
  int64_t edges_with_data() const;

 private:
  std::shared_ptr<const GameTree> tree_;
  LearnedValueConfig config_;
  OracleValues* fallback_;
  PolicyTable policy_copy_;
  bool refreshed_ = false;
  std::vector<double> sum_utility0_;
  std::vector<int32_t> visit_count_;
  int64_t fallback_count_ = 0;
};

// Regret estimate vectors produced from one trajectory, in step order.
struct StepRegrets {
  int step_index = 0;
  int infoset = 0;
  std::vector<double> regrets;
};

// Direct estimator: r(a) = q(z[s],a) - sum_a' pi(a'|s) q(z[s],a'), queried
// at the on-trajectory member history; no correction terms. With reach
// weighting on, the whole vector is scaled by 1 / (update player's sampling
// reach into z[s]).
std::vector<double> DirectRegretEstimate(const GameTree& tree,
                                         const PolicyTable& policy,
                                         ValueSource& values,
                                         const Trajectory& trajectory,
                                         int step_index,
                                         bool use_reach_weighting);

// Bottom-up corrected-return recursion along the trajectory. With `baseline`
// null the baseline is 0 everywhere and terminal utility seeds the return;
// otherwise baseline values b(h,a) come from the source. At each on-path
// history with sampled action a and sampling probability p:
//   u(h,a') = b(h,a')                       for a' not sampled
//   u(h,a)  = b(h,a) + (u(child) - b(h,a)) / p
//   u(h)    = sum_a' pi(a'|h) u(h,a')
// Update-player steps contribute regrets u(h,a) - u(h), scaled by
// 1 / (sampling reach into h) when reach weighting is on.
std::vector<StepRegrets> BaselineCorrectedRegrets(const GameTree& tree,
                                                  const PolicyTable& policy,
                                                  ValueSource* baseline,
                                                  const Trajectory& trajectory,
                                                  bool use_reach_weighting);

// Closed-form outcome-sampling estimator at one update-player step:
//   v(s)   = u_i(z) * eta^{pi_i}(z[s], z) / (eta_i(z[s]) * eta_i(z[s], z))
// with eta_i the update player's sampling-policy reaches; the sampled action
// keeps the tail correction, unsampled actions estimate 0 and so contribute
// -v(s). Equivalent to the baseline-0 recursion with reach weighting.
std::vector<double> OsMccfrRegretEstimate(const GameTree& tree,
                                          const PolicyTable& policy,
                                          const Trajectory& trajectory,
                                          int step_index);

// Dispatches on the mode flags: recursion path when a bootstrapped baseline
// or terminal rollouts are configured, direct estimates otherwise.
std::vector<StepRegrets> ComputeUpdateRegrets(const GameTree& tree,
                                              const PolicyTable& policy,
                                              const EstimatorMode& mode,
                                              ValueSource* source,
                                              const Trajectory& trajectory);

// One training run: alternating per-player updates, regret matching, average
// policy accumulation, and estimate logging.
class Solver {
 public:
  Solver(std::shared_ptr<const GameTree> tree, SolverConfig config);

  void RunIteration();
  void Run(int iterations);

  int iteration() const { return accumulator_.iteration(); }
  int64_t infosets_visited() const { return infosets_visited_; }

  PolicyTable CurrentPolicy() const { return accumulator_.CurrentPolicyTable(); }
  PolicyTable AveragePolicy() const { return accumulator_.ExtractAveragePolicy(); }

  const RegretAccumulator& accumulator() const { return accumulator_; }
  EstimateLog& estimate_log() { return estimate_log_; }
  const EstimateLog& estimate_log() const { return estimate_log_; }
  const SolverConfig& config() const { return config_; }
  const EstimatorMode& mode() const { return mode_; }
  const GameTree& tree() const { return *tree_; }
  LearnedValues* learned_values() { return learned_.get(); }

 private:
  void SampledPhase(int update_player);
  void ExactCfrPhase(int update_player);
  void ExactAverageUpdate(int update_player);
  ValueSource* EstimatorSource();

  std::shared_ptr<const GameTree> tree_;
  SolverConfig config_;
  EstimatorMode mode_;
  SamplingPolicySpec sampling_spec_;
  Rng rng_;
  RegretAccumulator accumulator_;
  OracleValues oracle_;
  std::unique_ptr<NoisyOracle> noisy_;
  std::unique_ptr<OracleSource> oracle_source_;
  std::unique_ptr<NoisySource> noisy_source_;
  std::unique_ptr<LearnedValues> learned_;
  EstimateLog estimate_log_;
  PolicyTable snapshot_;
  int64_t infosets_visited_ = 0;
};

}  // namespace escher

#endif  // ESCHER_SOLVER_H_

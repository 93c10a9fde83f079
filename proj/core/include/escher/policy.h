#ifndef ESCHER_POLICY_H_
#define ESCHER_POLICY_H_

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "escher/game_tree.h"

namespace escher {

// Behavior policy indexed by GameTree infoset id: probs[infoset][action].
using PolicyTable = std::vector<std::vector<double>>;

// Uniform distribution over n actions.
std::vector<double> UniformProbs(int num_actions);

// Positive-part normalization of cumulative regrets. Falls back to uniform
// when no regret is positive.
std::vector<double> RegretMatching(const std::vector<double>& regrets);

PolicyTable UniformPolicyTable(const GameTree& tree);

// Key-addressed behavior policy. Reads of unknown keys return uniform; writes
// validate that the probabilities are non-negative and sum to 1 within 1e-9.
class TabularPolicy {
 public:
  void SetProbs(const InfoKey& key, std::vector<double> probs);
  std::vector<double> GetProbs(const InfoKey& key, int num_actions) const;
  bool Has(const InfoKey& key) const;
  const std::map<std::string, std::vector<double>>& PlayerTable(
      int player) const {
    return probs_[player];
  }

 private:
  std::array<std::map<std::string, std::vector<double>>, 2> probs_;
};

PolicyTable FromTabularPolicy(const GameTree& tree, const TabularPolicy& policy);
TabularPolicy ToTabularPolicy(const GameTree& tree, const PolicyTable& table);

// One line per (player, key, action label, probability), tab-separated,
// sorted by player then key, probabilities at 17 significant digits.
std::string SerializePolicy(const GameTree& tree, const TabularPolicy& policy);

// How the update player's trajectory actions are drawn.
struct SamplingPolicySpec {
  enum class Kind {
    kUniform,      // Fixed uniform over legal actions.
    kEpsilonMix,   // epsilon-uniform mixed with the current policy.
    kCustomTable,  // A fixed table; must have full support everywhere.
  };
  Kind kind = Kind::kUniform;
  double epsilon = 0.6;
  std::shared_ptr<const TabularPolicy> table;

  friend bool operator==(const SamplingPolicySpec&,
                         const SamplingPolicySpec&) = default;
};

// Cumulative regrets and average-policy weights for every infoset of a tree,
// plus the iteration counter. Current policies are regret-matched views of
// the cumulative regrets.
class RegretAccumulator {
 public:
  explicit RegretAccumulator(std::shared_ptr<const GameTree> tree);

  void AccumulateRegret(int infoset, const std::vector<double>& increment);
  void AccumulateRegret(const InfoKey& key,
                        const std::vector<double>& increment);
  // Adds weight * probs to the average-policy weights of `infoset`.
  void UpdateAverage(int infoset, const std::vector<double>& probs,
                     double weight);

  const std::vector<double>& Regrets(int infoset) const {
    return regrets_[infoset];
  }
  const std::vector<double>& AverageWeights(int infoset) const {
    return average_weights_[infoset];
  }

  std::vector<double> CurrentPolicy(int infoset) const;
  PolicyTable CurrentPolicyTable() const;

  // Normalized average weights; infosets with no accumulated weight are
  // uniform.
  PolicyTable ExtractAveragePolicy() const;

  int iteration() const { return iteration_; }
  void AdvanceIteration() { ++iteration_; }

  const GameTree& tree() const { return *tree_; }

 private:
  std::shared_ptr<const GameTree> tree_;
  std::vector<std::vector<double>> regrets_;
  std::vector<std::vector<double>> average_weights_;
  int iteration_ = 0;
};

}  // namespace escher

#endif  // ESCHER_POLICY_H_

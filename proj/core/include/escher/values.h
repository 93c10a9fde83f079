#ifndef ESCHER_VALUES_H_
#define ESCHER_VALUES_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "escher/policy.h"

namespace escher {

// Reach decomposition of one history for one player.
struct ReachProfile {
  double own;                 // eta_i: product of i's own action probabilities.
  double opponent_and_chance; // eta_{-i}: everything else.
  double total;               // eta: full product.
};

// Per-node reach products under a fixed joint policy.
struct ReachTable {
  std::vector<double> player0;
  std::vector<double> player1;
  std::vector<double> chance;
};

ReachTable ComputeReaches(const GameTree& tree, const PolicyTable& policy);
ReachProfile ReachProfileAt(const ReachTable& reaches, int node, int player);

// Exact expected values under the bound joint policy, memoized per node.
// SetPolicy invalidates the memo; values for both players come from one
// shared player-0 memo since every supported game is zero-sum.
class OracleValues {
 public:
  explicit OracleValues(std::shared_ptr<const GameTree> tree);

  // The policy must stay alive and unchanged until the next SetPolicy call.
  void SetPolicy(const PolicyTable* policy);

  // v_i(pi, h): expected utility for `player` given play reaches `node`.
  double HistoryValue(int node, int player);
  // q_i(pi, h, a): value of taking `action` at `node`, then following pi.
  double ActionValue(int node, Action action, int player);

  // Memo-free evaluation with the identical recursion and arithmetic order;
  // used to verify that memoization is observationally transparent.
  double HistoryValueNoMemo(int node, int player) const;

  const GameTree& tree() const { return *tree_; }
  const PolicyTable& policy() const { return *policy_; }

 private:
  double Value0(int node);
  double Value0NoMemo(int node) const;

  std::shared_ptr<const GameTree> tree_;
  const PolicyTable* policy_ = nullptr;
  std::vector<double> memo_;
  std::vector<uint32_t> stamp_;
  uint32_t epoch_ = 0;
};

// Oracle lookups with a bounded persistent error: each (history, action)
// pair sees a fixed additive offset drawn uniformly from [-epsilon, epsilon)
// for the life of the run, modeling a value function that is consistently
// wrong by at most epsilon.
class NoisyOracle {
 public:
  NoisyOracle(OracleValues* base, double epsilon, uint64_t noise_seed);

  double HistoryValue(int node, int player);
  double ActionValue(int node, Action action, int player);

  double epsilon() const { return epsilon_; }

 private:
  double Delta(int node, int action_or_minus1) const;

  OracleValues* base_;
  double epsilon_;
  uint64_t noise_seed_;
};

// v^c(pi, s): sum over member histories of eta_{-i} * v_i, computed through
// the recursive history values.
double CounterfactualValue(const GameTree& tree, const PolicyTable& policy,
                           int infoset, OracleValues* values);
// q^c(pi, s, a) for every action of the infoset.
std::vector<double> CounterfactualActionValues(const GameTree& tree,
                                               const PolicyTable& policy,
                                               int infoset,
                                               OracleValues* values);
// The same value via the explicit reach-weighted terminal sum
// sum_{z in Z(s)} eta_{-i}(z[s]) * eta(z[s], z) * u_i(z).
double CounterfactualValueTerminalSum(const GameTree& tree,
                                      const PolicyTable& policy, int infoset);

// Expected value for `player` of a best response against the other player's
// part of `policy`. Ties between best-response actions break to the lowest
// action id.
double BestResponseValue(const GameTree& tree, const PolicyTable& policy,
                         int player);

// NashConv: BestResponseValue for player 0 plus player 1 (not averaged).
double Exploitability(const GameTree& tree, const PolicyTable& policy);
double Exploitability(const GameTree& tree, const TabularPolicy& policy);

}  // namespace escher

#endif  // ESCHER_VALUES_H_

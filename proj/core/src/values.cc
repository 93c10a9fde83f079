#include "escher/values.h"

#include <algorithm>
#include <functional>
#include <limits>

#include "escher/check.h"
#include "escher/game.h"
#include "escher/game_tree.h"
#include "escher/rng.h"

namespace escher {

namespace {

// Probability of the edge leading into `node` under `policy`, attributed to
// whichever player (or chance) acted at the parent.
double EdgeProb(const GameTree& tree, const PolicyTable& policy, int node) {
  const GameTree::Node& n = tree.node(node);
  const GameTree::Node& parent = tree.node(n.parent);
  if (parent.player == kChancePlayerId) {
    return tree.ChanceProb(n.parent, n.parent_action);
  }
  return policy[parent.infoset][n.parent_action];
}

// eta_{-i}(h): product of all chance and opponent action probabilities on the
// path from the root to `node`.
double OpponentChanceReach(const GameTree& tree, const PolicyTable& policy,
                           int node, int player) {
  double reach = 1.0;
  for (int cur = node; tree.node(cur).parent >= 0;
       cur = tree.node(cur).parent) {
    if (tree.node(tree.node(cur).parent).player != player) {
      reach *= EdgeProb(tree, policy, cur);
    }
  }
  return reach;
}

}  // namespace

ReachTable ComputeReaches(const GameTree& tree, const PolicyTable& policy) {
  const int n = tree.num_nodes();
  ReachTable reaches;
  reaches.player0.assign(n, 1.0);
  reaches.player1.assign(n, 1.0);
  reaches.chance.assign(n, 1.0);
  // Children are appended after their parent during construction, so a single
  // forward pass sees every parent first.
  for (int id = 1; id < n; ++id) {
    const GameTree::Node& node = tree.node(id);
    ESCHER_CHECK_LT(node.parent, id);
    const int parent = node.parent;
    const double prob = EdgeProb(tree, policy, id);
    reaches.player0[id] = reaches.player0[parent];
    reaches.player1[id] = reaches.player1[parent];
    reaches.chance[id] = reaches.chance[parent];
    switch (tree.node(parent).player) {
      case 0:
        reaches.player0[id] *= prob;
        break;
      case 1:
        reaches.player1[id] *= prob;
        break;
      default:
        reaches.chance[id] *= prob;
        break;
    }
  }
  return reaches;
}

ReachProfile ReachProfileAt(const ReachTable& reaches, int node, int player) {
  const double own =
      player == 0 ? reaches.player0[node] : reaches.player1[node];
  const double other =
      player == 0 ? reaches.player1[node] : reaches.player0[node];
  ReachProfile profile;
  profile.own = own;
  profile.opponent_and_chance = other * reaches.chance[node];
  profile.total = own * profile.opponent_and_chance;
  return profile;
}

OracleValues::OracleValues(std::shared_ptr<const GameTree> tree)
    : tree_(std::move(tree)),
      memo_(tree_->num_nodes(), 0.0),
      stamp_(tree_->num_nodes(), 0) {}

void OracleValues::SetPolicy(const PolicyTable* policy) {
  ESCHER_CHECK(policy != nullptr);
  ESCHER_CHECK_EQ(static_cast<int>(policy->size()), tree_->num_infosets());
  policy_ = policy;
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
}

double OracleValues::HistoryValue(int node, int player) {
  ESCHER_CHECK(policy_ != nullptr);
  return player == 0 ? Value0(node) : -Value0(node);
}

double OracleValues::ActionValue(int node, Action action, int player) {
  ESCHER_CHECK(policy_ != nullptr);
  return HistoryValue(tree_->Child(node, action), player);
}

double OracleValues::HistoryValueNoMemo(int node, int player) const {
  ESCHER_CHECK(policy_ != nullptr);
  return player == 0 ? Value0NoMemo(node) : -Value0NoMemo(node);
}

double OracleValues::Value0(int node) {
  if (stamp_[node] == epoch_) return memo_[node];
  const GameTree::Node& n = tree_->node(node);
  double value;
  if (n.player == kTerminalPlayerId) {
    value = n.utility0;
  } else if (n.player == kChancePlayerId) {
    value = 0.0;
    for (int a = 0; a < n.num_actions; ++a) {
      value += tree_->ChanceProb(node, a) * Value0(tree_->Child(node, a));
    }
  } else {
    const std::vector<double>& probs = (*policy_)[n.infoset];
    value = 0.0;
    for (int a = 0; a < n.num_actions; ++a) {
      value += probs[a] * Value0(tree_->Child(node, a));
    }
  }
  memo_[node] = value;
  stamp_[node] = epoch_;
  return value;
}

double OracleValues::Value0NoMemo(int node) const {
  const GameTree::Node& n = tree_->node(node);
  double value;
  if (n.player == kTerminalPlayerId) {
    value = n.utility0;
  } else if (n.player == kChancePlayerId) {
    value = 0.0;
    for (int a = 0; a < n.num_actions; ++a) {
      value += tree_->ChanceProb(node, a) * Value0NoMemo(tree_->Child(node, a));
    }
  } else {
    const std::vector<double>& probs = (*policy_)[n.infoset];
    value = 0.0;
    for (int a = 0; a < n.num_actions; ++a) {
      value += probs[a] * Value0NoMemo(tree_->Child(node, a));
    }
  }
  return value;
}

NoisyOracle::NoisyOracle(OracleValues* base, double epsilon,
                         uint64_t noise_seed)
    : base_(base), epsilon_(epsilon), noise_seed_(noise_seed) {
  ESCHER_CHECK(base != nullptr);
  ESCHER_CHECK_GE(epsilon, 0.0);
}

double NoisyOracle::HistoryValue(int node, int player) {
  return base_->HistoryValue(node, player) + Delta(node, -1);
}

double NoisyOracle::ActionValue(int node, Action action, int player) {
  return base_->ActionValue(node, action, player) + Delta(node, action);
}

double NoisyOracle::Delta(int node, int action_or_minus1) const {
  const double unit = HashToUnitDouble(
      noise_seed_, 0, static_cast<uint64_t>(node),
      static_cast<uint64_t>(action_or_minus1 + 1));
  return epsilon_ * (2.0 * unit - 1.0);
}

double CounterfactualValue(const GameTree& tree, const PolicyTable& policy,
                           int infoset, OracleValues* values) {
  values->SetPolicy(&policy);
  const GameTree::Infoset& set = tree.infoset(infoset);
  double total = 0.0;
  for (int member : set.members) {
    total += OpponentChanceReach(tree, policy, member, set.player) *
             values->HistoryValue(member, set.player);
  }
  return total;
}

std::vector<double> CounterfactualActionValues(const GameTree& tree,
                                               const PolicyTable& policy,
                                               int infoset,
                                               OracleValues* values) {
  values->SetPolicy(&policy);
  const GameTree::Infoset& set = tree.infoset(infoset);
  std::vector<double> q(set.num_actions, 0.0);
  for (int member : set.members) {
    const double reach = OpponentChanceReach(tree, policy, member, set.player);
    for (int a = 0; a < set.num_actions; ++a) {
      q[a] += reach * values->ActionValue(member, a, set.player);
    }
  }
  return q;
}

double CounterfactualValueTerminalSum(const GameTree& tree,
                                      const PolicyTable& policy, int infoset) {
  const GameTree::Infoset& set = tree.infoset(infoset);
  double total = 0.0;
  std::function<void(int, double, double)> descend =
      [&](int node, double weight, double base) {
        const GameTree::Node& n = tree.node(node);
        if (n.player == kTerminalPlayerId) {
          total += base * weight * tree.Utility(node, set.player);
          return;
        }
        for (int a = 0; a < n.num_actions; ++a) {
          const double prob = n.player == kChancePlayerId
                                  ? tree.ChanceProb(node, a)
                                  : policy[n.infoset][a];
          descend(tree.Child(node, a), weight * prob, base);
        }
      };
  for (int member : set.members) {
    descend(member, 1.0,
            OpponentChanceReach(tree, policy, member, set.player));
  }
  return total;
}

double BestResponseValue(const GameTree& tree, const PolicyTable& policy,
                         int player) {
  const ReachTable reaches = ComputeReaches(tree, policy);
  std::vector<double> opponent_reach(tree.num_nodes());
  for (int id = 0; id < tree.num_nodes(); ++id) {
    opponent_reach[id] =
        (player == 0 ? reaches.player1[id] : reaches.player0[id]) *
        reaches.chance[id];
  }

  std::vector<int> best_action(tree.num_infosets(), -1);
  std::vector<double> memo(tree.num_nodes(), 0.0);
  std::vector<char> have(tree.num_nodes(), 0);

  // Deciding an infoset only requires values below its members, and every
  // responder infoset there is strictly deeper in the responder's own action
  // sequence, so on-demand decisions are consistent across members.
  std::function<double(int)> value = [&](int node) -> double {
    if (have[node]) return memo[node];
    const GameTree::Node& n = tree.node(node);
    double v;
    if (n.player == kTerminalPlayerId) {
      v = tree.Utility(node, player);
    } else if (n.player == kChancePlayerId) {
      v = 0.0;
      for (int a = 0; a < n.num_actions; ++a) {
        v += tree.ChanceProb(node, a) * value(tree.Child(node, a));
      }
    } else if (n.player != player) {
      const std::vector<double>& probs = policy[n.infoset];
      v = 0.0;
      for (int a = 0; a < n.num_actions; ++a) {
        v += probs[a] * value(tree.Child(node, a));
      }
    } else {
      int& chosen = best_action[n.infoset];
      if (chosen < 0) {
        const GameTree::Infoset& set = tree.infoset(n.infoset);
        double best = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < set.num_actions; ++a) {
          double score = 0.0;
          for (int member : set.members) {
            score += opponent_reach[member] * value(tree.Child(member, a));
          }
          if (score > best) {
            best = score;
            chosen = a;
          }
        }
      }
      v = value(tree.Child(node, chosen));
    }
    have[node] = 1;
    memo[node] = v;
    return v;
  };
  return value(tree.root());
}

double Exploitability(const GameTree& tree, const PolicyTable& policy) {
  return BestResponseValue(tree, policy, 0) +
         BestResponseValue(tree, policy, 1);
}

double Exploitability(const GameTree& tree, const TabularPolicy& policy) {
  return Exploitability(tree, FromTabularPolicy(tree, policy));
}

}  // namespace escher

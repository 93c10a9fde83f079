#include "escher/game_tree.h"

#include <cmath>
#include <utility>

namespace escher {

std::shared_ptr<const GameTree> GameTree::Build(
    std::shared_ptr<const Game> game) {
  auto tree = std::shared_ptr<GameTree>(new GameTree());
  tree->game_ = game;

  struct PendingNode {
    std::unique_ptr<State> state;
    int id;
  };
  std::vector<PendingNode> stack;

  tree->nodes_.push_back(Node{0, -1, -1, -1, 0, 0, 0.0});
  stack.push_back({game->NewInitialState(), 0});

  while (!stack.empty()) {
    PendingNode current = std::move(stack.back());
    stack.pop_back();
    const State& state = *current.state;
    Node& node = tree->nodes_[current.id];

    if (state.IsTerminal()) {
      node.player = kTerminalPlayerId;
      node.infoset = -1;
      node.first_edge = -1;
      node.num_actions = 0;
      const std::vector<double> returns = state.Returns();
      ESCHER_CHECK_EQ(returns.size(), 2u);
      if (std::abs(returns[0] + returns[1]) > 1e-9) {
        FatalError("terminal utilities are not zero-sum at " +
                   state.ToString());
      }
      if (std::abs(returns[0]) > game->MaxUtility() + 1e-9) {
        FatalError("terminal utility exceeds the declared payoff range at " +
                   state.ToString());
      }
      node.utility0 = returns[0];
      ++tree->num_terminals_;
      continue;
    }

    const int num_actions = state.NumActions();
    ESCHER_CHECK_GT(num_actions, 0);
    node.player = state.CurrentPlayer();
    node.num_actions = num_actions;
    node.first_edge = static_cast<int>(tree->edge_child_.size());

    std::vector<double> chance_probs;
    if (state.IsChanceNode()) {
      node.infoset = -1;
      const auto outcomes = state.ChanceOutcomes();
      ESCHER_CHECK_EQ(static_cast<int>(outcomes.size()), num_actions);
      chance_probs.resize(num_actions, 0.0);
      double total = 0.0;
      for (const auto& [action, prob] : outcomes) {
        ESCHER_CHECK_GE(action, 0);
        ESCHER_CHECK_LT(action, num_actions);
        ESCHER_CHECK_GT(prob, 0.0);
        chance_probs[action] = prob;
        total += prob;
      }
      if (std::abs(total - 1.0) > 1e-12) {
        FatalError("chance outcome probabilities do not sum to 1 at " +
                   state.ToString());
      }
    } else {
      const int player = node.player;
      const std::string key = state.InformationStateString();
      auto [it, inserted] = tree->key_to_infoset_[player].try_emplace(
          key, tree->num_infosets());
      if (inserted) {
        Infoset infoset;
        infoset.player = player;
        infoset.key = key;
        infoset.num_actions = num_actions;
        infoset.action_labels.reserve(num_actions);
        for (Action a = 0; a < num_actions; ++a) {
          infoset.action_labels.push_back(state.ActionToString(a));
        }
        tree->infosets_.push_back(std::move(infoset));
        tree->infosets_by_player_[player].push_back(it->second);
      } else {
        const Infoset& existing = tree->infosets_[it->second];
        if (existing.num_actions != num_actions) {
          FatalError("information set '" + key +
                     "' has inconsistent action counts");
        }
        for (Action a = 0; a < num_actions; ++a) {
          if (existing.action_labels[a] != state.ActionToString(a)) {
            FatalError("information set '" + key +
                       "' has inconsistent action labels");
          }
        }
      }
      node.infoset = it->second;
      tree->infosets_[it->second].members.push_back(current.id);
    }

    for (Action a = 0; a < num_actions; ++a) {
      const int child_id = static_cast<int>(tree->nodes_.size());
      tree->nodes_.push_back(Node{0, -1, current.id, a, 0, 0, 0.0});
      tree->edge_child_.push_back(child_id);
      tree->edge_chance_prob_.push_back(chance_probs.empty() ? 0.0
                                                             : chance_probs[a]);
      stack.push_back({state.Child(a), child_id});
    }
  }
  return tree;
}

int GameTree::InfosetId(int player, const std::string& key) const {
  const auto& map = key_to_infoset_[player];
  auto it = map.find(key);
  return it == map.end() ? -1 : it->second;
}

std::string GameTree::NodeString(int node_id) const {
  std::unique_ptr<State> state = game_->NewInitialState();
  std::vector<Action> path;
  for (int id = node_id; nodes_[id].parent >= 0; id = nodes_[id].parent) {
    path.push_back(nodes_[id].parent_action);
  }
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    state->ApplyAction(*it);
  }
  return state->ToString();
}

}  // namespace escher

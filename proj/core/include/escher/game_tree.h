#ifndef ESCHER_GAME_TREE_H_
#define ESCHER_GAME_TREE_H_

#include <array>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "escher/game.h"

namespace escher {

// Fully expanded game tree with information sets resolved by key collision.
// Built once per game and shared read-only between solver runs; all per-node
// queries are array lookups. Node 0 is the root and children of a node are
// contiguous in the edge arrays, ordered by local action id.
class GameTree {
 public:
  struct Node {
    int player;         // 0, 1, kChancePlayerId or kTerminalPlayerId.
    int infoset;        // Infoset id at decision nodes, -1 otherwise.
    int parent;         // -1 at the root.
    int parent_action;  // Local action taken at the parent, -1 at the root.
    int first_edge;
    int num_actions;    // 0 at terminals.
    double utility0;    // Terminal utility of player 0; u1 = -u0.
  };

  struct Infoset {
    int player;
    std::string key;
    int num_actions;
    std::vector<std::string> action_labels;
    std::vector<int> members;  // Node ids in depth-first discovery order.
  };

  static std::shared_ptr<const GameTree> Build(
      std::shared_ptr<const Game> game);

  const Game& game() const { return *game_; }
  int root() const { return 0; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_infosets() const { return static_cast<int>(infosets_.size()); }
  int num_terminals() const { return num_terminals_; }
  int num_edges() const { return static_cast<int>(edge_child_.size()); }

  const Node& node(int id) const { return nodes_[id]; }
  const Infoset& infoset(int id) const { return infosets_[id]; }

  int Child(int node_id, Action a) const {
    return edge_child_[nodes_[node_id].first_edge + a];
  }
  double ChanceProb(int node_id, Action a) const {
    return edge_chance_prob_[nodes_[node_id].first_edge + a];
  }
  int EdgeIndex(int node_id, Action a) const {
    return nodes_[node_id].first_edge + a;
  }
  // Terminal utility for `player`.
  double Utility(int node_id, int player) const {
    return player == 0 ? nodes_[node_id].utility0 : -nodes_[node_id].utility0;
  }

  // Infoset id for (player, key), or -1 if unknown.
  int InfosetId(int player, const std::string& key) const;
  const std::vector<int>& InfosetsOfPlayer(int player) const {
    return infosets_by_player_[player];
  }

  // Human-readable history of a node, for diagnostics.
  std::string NodeString(int node_id) const;

 private:
  GameTree() = default;

  std::shared_ptr<const Game> game_;
  std::vector<Node> nodes_;
  std::vector<int> edge_child_;
  std::vector<double> edge_chance_prob_;
  std::vector<Infoset> infosets_;
  std::array<std::unordered_map<std::string, int>, 2> key_to_infoset_;
  std::array<std::vector<int>, 2> infosets_by_player_;
  int num_terminals_ = 0;
};

}  // namespace escher

#endif  // ESCHER_GAME_TREE_H_

#ifndef ESCHER_GAME_H_
#define ESCHER_GAME_H_

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "escher/check.h"

namespace escher {

// Action ids are local to the current decision point: a state with k legal
// actions accepts ids 0..k-1, and ActionToString maps each id to its label.
using Action = int;

inline constexpr int kNumPlayers = 2;
inline constexpr int kChancePlayerId = -1;
inline constexpr int kTerminalPlayerId = -2;

// Names one information set: the acting player plus that player's view of the
// history. Keys are only comparable between states of the same player.
struct InfoKey {
  int player;
  std::string key;

  bool operator==(const InfoKey& other) const {
    return player == other.player && key == other.key;
  }
  bool operator<(const InfoKey& other) const {
    return player != other.player ? player < other.player : key < other.key;
  }
};

// Game construction parameters as name -> value strings, e.g.
// {"board_width", "2"} or {"ship_sizes", "[2]"}.
using GameParameters = std::map<std::string, std::string>;

class State {
 public:
  virtual ~State() = default;

  // 0 or 1 at decision nodes, kChancePlayerId at chance nodes,
  // kTerminalPlayerId at terminals.
  virtual int CurrentPlayer() const = 0;
  bool IsTerminal() const { return CurrentPlayer() == kTerminalPlayerId; }
  bool IsChanceNode() const { return CurrentPlayer() == kChancePlayerId; }

  // Number of legal actions (or chance outcomes) at this state.
  virtual int NumActions() const = 0;

  // The legal action ids 0..NumActions()-1.
  std::vector<Action> LegalActions() const;

  // Outcome ids with their probabilities; only valid at chance nodes.
  std::vector<std::pair<Action, double>> ChanceOutcomes() const;

  // Mutates this state. Prefer Child() for pure expansion.
  void ApplyAction(Action action);

  // Returns the successor state, leaving this state untouched.
  std::unique_ptr<State> Child(Action action) const;

  virtual std::unique_ptr<State> Clone() const = 0;

  // Terminal utilities for both players; only valid at terminals.
  std::vector<double> Returns() const;

  // The acting player's information set key; only valid at decision nodes.
  std::string InformationStateString() const;
  InfoKey GetInfoKey() const { return {CurrentPlayer(), InformationStateString()}; }

  virtual std::string ActionToString(Action action) const = 0;

  // All actions applied since the initial state.
  const std::vector<Action>& History() const { return history_; }

  // Human-readable description of the full history.
  virtual std::string ToString() const = 0;

 protected:
  State() = default;
  State(const State&) = default;

  virtual void DoApplyAction(Action action) = 0;
  virtual std::vector<double> DoReturns() const = 0;
  virtual std::string DoInformationState() const = 0;
  virtual std::vector<std::pair<Action, double>> DoChanceOutcomes() const = 0;

  std::vector<Action> history_;
};

class Game {
 public:
  virtual ~Game() = default;

  virtual std::string Name() const = 0;
  virtual GameParameters Parameters() const = 0;
  virtual std::unique_ptr<State> NewInitialState() const = 0;

  // Payoff range D: no terminal utility exceeds this in magnitude.
  virtual double MaxUtility() const = 0;

  // Upper bound on the number of actions in any playout.
  virtual int MaxGameLength() const = 0;

  int NumPlayers() const { return kNumPlayers; }
};

// Instantiates a game by spec name: kuhn_poker, leduc_poker, liars_dice, or
// battleship. Unknown names or malformed parameters raise ConfigError.
std::shared_ptr<const Game> LoadGame(const std::string& name,
                                     const GameParameters& params = {});

// Parameter lookup helpers shared by game implementations.
int ParamInt(const GameParameters& params, const std::string& key,
             int default_value);
bool ParamBool(const GameParameters& params, const std::string& key,
               bool default_value);
std::vector<int> ParamIntList(const GameParameters& params,
                              const std::string& key,
                              const std::vector<int>& default_value);

}  // namespace escher

#endif  // ESCHER_GAME_H_

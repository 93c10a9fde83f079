#ifndef ESCHER_GAMES_BATTLESHIP_H_
#define ESCHER_GAMES_BATTLESHIP_H_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "escher/game.h"

namespace escher {

// Battleship on a small grid. Each player secretly places their ships (a
// decision, not chance: player 0 places first, then player 1, alternating per
// ship), then players alternate firing shots, player 0 first, `num_shots`
// each. Shot locations are public; only the shooter's hit/miss observation
// and both placements are private. A ship is sunk when all of its cells have
// been hit. Final payoff: value of opponent ships sunk minus value of own
// ships lost.
class BattleshipGame : public Game {
 public:
  explicit BattleshipGame(const GameParameters& params);

  std::string Name() const override { return "battleship"; }
  GameParameters Parameters() const override;
  std::unique_ptr<State> NewInitialState() const override;
  double MaxUtility() const override;
  int MaxGameLength() const override;

  int width() const { return width_; }
  int height() const { return height_; }
  const std::vector<int>& ship_sizes() const { return ship_sizes_; }
  const std::vector<int>& ship_values() const { return ship_values_; }
  int num_shots() const { return num_shots_; }
  bool allow_repeated_shots() const { return allow_repeated_shots_; }

  // A ship placement: orientation (0 horizontal, 1 vertical) and top-left
  // anchor cell.
  struct Placement {
    int orientation;
    int row;
    int col;
  };
  // All placements of a ship of `size` on the board, in canonical order.
  std::vector<Placement> PlacementsForSize(int size) const;
  std::vector<int> PlacementCells(const Placement& p, int size) const;

 private:
  int width_;
  int height_;
  std::vector<int> ship_sizes_;
  std::vector<int> ship_values_;
  int num_shots_;
  bool allow_repeated_shots_;
};

class BattleshipState : public State {
 public:
  explicit BattleshipState(const BattleshipGame* game);

  int CurrentPlayer() const override;
  int NumActions() const override;
  std::unique_ptr<State> Clone() const override;
  std::string ActionToString(Action action) const override;
  std::string ToString() const override;

 protected:
  void DoApplyAction(Action action) override;
  std::vector<double> DoReturns() const override;
  std::string DoInformationState() const override;
  std::vector<std::pair<Action, double>> DoChanceOutcomes() const override;

 private:
  bool InPlacementPhase() const;
  // Player whose turn it is, assuming the game is not over.
  int TurnPlayer() const;
  std::vector<int> LegalPlacementIndices(int player) const;
  std::vector<int> LegalShotCells(int player) const;
  bool CellOnOwnShip(int player, int cell) const;

  const BattleshipGame* game_;
  // Chosen placement index per (player, ship), flattened player-major.
  std::vector<int> placements_;
  // Occupied cells per player per ship.
  std::vector<std::vector<int>> ship_cells_[2];
  // Shots fired by each player in order.
  std::vector<int> shots_[2];
};

}  // namespace escher

#endif  // ESCHER_GAMES_BATTLESHIP_H_

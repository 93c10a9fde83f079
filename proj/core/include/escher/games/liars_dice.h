#ifndef ESCHER_GAMES_LIARS_DICE_H_
#define ESCHER_GAMES_LIARS_DICE_H_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "escher/game.h"

namespace escher {

// Liar's dice with one six-sided die per player. Each player's die is rolled
// by a chance node (player 0 first), then players alternate making strictly
// increasing bids "quantity-face" ordered 1-1 < 1-2 < ... < 1-6 < 2-1 < ... <
// 2-6, or challenge the previous bid ("liar"). On a challenge the bid stands
// if at least `quantity` dice show `face`, counting the highest face as wild;
// the winner receives 1 from the loser.
class LiarsDiceGame : public Game {
 public:
  explicit LiarsDiceGame(const GameParameters& params);

  std::string Name() const override { return "liars_dice"; }
  GameParameters Parameters() const override { return {}; }
  std::unique_ptr<State> NewInitialState() const override;
  double MaxUtility() const override { return 1.0; }
  int MaxGameLength() const override { return 15; }
};

class LiarsDiceState : public State {
 public:
  LiarsDiceState() = default;

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
  static constexpr int kNumBids = 12;

  // Maps a local action id to a bid index or -1 for "liar".
  int ActionToBid(Action action) const;

  int dice_[2] = {0, 0};
  std::vector<int> bids_;
  bool challenged_ = false;
};

}  // namespace escher

#endif  // ESCHER_GAMES_LIARS_DICE_H_

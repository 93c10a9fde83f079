#ifndef ESCHER_GAMES_LEDUC_POKER_H_
#define ESCHER_GAMES_LEDUC_POKER_H_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "escher/game.h"

namespace escher {

// Leduc poker. Six cards (ranks J, Q, K in two suits), one private card per
// player dealt by a single root chance node over the 30 ordered pairs, ante 1.
// Two betting rounds with fixed raise sizes 2 and 4 and at most two raises
// per round; a public card is revealed between rounds. At showdown a private
// card pairing the public card wins, otherwise the higher rank; equal ranks
// split the pot. Folding is only legal when facing an outstanding raise.
class LeducGame : public Game {
 public:
  std::string Name() const override { return "leduc_poker"; }
  GameParameters Parameters() const override { return {}; }
  std::unique_ptr<State> NewInitialState() const override;
  // Ante 1 plus two raises of 2 and two raises of 4.
  double MaxUtility() const override { return 13.0; }
  int MaxGameLength() const override { return 10; }
};

class LeducState : public State {
 public:
  LeducState() = default;

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
  enum Move { kFold, kCall, kRaise };

  std::vector<Move> LegalMoves() const;
  std::vector<int> RemainingCards() const;
  void EndRound();

  int private_cards_[2] = {-1, -1};
  int public_card_ = -1;
  int round_ = 1;
  // Chips committed by each player including the ante.
  int stakes_[2] = {1, 1};
  int raises_this_round_ = 0;
  int actions_this_round_ = 0;
  int to_act_ = kChancePlayerId;
  int folder_ = -1;
  bool terminal_ = false;
  // Betting letters f/c/r for each round.
  std::string round_actions_[2];
};

}  // namespace escher

#endif  // ESCHER_GAMES_LEDUC_POKER_H_

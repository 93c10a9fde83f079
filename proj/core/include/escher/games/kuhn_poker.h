#ifndef ESCHER_GAMES_KUHN_POKER_H_
#define ESCHER_GAMES_KUHN_POKER_H_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "escher/game.h"

namespace escher {

// Kuhn poker. Three cards J < Q < K, one dealt to each player by a single
// root chance node with six ordered deals, each with probability 1/6. Both
// players ante 1. Player 0 passes or bets 1; facing a bet, a player folds
// (pass) or calls (bet). Showdown pays 1 after pass-pass and 2 after a called
// bet; a fold pays the bettor 1.
class KuhnGame : public Game {
 public:
  std::string Name() const override { return "kuhn_poker"; }
  GameParameters Parameters() const override { return {}; }
  std::unique_ptr<State> NewInitialState() const override;
  double MaxUtility() const override { return 2.0; }
  int MaxGameLength() const override { return 4; }
};

class KuhnState : public State {
 public:
  KuhnState() = default;

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
  // Cards held by each player, -1 before the deal.
  int cards_[2] = {-1, -1};
  // Betting actions so far, 0 = pass, 1 = bet.
  std::vector<int> bets_;
};

}  // namespace escher

#endif  // ESCHER_GAMES_KUHN_POKER_H_

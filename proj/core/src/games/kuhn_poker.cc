#include "escher/games/kuhn_poker.h"

namespace escher {
namespace {

constexpr char kCardChars[] = {'J', 'Q', 'K'};

// Ordered two-card deals from {J, Q, K}.
constexpr int kDeals[6][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};

}  // namespace

std::unique_ptr<State> KuhnGame::NewInitialState() const {
  return std::make_unique<KuhnState>();
}

int KuhnState::CurrentPlayer() const {
  if (cards_[0] < 0) return kChancePlayerId;
  const int n = static_cast<int>(bets_.size());
  if (n >= 2) {
    // pass-pass, bet-(fold|call), or pass-bet-(fold|call) ends the game.
    if (bets_[n - 1] == bets_[n - 2] || bets_[n - 2] == 1) {
      return kTerminalPlayerId;
    }
  }
  return n % 2;
}

int KuhnState::NumActions() const {
  if (IsTerminal()) {
    throw UsageError("NumActions called on a terminal state");
  }
  return IsChanceNode() ? 6 : 2;
}

std::unique_ptr<State> KuhnState::Clone() const {
  return std::make_unique<KuhnState>(*this);
}

void KuhnState::DoApplyAction(Action action) {
  if (cards_[0] < 0) {
    cards_[0] = kDeals[action][0];
    cards_[1] = kDeals[action][1];
  } else {
    bets_.push_back(action);
  }
}

std::vector<double> KuhnState::DoReturns() const {
  const int n = static_cast<int>(bets_.size());
  const double showdown = cards_[0] > cards_[1] ? 1.0 : -1.0;
  if (bets_[n - 1] == 0 && bets_[n - 2] == 1) {
    // A fold: the player who bet wins 1. Betting actions alternate starting
    // with player 0, so the folder acted at index n - 1.
    const double u0 = (n - 1) % 2 == 0 ? -1.0 : 1.0;
    return {u0, -u0};
  }
  const double stake = bets_[n - 1] == 1 ? 2.0 : 1.0;
  return {showdown * stake, -showdown * stake};
}

std::string KuhnState::DoInformationState() const {
  std::string key(1, kCardChars[cards_[CurrentPlayer()]]);
  for (int b : bets_) key.push_back(b == 0 ? 'p' : 'b');
  return key;
}

std::vector<std::pair<Action, double>> KuhnState::DoChanceOutcomes() const {
  std::vector<std::pair<Action, double>> outcomes;
  outcomes.reserve(6);
  for (int i = 0; i < 6; ++i) outcomes.emplace_back(i, 1.0 / 6.0);
  return outcomes;
}

std::string KuhnState::ActionToString(Action action) const {
  if (IsChanceNode()) {
    return std::string("deal:") + kCardChars[kDeals[action][0]] +
           kCardChars[kDeals[action][1]];
  }
  return action == 0 ? "pass" : "bet";
}

std::string KuhnState::ToString() const {
  if (cards_[0] < 0) return "deal pending";
  std::string s = {kCardChars[cards_[0]], kCardChars[cards_[1]], ' '};
  for (int b : bets_) s.push_back(b == 0 ? 'p' : 'b');
  return s;
}

}  // namespace escher

#include "escher/games/leduc_poker.h"

namespace escher {
namespace {

constexpr int kNumCards = 6;
constexpr int kMaxRaises = 2;
constexpr int kRaiseSize[2] = {2, 4};

// Card label: rank letter plus suit digit, e.g. "Q1".
std::string CardString(int card) {
  std::string s(1, "JQK"[card / 2]);
  s.push_back(static_cast<char>('0' + card % 2));
  return s;
}

}  // namespace

std::unique_ptr<State> LeducGame::NewInitialState() const {
  return std::make_unique<LeducState>();
}

int LeducState::CurrentPlayer() const {
  if (terminal_) return kTerminalPlayerId;
  return to_act_;
}

std::vector<LeducState::Move> LeducState::LegalMoves() const {
  std::vector<Move> moves;
  if (stakes_[1 - to_act_] > stakes_[to_act_]) moves.push_back(kFold);
  moves.push_back(kCall);
  if (raises_this_round_ < kMaxRaises) moves.push_back(kRaise);
  return moves;
}

std::vector<int> LeducState::RemainingCards() const {
  std::vector<int> cards;
  for (int c = 0; c < kNumCards; ++c) {
    if (c != private_cards_[0] && c != private_cards_[1]) cards.push_back(c);
  }
  return cards;
}

int LeducState::NumActions() const {
  if (terminal_) {
    throw UsageError("NumActions called on a terminal state");
  }
  if (to_act_ == kChancePlayerId) {
    return private_cards_[0] < 0 ? 30 : 4;
  }
  return static_cast<int>(LegalMoves().size());
}

std::unique_ptr<State> LeducState::Clone() const {
  return std::make_unique<LeducState>(*this);
}

void LeducState::EndRound() {
  if (round_ == 1) {
    to_act_ = kChancePlayerId;
  } else {
    terminal_ = true;
  }
}

void LeducState::DoApplyAction(Action action) {
  if (to_act_ == kChancePlayerId) {
    if (private_cards_[0] < 0) {
      // Ordered pair index over i != j: i gets slots of 5 candidates each.
      const int i = action / 5;
      int j = action % 5;
      if (j >= i) ++j;
      private_cards_[0] = i;
      private_cards_[1] = j;
    } else {
      public_card_ = RemainingCards()[action];
      round_ = 2;
      raises_this_round_ = 0;
      actions_this_round_ = 0;
    }
    to_act_ = 0;
    return;
  }

  const Move move = LegalMoves()[action];
  const int cur = to_act_;
  const int opp = 1 - cur;
  ++actions_this_round_;
  round_actions_[round_ - 1].push_back("fcr"[move]);
  switch (move) {
    case kFold:
      folder_ = cur;
      terminal_ = true;
      return;
    case kCall:
      stakes_[cur] = stakes_[opp];
      if (actions_this_round_ >= 2) {
        EndRound();
        return;
      }
      break;
    case kRaise:
      stakes_[cur] = stakes_[opp] + kRaiseSize[round_ - 1];
      ++raises_this_round_;
      break;
  }
  to_act_ = opp;
}

std::vector<double> LeducState::DoReturns() const {
  if (folder_ >= 0) {
    const double lost = stakes_[folder_];
    const double u0 = folder_ == 0 ? -lost : lost;
    return {u0, -u0};
  }
  // Showdown: pairing the public card wins, otherwise higher rank.
  const int rank0 = private_cards_[0] / 2;
  const int rank1 = private_cards_[1] / 2;
  const int public_rank = public_card_ / 2;
  int winner = -1;
  if (rank0 == public_rank) {
    winner = 0;
  } else if (rank1 == public_rank) {
    winner = 1;
  } else if (rank0 != rank1) {
    winner = rank0 > rank1 ? 0 : 1;
  }
  if (winner < 0) return {0.0, 0.0};
  const double won = stakes_[1 - winner];
  const double u0 = winner == 0 ? won : -won;
  return {u0, -u0};
}

std::string LeducState::DoInformationState() const {
  std::string key = CardString(private_cards_[to_act_]);
  key.push_back('|');
  key += public_card_ < 0 ? "-" : CardString(public_card_);
  key.push_back('|');
  key += round_actions_[0];
  key.push_back('|');
  key += round_actions_[1];
  return key;
}

std::vector<std::pair<Action, double>> LeducState::DoChanceOutcomes() const {
  std::vector<std::pair<Action, double>> outcomes;
  if (private_cards_[0] < 0) {
    outcomes.reserve(30);
    for (int i = 0; i < 30; ++i) outcomes.emplace_back(i, 1.0 / 30.0);
  } else {
    outcomes.reserve(4);
    for (int i = 0; i < 4; ++i) outcomes.emplace_back(i, 1.0 / 4.0);
  }
  return outcomes;
}

std::string LeducState::ActionToString(Action action) const {
  if (to_act_ == kChancePlayerId) {
    if (private_cards_[0] < 0) {
      const int i = action / 5;
      int j = action % 5;
      if (j >= i) ++j;
      return "deal:" + CardString(i) + CardString(j);
    }
    return "public:" + CardString(RemainingCards()[action]);
  }
  switch (LegalMoves()[action]) {
    case kFold:
      return "fold";
    case kCall:
      return "call";
    case kRaise:
      return "raise";
  }
  FatalError("unreachable");
}

std::string LeducState::ToString() const {
  if (private_cards_[0] < 0) return "deal pending";
  std::string s = CardString(private_cards_[0]) + CardString(private_cards_[1]);
  s += " pub:" + (public_card_ < 0 ? std::string("-") : CardString(public_card_));
  s += " r1:" + round_actions_[0] + " r2:" + round_actions_[1];
  return s;
}

}  // namespace escher

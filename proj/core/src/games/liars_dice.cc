#include "escher/games/liars_dice.h"

namespace escher {
namespace {

constexpr int kDiceSides = 6;

int BidQuantity(int bid) { return bid / kDiceSides + 1; }
int BidFace(int bid) { return bid % kDiceSides + 1; }

}  // namespace

LiarsDiceGame::LiarsDiceGame(const GameParameters& params) {
  for (const auto& [key, value] : params) {
    throw ConfigError("liars_dice: unknown parameter '" + key + "'");
  }
}

std::unique_ptr<State> LiarsDiceGame::NewInitialState() const {
  return std::make_unique<LiarsDiceState>();
}

int LiarsDiceState::CurrentPlayer() const {
  if (challenged_) return kTerminalPlayerId;
  if (dice_[0] == 0 || dice_[1] == 0) return kChancePlayerId;
  return static_cast<int>(bids_.size()) % 2;
}

int LiarsDiceState::ActionToBid(Action action) const {
  const int last = bids_.empty() ? -1 : bids_.back();
  const int num_higher = kNumBids - 1 - last;
  if (action < num_higher) return last + 1 + action;
  return -1;
}

int LiarsDiceState::NumActions() const {
  if (challenged_) {
    throw UsageError("NumActions called on a terminal state");
  }
  if (IsChanceNode()) return kDiceSides;
  const int last = bids_.empty() ? -1 : bids_.back();
  return (kNumBids - 1 - last) + (bids_.empty() ? 0 : 1);
}

std::unique_ptr<State> LiarsDiceState::Clone() const {
  return std::make_unique<LiarsDiceState>(*this);
}

void LiarsDiceState::DoApplyAction(Action action) {
  if (dice_[0] == 0) {
    dice_[0] = action + 1;
    return;
  }
  if (dice_[1] == 0) {
    dice_[1] = action + 1;
    return;
  }
  const int bid = ActionToBid(action);
  if (bid < 0) {
    challenged_ = true;
  } else {
    bids_.push_back(bid);
  }
}

std::vector<double> LiarsDiceState::DoReturns() const {
  const int bid = bids_.back();
  const int quantity = BidQuantity(bid);
  const int face = BidFace(bid);
  int matches = 0;
  for (int die : dice_) {
    if (die == face || die == kDiceSides) ++matches;
  }
  // The challenger is the player after the last bidder.
  const int bidder = static_cast<int>(bids_.size() - 1) % 2;
  const int winner = matches >= quantity ? bidder : 1 - bidder;
  const double u0 = winner == 0 ? 1.0 : -1.0;
  return {u0, -u0};
}

std::string LiarsDiceState::DoInformationState() const {
  std::string key(1, static_cast<char>('0' + dice_[CurrentPlayer()]));
  key.push_back('|');
  for (size_t i = 0; i < bids_.size(); ++i) {
    if (i > 0) key.push_back(',');
    key += std::to_string(bids_[i]);
  }
  return key;
}

std::vector<std::pair<Action, double>> LiarsDiceState::DoChanceOutcomes() const {
  std::vector<std::pair<Action, double>> outcomes;
  outcomes.reserve(kDiceSides);
  for (int i = 0; i < kDiceSides; ++i) {
    outcomes.emplace_back(i, 1.0 / kDiceSides);
  }
  return outcomes;
}

std::string LiarsDiceState::ActionToString(Action action) const {
  if (IsChanceNode()) return "roll:" + std::to_string(action + 1);
  const int bid = ActionToBid(action);
  if (bid < 0) return "liar";
  return std::to_string(BidQuantity(bid)) + "-" + std::to_string(BidFace(bid));
}

std::string LiarsDiceState::ToString() const {
  std::string s = "dice:" + std::to_string(dice_[0]) + std::to_string(dice_[1]);
  s += " bids:";
  for (size_t i = 0; i < bids_.size(); ++i) {
    if (i > 0) s.push_back(',');
    s += std::to_string(BidQuantity(bids_[i])) + "-" +
         std::to_string(BidFace(bids_[i]));
  }
  if (challenged_) s += " liar";
  return s;
}

}  // namespace escher

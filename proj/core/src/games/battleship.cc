#include "escher/games/battleship.h"

#include <algorithm>
#include <numeric>

namespace escher {

BattleshipGame::BattleshipGame(const GameParameters& params)
    : width_(ParamInt(params, "board_width", 2)),
      height_(ParamInt(params, "board_height", 2)),
      ship_sizes_(ParamIntList(params, "ship_sizes", {2})),
      ship_values_(ParamIntList(params, "ship_values", {2})),
      num_shots_(ParamInt(params, "num_shots", 3)),
      allow_repeated_shots_(ParamBool(params, "allow_repeated_shots", false)) {
  for (const auto& [key, value] : params) {
    if (key != "board_width" && key != "board_height" && key != "ship_sizes" &&
        key != "ship_values" && key != "num_shots" &&
        key != "allow_repeated_shots") {
      throw ConfigError("battleship: unknown parameter '" + key + "'");
    }
  }
  if (width_ < 1 || height_ < 1) {
    throw ConfigError("battleship: board dimensions must be positive");
  }
  if (ship_sizes_.empty() || ship_sizes_.size() != ship_values_.size()) {
    throw ConfigError(
        "battleship: ship_sizes and ship_values must be non-empty lists of "
        "equal length");
  }
  for (int size : ship_sizes_) {
    if (size < 1 || PlacementsForSize(size).empty()) {
      throw ConfigError("battleship: ship of size " + std::to_string(size) +
                        " does not fit the board");
    }
  }
  if (num_shots_ < 1) {
    throw ConfigError("battleship: num_shots must be positive");
  }
  if (!allow_repeated_shots_ && num_shots_ > width_ * height_) {
    throw ConfigError(
        "battleship: num_shots exceeds board cells with repeated shots "
        "disallowed");
  }
}

GameParameters BattleshipGame::Parameters() const {
  auto list_string = [](const std::vector<int>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
      if (i > 0) s.push_back(',');
      s += std::to_string(v[i]);
    }
    s.push_back(']');
    return s;
  };
  return {{"board_width", std::to_string(width_)},
          {"board_height", std::to_string(height_)},
          {"ship_sizes", list_string(ship_sizes_)},
          {"ship_values", list_string(ship_values_)},
          {"num_shots", std::to_string(num_shots_)},
          {"allow_repeated_shots", allow_repeated_shots_ ? "true" : "false"}};
}

std::unique_ptr<State> BattleshipGame::NewInitialState() const {
  return std::make_unique<BattleshipState>(this);
}

double BattleshipGame::MaxUtility() const {
  return std::accumulate(ship_values_.begin(), ship_values_.end(), 0.0);
}

int BattleshipGame::MaxGameLength() const {
  return 2 * static_cast<int>(ship_sizes_.size()) + 2 * num_shots_;
}

std::vector<BattleshipGame::Placement> BattleshipGame::PlacementsForSize(
    int size) const {
  std::vector<Placement> placements;
  for (int r = 0; r < height_; ++r) {
    for (int c = 0; c + size <= width_; ++c) {
      placements.push_back({0, r, c});
    }
  }
  // A size-1 ship has no distinct vertical orientation.
  if (size > 1) {
    for (int r = 0; r + size <= height_; ++r) {
      for (int c = 0; c < width_; ++c) {
        placements.push_back({1, r, c});
      }
    }
  }
  return placements;
}

std::vector<int> BattleshipGame::PlacementCells(const Placement& p,
                                                int size) const {
  std::vector<int> cells;
  cells.reserve(size);
  for (int k = 0; k < size; ++k) {
    const int r = p.row + (p.orientation == 1 ? k : 0);
    const int c = p.col + (p.orientation == 0 ? k : 0);
    cells.push_back(r * width_ + c);
  }
  return cells;
}

BattleshipState::BattleshipState(const BattleshipGame* game) : game_(game) {}

bool BattleshipState::InPlacementPhase() const {
  return placements_.size() < 2 * game_->ship_sizes().size();
}

int BattleshipState::TurnPlayer() const {
  if (InPlacementPhase()) return static_cast<int>(placements_.size()) % 2;
  return static_cast<int>(shots_[0].size() + shots_[1].size()) % 2;
}

int BattleshipState::CurrentPlayer() const {
  if (!InPlacementPhase() &&
      static_cast<int>(shots_[0].size() + shots_[1].size()) >=
          2 * game_->num_shots()) {
    return kTerminalPlayerId;
  }
  return TurnPlayer();
}

std::vector<int> BattleshipState::LegalPlacementIndices(int player) const {
  const int ship = static_cast<int>(placements_.size()) / 2;
  const int size = game_->ship_sizes()[ship];
  const auto candidates = game_->PlacementsForSize(size);
  std::vector<int> legal;
  for (int i = 0; i < static_cast<int>(candidates.size()); ++i) {
    bool overlaps = false;
    for (int cell : game_->PlacementCells(candidates[i], size)) {
      if (CellOnOwnShip(player, cell)) overlaps = true;
    }
    if (!overlaps) legal.push_back(i);
  }
  return legal;
}

std::vector<int> BattleshipState::LegalShotCells(int player) const {
  std::vector<int> cells;
  const int total = game_->width() * game_->height();
  for (int cell = 0; cell < total; ++cell) {
    if (!game_->allow_repeated_shots()) {
      const auto& fired = shots_[player];
      if (std::find(fired.begin(), fired.end(), cell) != fired.end()) continue;
    }
    cells.push_back(cell);
  }
  return cells;
}

bool BattleshipState::CellOnOwnShip(int player, int cell) const {
  for (const auto& ship : ship_cells_[player]) {
    if (std::find(ship.begin(), ship.end(), cell) != ship.end()) return true;
  }
  return false;
}

int BattleshipState::NumActions() const {
  if (IsTerminal()) {
    throw UsageError("NumActions called on a terminal state");
  }
  const int player = TurnPlayer();
  if (InPlacementPhase()) {
    return static_cast<int>(LegalPlacementIndices(player).size());
  }
  return static_cast<int>(LegalShotCells(player).size());
}

std::unique_ptr<State> BattleshipState::Clone() const {
  return std::make_unique<BattleshipState>(*this);
}

void BattleshipState::DoApplyAction(Action action) {
  const int player = InPlacementPhase()
                         ? static_cast<int>(placements_.size()) % 2
                         : (static_cast<int>(shots_[0].size() +
                                             shots_[1].size())) %
                               2;
  if (InPlacementPhase()) {
    const int ship = static_cast<int>(placements_.size()) / 2;
    const int size = game_->ship_sizes()[ship];
    const int index = LegalPlacementIndices(player)[action];
    placements_.push_back(index);
    ship_cells_[player].push_back(
        game_->PlacementCells(game_->PlacementsForSize(size)[index], size));
  } else {
    shots_[player].push_back(LegalShotCells(player)[action]);
  }
}

std::vector<double> BattleshipState::DoReturns() const {
  double damage[2] = {0.0, 0.0};
  for (int shooter = 0; shooter < 2; ++shooter) {
    const int target = 1 - shooter;
    const auto& fired = shots_[shooter];
    for (size_t s = 0; s < ship_cells_[target].size(); ++s) {
      const auto& cells = ship_cells_[target][s];
      const bool sunk =
          std::all_of(cells.begin(), cells.end(), [&](int cell) {
            return std::find(fired.begin(), fired.end(), cell) != fired.end();
          });
      if (sunk) damage[shooter] += game_->ship_values()[s];
    }
  }
  const double u0 = damage[0] - damage[1];
  return {u0, -u0};
}

std::string BattleshipState::DoInformationState() const {
  // Chronological private view: own placements, own shots with hit/miss,
  // opponent shot locations.
  const int player = CurrentPlayer();
  const int opp = 1 - player;
  std::string key;
  for (size_t s = 0; s < ship_cells_[player].size(); ++s) {
    const auto p = game_->PlacementsForSize(
        game_->ship_sizes()[s])[placements_[2 * s + player]];
    key += (p.orientation == 0 ? "h" : "v") + std::to_string(p.row) +
           std::to_string(p.col) + "/";
  }
  const size_t plies = shots_[0].size() + shots_[1].size();
  for (size_t i = 0; i < plies; ++i) {
    const int shooter = static_cast<int>(i) % 2;
    const int cell = shots_[shooter][i / 2];
    if (shooter == player) {
      key += "s" + std::to_string(cell);
      key += CellOnOwnShip(opp, cell) ? "H" : "M";
    } else {
      key += "o" + std::to_string(cell);
    }
    key.push_back('/');
  }
  if (key.empty()) key = "-";
  return key;
}

std::vector<std::pair<Action, double>> BattleshipState::DoChanceOutcomes()
    const {
  FatalError("battleship has no chance nodes");
}

std::string BattleshipState::ActionToString(Action action) const {
  const int player = TurnPlayer();
  if (InPlacementPhase()) {
    const int ship = static_cast<int>(placements_.size()) / 2;
    const auto p = game_->PlacementsForSize(
        game_->ship_sizes()[ship])[LegalPlacementIndices(player)[action]];
    return std::string("place:") + (p.orientation == 0 ? "h" : "v") + "(" +
           std::to_string(p.row) + "," + std::to_string(p.col) + ")";
  }
  const int cell = LegalShotCells(player)[action];
  return "shoot:(" + std::to_string(cell / game_->width()) + "," +
         std::to_string(cell % game_->width()) + ")";
}

std::string BattleshipState::ToString() const {
  std::string s = "placements:";
  for (int p : placements_) s += std::to_string(p);
  s += " shots0:";
  for (int c : shots_[0]) s += std::to_string(c);
  s += " shots1:";
  for (int c : shots_[1]) s += std::to_string(c);
  return s;
}

}  // namespace escher

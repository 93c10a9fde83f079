#include "escher/game.h"

#include <cstdlib>
#include <numeric>

#include "escher/games/battleship.h"
#include "escher/games/kuhn_poker.h"
#include "escher/games/leduc_poker.h"
#include "escher/games/liars_dice.h"

namespace escher {

std::vector<Action> State::LegalActions() const {
  if (IsTerminal()) {
    throw UsageError("LegalActions called on a terminal state");
  }
  std::vector<Action> actions(NumActions());
  std::iota(actions.begin(), actions.end(), 0);
  return actions;
}

std::vector<std::pair<Action, double>> State::ChanceOutcomes() const {
  if (!IsChanceNode()) {
    throw UsageError("ChanceOutcomes called on a non-chance state");
  }
  return DoChanceOutcomes();
}

void State::ApplyAction(Action action) {
  if (IsTerminal()) {
    throw UsageError("ApplyAction called on a terminal state");
  }
  if (action < 0 || action >= NumActions()) {
    throw UsageError("ApplyAction called with out-of-range action id " +
                     std::to_string(action));
  }
  history_.push_back(action);
  DoApplyAction(action);
}

std::unique_ptr<State> State::Child(Action action) const {
  std::unique_ptr<State> child = Clone();
  child->ApplyAction(action);
  return child;
}

std::vector<double> State::Returns() const {
  if (!IsTerminal()) {
    throw UsageError("Returns called on a non-terminal state");
  }
  return DoReturns();
}

std::string State::InformationStateString() const {
  const int player = CurrentPlayer();
  if (player != 0 && player != 1) {
    throw UsageError("InformationStateString called on a state without an "
                     "acting player");
  }
  return DoInformationState();
}

std::shared_ptr<const Game> LoadGame(const std::string& name,
                                     const GameParameters& params) {
  if (name == "kuhn_poker") {
    return std::make_shared<KuhnGame>();
  } else if (name == "leduc_poker") {
    return std::make_shared<LeducGame>();
  } else if (name == "liars_dice") {
    return std::make_shared<LiarsDiceGame>(params);
  } else if (name == "battleship") {
    return std::make_shared<BattleshipGame>(params);
  }
  throw ConfigError("unknown game name: " + name);
}

namespace {

const std::string* FindParam(const GameParameters& params,
                             const std::string& key) {
  auto it = params.find(key);
  return it == params.end() ? nullptr : &it->second;
}

}  // namespace

int ParamInt(const GameParameters& params, const std::string& key,
             int default_value) {
  const std::string* raw = FindParam(params, key);
  if (raw == nullptr) return default_value;
  char* end = nullptr;
  const long value = std::strtol(raw->c_str(), &end, 10);
  if (end == raw->c_str() || *end != '\0') {
    throw ConfigError("game parameter '" + key + "': expected integer, got '" +
                      *raw + "'");
  }
  return static_cast<int>(value);
}

bool ParamBool(const GameParameters& params, const std::string& key,
               bool default_value) {
  const std::string* raw = FindParam(params, key);
  if (raw == nullptr) return default_value;
  if (*raw == "true" || *raw == "True" || *raw == "1") return true;
  if (*raw == "false" || *raw == "False" || *raw == "0") return false;
  throw ConfigError("game parameter '" + key + "': expected boolean, got '" +
                    *raw + "'");
}

std::vector<int> ParamIntList(const GameParameters& params,
                              const std::string& key,
                              const std::vector<int>& default_value) {
  const std::string* raw = FindParam(params, key);
  if (raw == nullptr) return default_value;
  const std::string& s = *raw;
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ConfigError("game parameter '" + key +
                      "': expected list like [2], got '" + s + "'");
  }
  std::vector<int> values;
  size_t pos = 1;
  while (pos < s.size() - 1) {
    char* end = nullptr;
    const long value = std::strtol(s.c_str() + pos, &end, 10);
    if (end == s.c_str() + pos) {
      throw ConfigError("game parameter '" + key + "': malformed list '" + s +
                        "'");
    }
    values.push_back(static_cast<int>(value));
    pos = end - s.c_str();
    if (pos < s.size() - 1) {
      if (s[pos] != ',') {
        throw ConfigError("game parameter '" + key + "': malformed list '" +
                          s + "'");
      }
      ++pos;
    }
  }
  return values;
}

}  // namespace escher

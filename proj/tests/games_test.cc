#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "doctest.h"
#include "escher/game.h"
#include "escher/game_tree.h"
#include "escher/rng.h"
#include "test_oracles.h"

namespace escher {
namespace {

std::unique_ptr<State> Play(const Game& game, const std::vector<Action>& line) {
  std::unique_ptr<State> state = game.NewInitialState();
  for (Action action : line) state->ApplyAction(action);
  return state;
}

// Kuhn deal outcome ids follow the ordered pairs
// (J,Q) (J,K) (Q,J) (Q,K) (K,J) (K,Q).
TEST_CASE("kuhn terminal payoffs match hand-worked lines") {
  auto game = LoadGame("kuhn_poker");
  SUBCASE("check-check goes to showdown for the ante") {
    auto state = Play(*game, {5, 0, 0});
    REQUIRE(state->IsTerminal());
    CHECK(state->Returns() == std::vector<double>{1.0, -1.0});
  }
  SUBCASE("bet then fold pays the bettor one") {
    auto state = Play(*game, {1, 1, 0});
    REQUIRE(state->IsTerminal());
    CHECK(state->Returns() == std::vector<double>{1.0, -1.0});
  }
  SUBCASE("check, bet, fold pays the bettor one") {
    auto state = Play(*game, {3, 0, 1, 0});
    REQUIRE(state->IsTerminal());
    CHECK(state->Returns() == std::vector<double>{-1.0, 1.0});
  }
  SUBCASE("bet then call goes to showdown for two") {
    auto state = Play(*game, {1, 1, 1});
    REQUIRE(state->IsTerminal());
    CHECK(state->Returns() == std::vector<double>{-2.0, 2.0});
  }
  SUBCASE("check, bet, call goes to showdown for two") {
    auto state = Play(*game, {4, 0, 1, 1});
    REQUIRE(state->IsTerminal());
    CHECK(state->Returns() == std::vector<double>{2.0, -2.0});
  }
}

const char* kAllGames[] = {"kuhn_poker", "leduc_poker", "liars_dice",
                           "battleship"};

TEST_CASE("every reachable state satisfies the game contract") {
  for (const char* name : kAllGames) {
    CAPTURE(name);
    auto game = LoadGame(name);
    const double max_utility = game->MaxUtility();
    const int max_length = game->MaxGameLength();
    testing::ForEachState(*game, [&](const State& state) {
      CHECK(static_cast<int>(state.History().size()) <= max_length);
      if (state.IsTerminal()) {
        const std::vector<double> returns = state.Returns();
        REQUIRE(returns.size() == 2);
        CHECK(returns[0] == -returns[1]);
        CHECK(std::abs(returns[0]) <= max_utility);
        return;
      }
      REQUIRE(state.NumActions() >= 1);
      if (state.IsChanceNode()) {
        double total = 0.0;
        for (const auto& [action, prob] : state.ChanceOutcomes()) {
          CHECK(prob > 0.0);
          total += prob;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
      } else {
        CHECK(!state.InformationStateString().empty());
      }
    });
  }
}

TEST_CASE("tree shapes are frozen") {
  struct Expected {
    const char* name;
    int nodes;
    int terminals;
    int infosets;
    int infosets_p0;
    int infosets_p1;
  };
  const Expected expected[] = {
      {"kuhn_poker", 55, 30, 12, 6, 6},
      {"leduc_poker", 9451, 5520, 936, 468, 468},
      {"liars_dice", 294883, 147420, 24576, 12288, 12288},
      {"battleship", 17237, 9216, 6294, 2053, 4241},
  };
  for (const Expected& e : expected) {
    CAPTURE(e.name);
    auto tree = GameTree::Build(LoadGame(e.name));
    CHECK(tree->num_nodes() == e.nodes);
    CHECK(tree->num_terminals() == e.terminals);
    CHECK(tree->num_infosets() == e.infosets);
    CHECK(static_cast<int>(tree->InfosetsOfPlayer(0).size()) == e.infosets_p0);
    CHECK(static_cast<int>(tree->InfosetsOfPlayer(1).size()) == e.infosets_p1);
  }
}

TEST_CASE("payoff and length bounds are frozen") {
  CHECK(LoadGame("kuhn_poker")->MaxUtility() == 2.0);
  CHECK(LoadGame("leduc_poker")->MaxUtility() == 13.0);
  CHECK(LoadGame("liars_dice")->MaxUtility() == 1.0);
  CHECK(LoadGame("battleship")->MaxUtility() == 2.0);
  CHECK(LoadGame("kuhn_poker")->MaxGameLength() == 4);
  CHECK(LoadGame("battleship")->MaxGameLength() == 8);
}

TEST_CASE("the flattened tree mirrors the state API") {
  for (const char* name : kAllGames) {
    CAPTURE(name);
    auto game = LoadGame(name);
    auto tree = GameTree::Build(game);
    int visited = 0;
    std::function<void(int, const State&)> walk = [&](int id,
                                                      const State& state) {
      ++visited;
      const GameTree::Node& node = tree->node(id);
      REQUIRE(node.player == state.CurrentPlayer());
      if (state.IsTerminal()) {
        CHECK(tree->Utility(id, 0) == state.Returns()[0]);
        CHECK(tree->Utility(id, 1) == state.Returns()[1]);
        return;
      }
      REQUIRE(node.num_actions == state.NumActions());
      if (state.IsChanceNode()) {
        for (const auto& [action, prob] : state.ChanceOutcomes()) {
          CHECK(tree->ChanceProb(id, action) == prob);
        }
      } else {
        const GameTree::Infoset& infoset = tree->infoset(node.infoset);
        CHECK(infoset.player == state.CurrentPlayer());
        CHECK(infoset.key == state.InformationStateString());
        CHECK(infoset.num_actions == state.NumActions());
      }
      for (Action action : state.LegalActions()) {
        walk(tree->Child(id, action), *state.Child(action));
      }
    };
    walk(tree->root(), *game->NewInitialState());
    CHECK(visited == tree->num_nodes());
  }
}

TEST_CASE("all members of an infoset share the player's action sequence") {
  for (const char* name : kAllGames) {
    CAPTURE(name);
    auto tree = GameTree::Build(LoadGame(name));
    // Own (infoset, action) pairs from the root down to `id`, exclusive.
    auto own_sequence = [&](int id, int player) {
      std::vector<std::pair<int, int>> sequence;
      int at = id;
      while (tree->node(at).parent >= 0) {
        const int parent = tree->node(at).parent;
        if (tree->node(parent).player == player) {
          sequence.emplace_back(tree->node(parent).infoset,
                                tree->node(at).parent_action);
        }
        at = parent;
      }
      std::reverse(sequence.begin(), sequence.end());
      return sequence;
    };
    for (int i = 0; i < tree->num_infosets(); ++i) {
      const GameTree::Infoset& infoset = tree->infoset(i);
      REQUIRE(!infoset.members.empty());
      const auto reference = own_sequence(infoset.members[0], infoset.player);
      for (int member : infoset.members) {
        CHECK(own_sequence(member, infoset.player) == reference);
      }
    }
  }
}

TEST_CASE("rebuilding a tree is deterministic") {
  auto game = LoadGame("leduc_poker");
  auto a = GameTree::Build(game);
  auto b = GameTree::Build(game);
  REQUIRE(a->num_nodes() == b->num_nodes());
  REQUIRE(a->num_infosets() == b->num_infosets());
  for (int id = 0; id < a->num_nodes(); ++id) {
    const GameTree::Node& na = a->node(id);
    const GameTree::Node& nb = b->node(id);
    REQUIRE(na.player == nb.player);
    REQUIRE(na.infoset == nb.infoset);
    REQUIRE(na.parent == nb.parent);
    REQUIRE(na.parent_action == nb.parent_action);
    REQUIRE(na.num_actions == nb.num_actions);
    REQUIRE(na.utility0 == nb.utility0);
  }
  for (int i = 0; i < a->num_infosets(); ++i) {
    REQUIRE(a->infoset(i).key == b->infoset(i).key);
    REQUIRE(a->infoset(i).members == b->infoset(i).members);
  }
}

TEST_CASE("random playouts terminate inside the declared length bound") {
  Rng rng(7);
  for (const char* name : kAllGames) {
    CAPTURE(name);
    auto game = LoadGame(name);
    for (int round = 0; round < 200; ++round) {
      std::unique_ptr<State> state = game->NewInitialState();
      while (!state->IsTerminal()) {
        REQUIRE(static_cast<int>(state->History().size()) <
                game->MaxGameLength());
        state->ApplyAction(rng.UniformInt(state->NumActions()));
      }
      CHECK(static_cast<int>(state->History().size()) <=
            game->MaxGameLength());
    }
  }
}

TEST_CASE("game loading validates names and parameters") {
  CHECK_THROWS_AS(LoadGame("chess"), ConfigError);
  CHECK_THROWS_AS(LoadGame("battleship", {{"board_width", "zero"}}),
                  ConfigError);
  auto game = LoadGame("battleship", {{"board_width", "3"},
                                      {"ship_sizes", "[2]"},
                                      {"num_shots", "2"}});
  CHECK(game->Parameters().at("board_width") == "3");
  CHECK(game->Parameters().at("num_shots") == "2");
}

}  // namespace
}  // namespace escher

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <vector>

#include "doctest.h"
#include "escher/game.h"
#include "escher/game_tree.h"
#include "escher/policy.h"
#include "escher/rng.h"
#include "test_oracles.h"

namespace escher {
namespace {

TEST_CASE("regret matching normalizes clipped positive regrets") {
  CHECK(RegretMatching({3.0, 1.0}) == std::vector<double>{0.75, 0.25});
  CHECK(RegretMatching({-1.0, 2.0, 2.0}) ==
        std::vector<double>{0.0, 0.5, 0.5});
  SUBCASE("all non-positive regrets fall back to uniform") {
    CHECK(RegretMatching({0.0, 0.0}) == std::vector<double>{0.5, 0.5});
    CHECK(RegretMatching({-3.0, -1.0, -2.0, -5.0}) ==
          std::vector<double>{0.25, 0.25, 0.25, 0.25});
  }
  SUBCASE("scaling regrets by a power of two leaves the policy unchanged") {
    Rng rng(11);
    for (int round = 0; round < 50; ++round) {
      std::vector<double> regrets(3);
      for (double& r : regrets) r = rng.UniformDouble() * 4.0 - 2.0;
      std::vector<double> scaled = regrets;
      for (double& r : scaled) r *= 8.0;
      CHECK(RegretMatching(regrets) == RegretMatching(scaled));
    }
  }
  SUBCASE("output is a distribution") {
    Rng rng(12);
    for (int round = 0; round < 100; ++round) {
      std::vector<double> regrets(1 + rng.UniformInt(5));
      for (double& r : regrets) r = rng.UniformDouble() * 2.0 - 1.0;
      const std::vector<double> probs = RegretMatching(regrets);
      double total = 0.0;
      for (double p : probs) {
        CHECK(p >= 0.0);
        total += p;
      }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("uniform helpers cover every infoset") {
  auto tree = GameTree::Build(LoadGame("kuhn_poker"));
  CHECK(UniformProbs(4) ==
        std::vector<double>{0.25, 0.25, 0.25, 0.25});
  const PolicyTable table = UniformPolicyTable(*tree);
  REQUIRE(static_cast<int>(table.size()) == tree->num_infosets());
  for (int i = 0; i < tree->num_infosets(); ++i) {
    CHECK(table[i] == UniformProbs(tree->infoset(i).num_actions));
  }
}

TEST_CASE("tabular policies validate writes and default reads to uniform") {
  TabularPolicy policy;
  const InfoKey key{0, "J"};
  CHECK(!policy.Has(key));
  CHECK(policy.GetProbs(key, 2) == std::vector<double>{0.5, 0.5});
  policy.SetProbs(key, {0.25, 0.75});
  CHECK(policy.Has(key));
  CHECK(policy.GetProbs(key, 2) == std::vector<double>{0.25, 0.75});
  CHECK(!policy.Has(InfoKey{1, "J"}));
  CHECK_THROWS_AS(policy.SetProbs(key, {0.5, 0.2}), UsageError);
  CHECK_THROWS_AS(policy.SetProbs(key, {-0.1, 1.1}), UsageError);
}

TEST_CASE("table and key forms of a policy convert back and forth") {
  auto tree = GameTree::Build(LoadGame("kuhn_poker"));
  Rng rng(3);
  const TabularPolicy original =
      testing::RandomPolicyProfile(tree->game(), &rng);
  const PolicyTable table = FromTabularPolicy(*tree, original);
  const TabularPolicy round_trip = ToTabularPolicy(*tree, table);
  for (int i = 0; i < tree->num_infosets(); ++i) {
    const GameTree::Infoset& infoset = tree->infoset(i);
    const InfoKey key{infoset.player, infoset.key};
    CHECK(round_trip.GetProbs(key, infoset.num_actions) ==
          original.GetProbs(key, infoset.num_actions));
  }
}

TEST_CASE("policy serialization is stable and complete") {
  auto tree = GameTree::Build(LoadGame("kuhn_poker"));
  TabularPolicy policy = ToTabularPolicy(*tree, UniformPolicyTable(*tree));
  const std::string serialized = SerializePolicy(*tree, policy);
  CHECK(SerializePolicy(*tree, policy) == serialized);
  int lines = 0;
  for (char c : serialized) {
    if (c == '\n') ++lines;
  }
  int edges = 0;
  for (int i = 0; i < tree->num_infosets(); ++i) {
    edges += tree->infoset(i).num_actions;
  }
  CHECK(lines == edges);
  CHECK(serialized.find("J\tpass\t0.5") != std::string::npos);
}

TEST_CASE("the accumulator tracks regrets, averages and iterations") {
  auto tree = GameTree::Build(LoadGame("kuhn_poker"));
  RegretAccumulator acc(tree);
  CHECK(acc.iteration() == 0);
  const int infoset = tree->InfosetId(0, "J");
  REQUIRE(infoset >= 0);

  SUBCASE("fresh infosets act uniformly") {
    CHECK(acc.CurrentPolicy(infoset) == std::vector<double>{0.5, 0.5});
    CHECK(acc.ExtractAveragePolicy()[infoset] ==
          std::vector<double>{0.5, 0.5});
  }

  SUBCASE("regrets add up and drive the current policy") {
    acc.AccumulateRegret(infoset, {1.0, 0.0});
    acc.AccumulateRegret(infoset, {2.0, 1.0});
    CHECK(acc.Regrets(infoset) == std::vector<double>{3.0, 1.0});
    CHECK(acc.CurrentPolicy(infoset) == std::vector<double>{0.75, 0.25});
    CHECK(acc.CurrentPolicyTable()[infoset] ==
          std::vector<double>{0.75, 0.25});
  }

  SUBCASE("the key overload resolves infoset ids") {
    acc.AccumulateRegret(InfoKey{0, "J"}, {1.0, 3.0});
    CHECK(acc.Regrets(infoset) == std::vector<double>{1.0, 3.0});
    CHECK_THROWS_AS(acc.AccumulateRegret(InfoKey{0, "missing"}, {1.0, 0.0}),
                    UsageError);
  }

  SUBCASE("average weights normalize and ignore other infosets") {
    acc.UpdateAverage(infoset, {1.0, 0.0}, 1.0);
    acc.UpdateAverage(infoset, {0.0, 1.0}, 3.0);
    CHECK(acc.AverageWeights(infoset) == std::vector<double>{1.0, 3.0});
    const PolicyTable average = acc.ExtractAveragePolicy();
    CHECK(average[infoset] == std::vector<double>{0.25, 0.75});
    const int other = tree->InfosetId(1, "Jb");
    REQUIRE(other >= 0);
    CHECK(average[other] == std::vector<double>{0.5, 0.5});
  }

  SUBCASE("iterations only advance on request") {
    acc.AdvanceIteration();
    acc.AdvanceIteration();
    CHECK(acc.iteration() == 2);
  }
}

TEST_CASE("regret increments must match the infoset's action count") {
  auto tree = GameTree::Build(LoadGame("kuhn_poker"));
  RegretAccumulator acc(tree);
  CHECK_THROWS_AS(acc.AccumulateRegret(0, {1.0, 2.0, 3.0}), InternalError);
}

}  // namespace
}  // namespace escher

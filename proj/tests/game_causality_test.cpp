// Copyright 2026 The causekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include "causekit/game_causality.hpp"
#include "causekit/generate.hpp"
#include "causekit/io.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

namespace causekit {
namespace {

using testing::make_game;
using testing::make_strategy;
using testing::set_of;

class Fixture {
 public:
  explicit Fixture(const std::string& name)
      : game(game_from_json(read_json_file(testing::fixture_path(name + ".json")))) {}
  MDStrategy strategy(const std::string& suffix) const {
    return strategy_from_json(game, read_json_file(testing::fixture_path(suffix + ".json")));
  }
  IndexSet set(std::initializer_list<const char*> ids) const {
    IndexSet out(game.num_vertices());
    for (auto id : ids) out.insert(game.index_of(id));
    return out;
  }
  ReachabilityGame game;
};

// Safe picks v1 or v2; Reach at each may enter an effect vertex or a Safe
// sink. Acyclic apart from the sink loop.
ReachabilityGame two_choice_game() {
  return make_game("srrees", {{0, 1}, {0, 2}, {1, 3}, {1, 5}, {2, 4}, {2, 5}, {5, 5}});
}

TEST(Solve, TreeGameReachWins) {
  Fixture f("fig2_left");
  auto a = solve(f.game);
  EXPECT_TRUE(a.reach_region.contains(f.game.initial()));
  EXPECT_TRUE(is_winning(f.game, a.reach_strategy));
  EXPECT_FALSE(is_winning(f.game, f.strategy("fig2_left_sigma")));
}

TEST(Solve, ReachOwnedInitialNextToEffect) {
  auto g = make_game("rse", {{0, 1}, {0, 2}, {1, 1}});
  auto a = solve(g);
  EXPECT_TRUE(a.reach_region.contains(0));
  EXPECT_EQ(a.reach_strategy(0), 2u);
}

TEST(Solve, NoPathToEffectMeansSafeWinsEverywhere) {
  auto g = make_game("rse", {{0, 1}, {1, 0}});
  auto a = solve(g);
  EXPECT_TRUE(a.safe_region.contains(0));
  EXPECT_TRUE(a.safe_region.contains(1));
  EXPECT_FALSE(a.safe_region.contains(2));
}

TEST(Solve, RegionsPartitionAndStrategiesWinOnRandomGames) {
  Rng rng(51);
  for (int k = 0; k < 300; ++k) {
    auto g = generate_game(GeneratorSpec{k % 2 ? Family::CyclicGame : Family::AcyclicGame, 7, 1, 2, 0}, rng);
    auto a = solve(g);
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      ASSERT_NE(a.reach_region.contains(v), a.safe_region.contains(v));
    bool reach_wins = a.reach_region.contains(g.initial());
    ASSERT_EQ(is_winning(g, a.strategy(reach_wins ? Player::Reach : Player::Safe)), true);
    ASSERT_EQ(testing::wins_oracle(g, a.strategy(reach_wins ? Player::Reach : Player::Safe)), true);
    bool any = false;
    for (const auto& s : testing::all_strategies(g, Player::Reach)) any = any || testing::wins_oracle(g, s);
    ASSERT_EQ(any, reach_wins);
  }
}

TEST(AvoidRegion, EmptyCauseKeepsEverything) {
  Fixture f("fig2_left");
  auto r = avoid_region(f.game, Player::Reach, IndexSet(f.game.num_vertices()));
  EXPECT_EQ(r.region, IndexSet::full(f.game.num_vertices()));
}

TEST(AvoidRegion, TreeGame) {
  Fixture f("fig2_left");
  auto r = avoid_region(f.game, Player::Reach, f.set({"v2", "v3"}));
  EXPECT_TRUE(r.region.contains(f.game.initial()));
  auto v1 = f.game.index_of("v1");
  ASSERT_EQ(r.preserving[v1].size(), 1u);
  EXPECT_EQ(r.preserving[v1][0], f.game.index_of("box1"));
}

TEST(AvoidRegion, VertexWithOnlyCauseSuccessorsIsExcluded) {
  auto g = make_game("rrse", {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  auto r = avoid_region(g, Player::Reach, set_of(4, {2}));
  EXPECT_FALSE(r.region.contains(1));
  EXPECT_FALSE(r.region.contains(0));
}

TEST(GameCause, TreeGameVerdicts) {
  Fixture f("fig2_left");
  auto sigma = f.strategy("fig2_left_sigma");
  auto run = [&](IndexSet c, GameMetric m) { return check_cause_game({f.game, sigma, std::move(c), m}); };
  EXPECT_TRUE(run(f.set({"v2", "v3"}), GameMetric::PrefH).is_cause);
  EXPECT_TRUE(run(f.set({"v2", "v3"}), GameMetric::DStar).is_cause);
  EXPECT_TRUE(run(f.set({"v3"}), GameMetric::HammS).is_cause);
  auto pref = run(f.set({"v3"}), GameMetric::PrefH);
  EXPECT_FALSE(pref.is_cause);
  EXPECT_TRUE(pref.losing_play_through_cause);
  EXPECT_TRUE(pref.avoidable);
  EXPECT_FALSE(pref.closest_win);
}

TEST(GameCause, UnavoidableCause) {
  auto g = two_choice_game();
  auto sigma = make_strategy(g, Player::Reach, {{1, 5}, {2, 5}});
  for (auto m : {GameMetric::PrefH, GameMetric::HammS, GameMetric::DStar}) {
    auto v = check_cause_game({g, sigma, set_of(6, {0}), m});
    EXPECT_FALSE(v.is_cause);
    EXPECT_FALSE(v.avoidable);
    EXPECT_TRUE(v.min_distance.is_infinite());
  }
}

TEST(GameCause, AvoidingStrategyFailsFirstCondition) {
  auto g = two_choice_game();
  auto sigma = make_strategy(g, Player::Reach, {{1, 3}, {2, 5}});
  auto v = check_cause_game({g, sigma, set_of(6, {2}), GameMetric::PrefH});
  EXPECT_TRUE(v.losing_play_through_cause);
  auto avoids_sink = check_cause_game({g, sigma, set_of(6, {1}), GameMetric::PrefH});
  EXPECT_FALSE(avoids_sink.losing_play_through_cause);
  EXPECT_FALSE(avoids_sink.is_cause);
}

TEST(GameCause, PreconditionsAndAcyclicity) {
  Fixture f("fig2_middle");
  auto sigma = f.strategy("fig2_middle_sigma");
  EXPECT_THROW(check_cause_game({f.game, sigma, f.set({"eff"}), GameMetric::PrefH}), PreconditionViolated);
  EXPECT_THROW(check_cause_game({f.game, sigma, f.set({"v1"}), GameMetric::HammS}), NotAcyclic);
}

TEST(GameCause, BudgetExceeded) {
  Fixture f("fig2_left");
  GameCauseQuery q{f.game, f.strategy("fig2_left_sigma"), f.set({"v2", "v3"}), GameMetric::DStar, 1};
  EXPECT_THROW(check_cause_game(q), BudgetExceeded);
}

TEST(GameCause, MatchesBruteForceAndOracleOnRandomGames) {
  Rng rng(53);
  std::size_t causes = 0;
  for (int k = 0; k < 300; ++k) {
    bool cyclic = k % 3 == 0;
    auto g = generate_game(GeneratorSpec{cyclic ? Family::CyclicGame : Family::AcyclicGame, 6, 1, 2, 0}, rng);
    auto player = k % 4 == 0 ? Player::Safe : Player::Reach;
    auto sigma = random_strategy(g, player, rng);
    IndexSet cause(g.num_vertices());
    for (std::size_t v = 0; v < g.num_vertices(); ++v)
      if (!g.is_effect(v) && rng.chance(1, 3)) cause.insert(v);
    auto oracle = testing::game_cause_oracle(g, sigma, cause);
    auto pref = check_cause_game({g, sigma, cause, GameMetric::PrefH});
    ASSERT_EQ(pref.is_cause, oracle.is_cause) << "instance " << k;
    ASSERT_EQ(pref.min_distance, oracle.min_distance) << "instance " << k;
    causes += pref.is_cause;
    for (auto m : {GameMetric::HammS, GameMetric::DStar}) {
      if (m == GameMetric::HammS && !is_acyclic_modulo_sinks(g)) continue;
      GameCauseQuery q{g, sigma, cause, m};
      auto fast = check_cause_game(q);
      auto slow = brute_force_check_cause(q);
      ASSERT_EQ(fast.is_cause, slow.is_cause) << to_string(m) << " instance " << k;
      ASSERT_EQ(fast.min_distance, slow.min_distance) << to_string(m) << " instance " << k;
      ASSERT_EQ(fast.avoidable, oracle.avoidable);
      ASSERT_EQ(fast.losing_play_through_cause, oracle.losing_play_through_cause);
      if (fast.witness) {
        ASSERT_FALSE(testing::visits_oracle(g, *fast.witness, cause));
      }
    }
  }
  EXPECT_GT(causes, 0u);
}

TEST(Explanation, WinningStrategyNeedsNoRepair) {
  auto g = two_choice_game();
  auto sigma = make_strategy(g, Player::Reach, {{1, 3}, {2, 4}});
  auto e = extract_explanation(g, sigma, IndexSet(6));
  EXPECT_TRUE(e.vertices.empty());
  ASSERT_TRUE(e.witness.has_value());
  EXPECT_EQ(*e.witness, sigma);
}

TEST(Explanation, ExtractRepairsLosingChoices) {
  auto g = two_choice_game();
  auto sigma = make_strategy(g, Player::Reach, {{1, 5}, {2, 5}});
  auto e = extract_explanation(g, sigma, set_of(6, {5}));
  EXPECT_EQ(e.vertices, set_of(6, {1, 2}));
  ASSERT_TRUE(e.witness.has_value());
  EXPECT_TRUE(testing::wins_oracle(g, *e.witness));
}

TEST(Explanation, DisconnectedEffectHasNoWinningStrategy) {
  auto g = two_choice_game();
  auto sigma = make_strategy(g, Player::Reach, {{1, 5}, {2, 5}});
  EXPECT_THROW(extract_explanation(g, sigma, set_of(6, {1, 2})), NoWinningStrategy);
}

TEST(Explanation, LoopGame) {
  Fixture f("fig2_middle");
  auto sigma = f.strategy("fig2_middle_sigma");
  auto both = is_explanation(f.game, sigma, f.set({"v1", "v2"}));
  ASSERT_TRUE(both.witness.has_value());
  EXPECT_TRUE(testing::wins_oracle(f.game, *both.witness));
  auto one = is_explanation(f.game, sigma, f.set({"v1"}));
  ASSERT_TRUE(one.witness.has_value());
  EXPECT_EQ((*one.witness)(f.game.index_of("v1")), f.game.index_of("eff"));
  EXPECT_FALSE(is_explanation(f.game, sigma, IndexSet(f.game.num_vertices())).witness.has_value());
}

TEST(Explanation, NoAlternativeIsAnEmptyChoice) {
  auto g = make_game("rre", {{0, 1}, {1, 2}, {1, 1}});
  auto sigma = make_strategy(g, Player::Reach, {{1, 1}});
  EXPECT_THROW(is_explanation(g, sigma, set_of(3, {0})), EmptyChoice);
}

TEST(Explanation, MatchesOracleOnRandomGames) {
  Rng rng(55);
  std::size_t positives = 0;
  for (int k = 0; k < 300; ++k) {
    auto g = generate_game(GeneratorSpec{k % 2 ? Family::CyclicGame : Family::AcyclicGame, 6, 1, 2, 0}, rng);
    auto sigma = random_strategy(g, k % 3 == 0 ? Player::Safe : Player::Reach, rng);
    IndexSet e(g.num_vertices());
    for (auto v : g.owned_vertices(sigma.player()))
      if (g.successors(v).size() > 1 && rng.chance(1, 2)) e.insert(v);
    auto got = is_explanation(g, sigma, e);
    ASSERT_EQ(got.witness.has_value(), testing::explanation_oracle(g, sigma, e)) << "instance " << k;
    if (got.witness) {
      ++positives;
      ASSERT_TRUE(testing::wins_oracle(g, *got.witness));
      for (auto v : g.owned_vertices(sigma.player()))
        ASSERT_EQ((*got.witness)(v) != sigma(v), e.contains(v));
    }
  }
  EXPECT_GT(positives, 0u);
}

TEST(MinWinning, LoopGame) {
  Fixture f("fig2_middle");
  auto sigma = f.strategy("fig2_middle_sigma");
  for (auto m : {GameMetric::HammS, GameMetric::DStar}) {
    auto best = min_winning_distance(f.game, sigma, m);
    EXPECT_EQ(best.distance, 1u);
    EXPECT_TRUE(is_winning(f.game, best.strategy));
    EXPECT_FALSE(is_minimal_explanation(f.game, sigma, f.set({"v1", "v2"}), m));
    EXPECT_TRUE(is_minimal_explanation(f.game, sigma, f.set({"v1"}), m));
  }
}

TEST(MinWinning, WinningStrategyHasDistanceZero) {
  auto g = two_choice_game();
  auto sigma = make_strategy(g, Player::Reach, {{1, 3}, {2, 4}});
  for (auto m : {GameMetric::HammS, GameMetric::DStar}) {
    EXPECT_EQ(min_winning_distance(g, sigma, m).distance, 0u);
    EXPECT_TRUE(is_minimal_explanation(g, sigma, IndexSet(6), m));
  }
}

TEST(MinWinning, DStarCanBeSmallerThanHamming) {
  auto g = two_choice_game();
  auto sigma = make_strategy(g, Player::Reach, {{1, 5}, {2, 5}});
  EXPECT_EQ(min_winning_distance(g, sigma, GameMetric::HammS).distance, 2u);
  EXPECT_EQ(min_winning_distance(g, sigma, GameMetric::DStar).distance, 1u);
  EXPECT_TRUE(is_minimal_explanation(g, sigma, set_of(6, {1, 2}), GameMetric::HammS));
}

TEST(MinWinning, UnwinnableGameThrows) {
  auto g = make_game("rse", {{0, 1}, {1, 1}, {1, 2}});
  auto sigma = first_choice_strategy(g, Player::Reach);
  EXPECT_THROW(min_winning_distance(g, sigma, GameMetric::HammS), NoWinningStrategy);
}

TEST(MinWinning, MatchesEnumerationOnRandomGames) {
  Rng rng(57);
  for (int k = 0; k < 200; ++k) {
    auto g = generate_game(GeneratorSpec{k % 2 ? Family::CyclicGame : Family::AcyclicGame, 6, 1, 2, 0}, rng);
    auto player = k % 3 == 0 ? Player::Safe : Player::Reach;
    auto sigma = random_strategy(g, player, rng);
    std::optional<std::size_t> hamm, star;
    for (const auto& tau : testing::all_strategies(g, player)) {
      if (!testing::wins_oracle(g, tau)) continue;
      auto h = testing::hamm_s_oracle(sigma, tau);
      auto d = testing::dstar_oracle(g, tau, sigma);
      if (!hamm || h < *hamm) hamm = h;
      if (!star || d < *star) star = d;
    }
    if (!hamm) {
      EXPECT_THROW(min_winning_distance(g, sigma, GameMetric::HammS), NoWinningStrategy);
      continue;
    }
    auto h = min_winning_distance(g, sigma, GameMetric::HammS);
    auto d = min_winning_distance(g, sigma, GameMetric::DStar);
    ASSERT_EQ(h.distance, *hamm) << "instance " << k;
    ASSERT_EQ(d.distance, *star) << "instance " << k;
    ASSERT_EQ(d_hamm_s(g, sigma, h.strategy), h.distance);
    ASSERT_TRUE(testing::wins_oracle(g, h.strategy));
    ASSERT_TRUE(testing::wins_oracle(g, d.strategy));
  }
}

TEST(MinDStar, RequiresAcyclicRestriction) {
  auto g = make_game("rre", {{0, 1}, {0, 2}, {1, 0}, {1, 2}});
  auto sigma = make_strategy(g, Player::Reach, {{0, 1}, {1, 0}});
  EXPECT_THROW(min_dstar_winning_strategy_acyclic(g, sigma), NotAcyclic);
}

TEST(MinDStar, LoopGame) {
  // The strategy's self-loop at v1 turns v1 into a sink of the restriction.
  Fixture f("fig2_middle");
  auto sigma = f.strategy("fig2_middle_sigma");
  auto r = min_dstar_winning_strategy_acyclic(f.game, sigma);
  EXPECT_EQ(r.distance, 1u);
  EXPECT_TRUE(is_winning(f.game, r.strategy));
  EXPECT_EQ(dstar(f.game, r.strategy, sigma), 1u);
}

TEST(MinDStar, WinningStrategyIsReturned) {
  auto g = two_choice_game();
  auto sigma = make_strategy(g, Player::Reach, {{1, 3}, {2, 4}});
  auto r = min_dstar_winning_strategy_acyclic(g, sigma);
  EXPECT_EQ(r.distance, 0u);
  EXPECT_EQ(r.strategy, sigma);
}

TEST(MinDStar, RepairsAtDistanceOne) {
  auto g = two_choice_game();
  auto sigma = make_strategy(g, Player::Reach, {{1, 5}, {2, 5}});
  auto r = min_dstar_winning_strategy_acyclic(g, sigma);
  EXPECT_EQ(r.distance, 1u);
  EXPECT_EQ(testing::min_dstar_oracle(g, sigma), 1u);
  EXPECT_TRUE(testing::wins_oracle(g, r.strategy));
  EXPECT_EQ(dstar(g, r.strategy, sigma), 1u);
}

TEST(MinDStar, MatchesOracleOnRandomAcyclicGames) {
  Rng rng(59);
  std::size_t searched = 0;
  for (int k = 0; k < 300 && searched < 100; ++k) {
    auto g = generate_game(GeneratorSpec{Family::AcyclicGame, 7, 1, 2, 0}, rng);
    auto sigma = random_strategy(g, Player::Reach, rng);
    auto expected = testing::min_dstar_oracle(g, sigma);
    if (!expected) {
      EXPECT_THROW(min_dstar_winning_strategy_acyclic(g, sigma), NoWinningStrategy);
      continue;
    }
    auto r = min_dstar_winning_strategy_acyclic(g, sigma);
    ASSERT_EQ(r.distance, *expected) << "instance " << k;
    ASSERT_TRUE(testing::wins_oracle(g, r.strategy));
    ASSERT_EQ(testing::dstar_oracle(g, r.strategy, sigma), r.distance);
    ++searched;
  }
  EXPECT_GT(searched, 50u);
}

}  // namespace
}  // namespace causekit

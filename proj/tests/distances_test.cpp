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

#include <algorithm>
#include <stdexcept>

#include "causekit/distances.hpp"
#include "causekit/generate.hpp"
#include "causekit/io.hpp"
#include "support/builders.hpp"
#include "support/oracles.hpp"

namespace causekit {
namespace {

using testing::make_game;
using testing::make_strategy;

Word word(std::string_view letters) {
  Word w;
  for (char c : letters) w.push_back(static_cast<Symbol>(c - 'a'));
  return w;
}

struct LoopGameFixture {
  ReachabilityGame game = game_from_json(read_json_file(testing::fixture_path("fig2_middle.json")));
  MDStrategy sigma = load("fig2_middle_sigma.json");
  MDStrategy tau = load("fig2_middle_tau.json");
  MDStrategy load(const std::string& name) const {
    return strategy_from_json(game, read_json_file(testing::fixture_path(name)));
  }
};

struct TreeGameFixture {
  ReachabilityGame game = game_from_json(read_json_file(testing::fixture_path("fig2_left.json")));
  MDStrategy sigma = load("fig2_left_sigma.json");
  MDStrategy avoider = load("fig2_left_avoider.json");
  MDStrategy losing_avoider = load("fig2_left_losing_avoider.json");
  MDStrategy load(const std::string& name) const {
    return strategy_from_json(game, read_json_file(testing::fixture_path(name)));
  }
};

TEST(PrefixDistance, Examples) {
  EXPECT_EQ(d_pref_ap(word("abcd"), word("abcd")), Distance(0));
  EXPECT_EQ(d_pref_ap(word("abcd"), word("abad")), Distance::power_of_two(-2));
  EXPECT_EQ(d_pref_ap(word("abcd"), word("bbcd")), Distance(1));
}

TEST(PrefixDistance, ProperPrefixOfLongerWord) {
  EXPECT_EQ(d_pref_ap(word("ab"), word("abc")), Distance::power_of_two(-2));
}

TEST(PrefixDistance, StatePaths) {
  auto ts = ts_from_json(read_json_file(testing::fixture_path("fig1_right.json")));
  auto id = [&](const char* s) { return ts.index_of(s); };
  std::vector<std::size_t> observed = {id("root"), id("cause"), id("right_c"), id("right_effect")};
  std::vector<std::size_t> leftmost = {id("root"), id("left_b"), id("left_c"), id("left_d")};
  EXPECT_EQ(d_pref(observed, observed), Distance(0));
  EXPECT_EQ(d_pref(observed, leftmost), Distance::power_of_two(-1));
  std::vector<std::size_t> shifted = {id("left_b"), id("left_c")};
  EXPECT_EQ(d_pref(observed, shifted), Distance(1));
}

TEST(HammingDistance, Examples) {
  EXPECT_EQ(d_hamm(word("abcd"), word("abcd")), Distance(0));
  EXPECT_EQ(d_hamm(word("abcd"), word("abad")), Distance(1));
  EXPECT_THROW(d_hamm(word("ab"), word("abc")), LengthMismatch);
}

TEST(HammingDistance, WeightedVariant) {
  LabelMetric indicator = [](Symbol x, Symbol y) { return x == y ? 0.0 : 1.0; };
  EXPECT_EQ(d_hamm_weighted(word("abcd"), word("abad"), indicator), d_hamm(word("abcd"), word("abad")));
  LabelMetric half = [](Symbol x, Symbol y) { return x == y ? 0.0 : 0.5; };
  EXPECT_EQ(d_hamm_weighted(word("ab"), word("ac"), half), Distance(0.5));
  EXPECT_EQ(d_hamm_weighted(word("abc"), word("abc"), half), Distance(0));
  EXPECT_THROW(d_hamm_weighted(word("a"), word("ab"), half), LengthMismatch);
}

TEST(GeneralizedHamming, Examples) {
  EXPECT_EQ(d_ghamm(word("ab"), word("abc")), Distance(1));
  EXPECT_EQ(d_ghamm(word("a"), word("bcd")), Distance(3));
  EXPECT_EQ(d_ghamm(word("abcd"), word("abad")), d_hamm(word("abcd"), word("abad")));
}

TEST(Levenshtein, Examples) {
  auto r = d_lev(word("abbc"), word("accbc"));
  EXPECT_EQ(r.distance, Distance(2));
  EXPECT_TRUE(r.witness.is_edit_sequence_for(word("abbc"), word("accbc")));
  EXPECT_EQ(r.witness.weight(), 2u);
  EXPECT_EQ(d_lev(word("abab"), word("abab")).distance, Distance(0));
  EXPECT_EQ(d_lev(word(""), word("abc")).distance, Distance(3));
}

TEST(Levenshtein, HandWrittenEditSequence) {
  auto a = [](char c) { return std::optional<Symbol>(static_cast<Symbol>(c - 'a')); };
  EditSequence gamma({{a('a'), a('a')}, {a('b'), a('c')}, {std::nullopt, a('c')},
                      {a('b'), a('b')}, {a('c'), a('c')}});
  EXPECT_EQ(gamma.weight(), 2u);
  EXPECT_TRUE(gamma.is_edit_sequence_for(word("abbc"), word("accbc")));
  EXPECT_FALSE(gamma.is_edit_sequence_for(word("abc"), word("accbc")));
  EXPECT_EQ(gamma.left_projection(), word("abbc"));
  EXPECT_EQ(gamma.right_projection(), word("accbc"));
}

TEST(TraceDistances, OrderingAndWitnessWeight) {
  Rng rng(5);
  for (int k = 0; k < 2000; ++k) {
    Word u, v;
    auto n = rng.below(7), m = rng.below(7);
    for (std::size_t i = 0; i < n; ++i) u.push_back(static_cast<Symbol>(rng.below(3)));
    for (std::size_t i = 0; i < m; ++i) v.push_back(static_cast<Symbol>(rng.below(3)));
    auto lev = d_lev(u, v);
    ASSERT_TRUE(lev.witness.is_edit_sequence_for(u, v));
    ASSERT_EQ(Distance(static_cast<double>(lev.witness.weight())), lev.distance);
    ASSERT_LE(lev.distance, d_ghamm(u, v));
    if (n == m) {
      ASSERT_EQ(d_ghamm(u, v), d_hamm(u, v));
    }
    ASSERT_EQ(d_lev(v, u).distance, lev.distance);
  }
}

TEST(StrategyDistances, IdenticalStrategies) {
  TreeGameFixture f;
  EXPECT_EQ(d_pref_hausdorff(f.game, f.sigma, f.sigma), Distance(0));
  EXPECT_EQ(d_hamm_s(f.game, f.sigma, f.sigma), 0u);
  EXPECT_EQ(dstar(f.game, f.sigma, f.sigma), 0u);
}

TEST(StrategyDistances, TreeGame) {
  TreeGameFixture f;
  EXPECT_EQ(d_pref_hausdorff(f.game, f.sigma, f.avoider), Distance::power_of_two(-2));
  EXPECT_EQ(dstar(f.game, f.losing_avoider, f.sigma), 1u);
  EXPECT_EQ(d_hamm_s(f.game, f.sigma, f.avoider), 1u);
}

TEST(StrategyDistances, LoopGame) {
  LoopGameFixture f;
  EXPECT_EQ(d_hamm_s(f.game, f.tau, f.sigma), 2u);
  EXPECT_EQ(dstar(f.game, f.tau, f.sigma), 2u);
  auto v0 = f.game.index_of("v0"), v1 = f.game.index_of("v1"), v2 = f.game.index_of("v2");
  EXPECT_EQ(play_dist(f.game, Play{{v0, v2}, {v1}}, f.tau), 2u);
  EXPECT_EQ(play_dist(f.game, Play{{v0, v2}, {v1}}, f.sigma), 0u);
}

TEST(StrategyDistances, DisagreementAtInitialVertex) {
  auto g = make_game("rsee", {{0, 1}, {0, 2}, {1, 3}});
  auto a = make_strategy(g, Player::Reach, {{0, 1}});
  auto b = make_strategy(g, Player::Reach, {{0, 2}});
  EXPECT_EQ(d_pref_hausdorff(g, a, b), Distance::power_of_two(-1));
  EXPECT_EQ(d_hamm_s(g, a, b), 1u);
}

TEST(StrategyDistances, PlayDistCountsDistinctVertices) {
  // v0 -> v1 -> v0 loop; the strategy exits at both vertices.
  auto g = make_game("rre", {{0, 1}, {0, 2}, {1, 0}, {1, 2}});
  auto exits = make_strategy(g, Player::Reach, {{0, 2}, {1, 2}});
  EXPECT_EQ(play_dist(g, Play{{0}, {1, 0}}, exits), 2u);
  auto stay = make_strategy(g, Player::Reach, {{0, 1}, {1, 2}});
  EXPECT_EQ(play_dist(g, Play{{0}, {1, 0}}, stay), 1u);
}

TEST(StrategyDistances, MixedPlayersRejected) {
  auto g = make_game("rsee", {{0, 1}, {0, 2}, {1, 3}});
  auto reach = first_choice_strategy(g, Player::Reach);
  auto safe = first_choice_strategy(g, Player::Safe);
  EXPECT_THROW(d_hamm_s(g, reach, safe), PreconditionViolated);
  EXPECT_THROW(d_pref_hausdorff(g, reach, safe), PreconditionViolated);
  EXPECT_THROW(dstar(g, reach, safe), PreconditionViolated);
}

TEST(StrategyDistances, AgreeWithOraclesOnRandomGames) {
  Rng rng(21);
  int compared = 0;
  for (int k = 0; k < 300; ++k) {
    GeneratorSpec spec{k % 2 ? Family::CyclicGame : Family::AcyclicGame, 6, 1, 2, 0};
    auto g = generate_game(spec, rng);
    auto p = k % 3 == 0 ? Player::Safe : Player::Reach;
    auto a = random_strategy(g, p, rng), b = random_strategy(g, p, rng);
    ASSERT_EQ(d_pref_hausdorff(g, a, b), testing::hausdorff_oracle(g, a, b));
    ASSERT_EQ(d_pref_hausdorff(g, a, b), d_pref_hausdorff(g, b, a));
    ASSERT_EQ(d_hamm_s(g, a, b), testing::hamm_s_oracle(a, b));
    ASSERT_EQ(dstrat(g, a, b), testing::dstrat_oracle(g, a, b));
    ASSERT_EQ(dstar(g, a, b), dstar(g, b, a));
    ASSERT_LE(dstar(g, a, b), d_hamm_s(g, a, b));
    ++compared;
  }
  EXPECT_EQ(compared, 300);
}

TEST(DistanceValue, ArithmeticAndFormatting) {
  EXPECT_TRUE(Distance::infinity().is_infinite());
  EXPECT_TRUE((Distance::infinity() + Distance(1)).is_infinite());
  EXPECT_LT(Distance(3), Distance::infinity());
  EXPECT_EQ(Distance(1) + Distance(0.5), Distance(1.5));
  EXPECT_EQ(Distance::power_of_two(-3).to_string(), "0.125");
  EXPECT_EQ(Distance::infinity().to_string(), "inf");
  EXPECT_THROW(Distance(-1), std::invalid_argument);
}

TEST(MarkedWalks, CountsMarkedVerticesOnCycles) {
  Adjacency adj = {{1}, {2}, {0, 3}, {}};
  SearchBudget budget;
  EXPECT_EQ(max_marked_on_walks(adj, 0, IndexSet(4, {0, 1, 2, 3}), budget), 4u);
  EXPECT_EQ(max_marked_on_walks(adj, 3, IndexSet(4, {0, 1}), budget), 0u);
}

}  // namespace
}  // namespace causekit

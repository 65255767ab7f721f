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

#include "causekit/generate.hpp"
#include "causekit/io.hpp"
#include "causekit/sem_bridge.hpp"
#include "support/oracles.hpp"

namespace causekit {
namespace {

StructuralEquationModel sem(std::vector<std::vector<bool>> tables) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < tables.size(); ++i) names.push_back("X" + std::to_string(i));
  return StructuralEquationModel(std::move(names), std::move(tables));
}

TEST(Evaluate, DefaultValuations) {
  EXPECT_EQ(evaluate_default(sem({{true}, {false, true}})), (Valuation{true, true}));
  EXPECT_EQ(evaluate_default(sem({{false}, {false, false}, {false, false, false, false}})),
            (Valuation{false, false, false}));
  EXPECT_EQ(evaluate_default(sem({{true}, {true, false}})), (Valuation{true, false}));
}

TEST(Evaluate, InterventionsPropagate) {
  auto m = sem({{true}, {false, true}});
  EXPECT_EQ(evaluate(m, {{0, false}}), (Valuation{false, false}));
  EXPECT_EQ(evaluate(m, {{1, false}}), (Valuation{true, false}));
}

TEST(Model, RejectsMalformedTables) {
  EXPECT_THROW(sem({}), InvalidModel);
  EXPECT_THROW(sem({{true}, {true}}), InvalidModel);
}

TEST(Unroll, TreeSizes) {
  auto one = unroll_to_ts(sem({{true}}));
  EXPECT_EQ(one.num_states(), 3u);
  EXPECT_EQ(one.successors(one.initial()).size(), 2u);
  auto two = unroll_to_ts(sem({{true}, {false, true}}));
  EXPECT_EQ(two.num_states(), 7u);
  auto with_outcomes = unroll_to_ts(sem({{true}, {false, true}}), std::size_t{1} << 20, true);
  EXPECT_EQ(with_outcomes.num_states(), 11u);
}

TEST(Unroll, LabelsAndDefaultPath) {
  auto m = sem({{true}, {true, false}});
  auto ts = unroll_to_ts(m);
  auto path = default_path(m, ts);
  ASSERT_EQ(path.size(), 3u);
  EXPECT_EQ(ts.id(path.back()), valuation_id({true, false}));
  for (std::size_t i = 1; i < path.size(); ++i)
    EXPECT_EQ(ts.alphabet()[ts.label(path[i])], kDefaultLabel);
  auto root = ts.initial();
  for (auto child : ts.successors(root)) {
    bool is_default = child == path[1];
    EXPECT_EQ(ts.alphabet()[ts.label(child)], is_default ? kDefaultLabel : kInterventionLabel);
  }
}

TEST(Unroll, BudgetExceeded) {
  std::vector<std::vector<bool>> tables;
  for (std::size_t i = 0; i < 6; ++i) tables.emplace_back(std::size_t{1} << i, false);
  EXPECT_THROW(unroll_to_ts(sem(tables), 50), BudgetExceeded);
}

TEST(ButFor, Examples) {
  auto m = sem({{true}});
  std::set<Valuation> effect = {{true}};
  EXPECT_FALSE(is_but_for_cause(m, effect, {}));
  EXPECT_TRUE(is_but_for_cause(m, effect, {0}));
  EXPECT_THROW(is_but_for_cause(m, {{false}}, {0}), PreconditionViolated);
}

TEST(ButFor, SupersetOfWorkingSingletonIsNotMinimal) {
  // X1 copies X0; the effect is X1 = true.
  auto m = sem({{true}, {false, true}});
  std::set<Valuation> effect = {{true, true}, {false, true}};
  EXPECT_TRUE(is_but_for_cause(m, effect, {1}));
  EXPECT_TRUE(is_but_for_cause(m, effect, {0}));
  EXPECT_FALSE(is_but_for_cause(m, effect, {0, 1}));
}

TEST(ButFor, MatchesOracleOnRandomModels) {
  Rng rng(41);
  std::size_t causes = 0;
  for (int k = 0; k < 300; ++k) {
    auto doc = generate_sem(GeneratorSpec{Family::BooleanSem, 4, 1, 2, 0}, rng);
    for (unsigned mask = 0; mask < 16; ++mask) {
      std::vector<std::size_t> vars;
      for (std::size_t i = 0; i < 4; ++i)
        if (mask >> i & 1) vars.push_back(i);
      bool got = is_but_for_cause(doc.sem, doc.effect, vars);
      ASSERT_EQ(got, testing::but_for_oracle(doc.sem, doc.effect, vars));
      causes += got;
    }
  }
  EXPECT_GT(causes, 0u);
}

TEST(Bridge, SingleVariable) {
  auto m = sem({{true}});
  auto r = bridge_check(m, {{true}}, {0});
  EXPECT_TRUE(r.but_for);
  EXPECT_TRUE(r.verdict.is_cause);
}

TEST(Bridge, CauseSetAndEffectLeaves) {
  auto doc = sem_from_json(read_json_file(testing::fixture_path("sem_chain.json")));
  auto ts = unroll_to_ts(doc.sem, std::size_t{1} << 20, true);
  auto cause = butfor_to_cause_set(doc.sem, ts, {1});
  EXPECT_EQ(cause.size(), 2u);
  for (auto s : cause.members()) EXPECT_EQ(ts.alphabet()[ts.label(s)], kDefaultLabel);
  auto leaves = effect_leaves(doc.sem, ts, doc.effect);
  EXPECT_EQ(leaves.size(), 4u);
  for (auto s : leaves.members()) EXPECT_TRUE(ts.is_terminal(s));
  EXPECT_TRUE(butfor_to_cause_set(doc.sem, ts, {}).empty());
}

TEST(Bridge, EmptyVariableSetIsRejected) {
  EXPECT_THROW(bridge_check(sem({{true}}), {{true}}, {}), PreconditionViolated);
}

TEST(Bridge, ChainFixture) {
  auto doc = sem_from_json(read_json_file(testing::fixture_path("sem_chain.json")));
  for (std::vector<std::size_t> vars : {std::vector<std::size_t>{0}, {1}, {2}, {0, 2}}) {
    auto r = bridge_check(doc.sem, doc.effect, vars);
    EXPECT_EQ(r.but_for, testing::but_for_oracle(doc.sem, doc.effect, vars));
    if (r.but_for) {
      EXPECT_TRUE(r.verdict.is_cause);
    }
  }
}

TEST(Bridge, EveryButForCauseIsAHammingCause) {
  Rng rng(43);
  std::size_t checked = 0;
  for (int k = 0; k < 200; ++k) {
    auto doc = generate_sem(GeneratorSpec{Family::BooleanSem, static_cast<std::size_t>(1 + k % 4), 1, 2, 0}, rng);
    auto n = doc.sem.size();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::size_t> vars;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) vars.push_back(i);
      auto r = bridge_check(doc.sem, doc.effect, vars);
      if (r.but_for) {
        ASSERT_TRUE(r.verdict.is_cause);
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 50u);
}

TEST(EffectPredicate, ExpandsOverLastVariables) {
  auto set = expand_effect_predicate(3, 1, {false, true});
  EXPECT_EQ(set.size(), 4u);
  for (const auto& v : set) EXPECT_TRUE(v[2]);
  EXPECT_THROW(expand_effect_predicate(3, 1, {true}), InvalidModel);
}

}  // namespace
}  // namespace causekit

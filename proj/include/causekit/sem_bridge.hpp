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

// Boolean structural equation models, their unrolling into tree-shaped
// transition systems, and but-for causes.

#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "causekit/errors.hpp"
#include "causekit/model.hpp"
#include "causekit/ts_causality.hpp"

namespace causekit {

using Valuation = std::vector<bool>;

/// Variables X_0..X_{n-1}; X_i = tables[i][k] where bit j of k is X_j.
class StructuralEquationModel {
 public:
  /// Throws InvalidModel unless n >= 1 and tables[i] has 2^i entries.
  StructuralEquationModel(std::vector<std::string> variables,
                          std::vector<std::vector<bool>> tables);

  std::size_t size() const { return variables_.size(); }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<std::vector<bool>>& tables() const { return tables_; }
  std::size_t index_of(const std::string& variable) const;

  /// f_i applied to the first i entries of `prefix`.
  bool equation(std::size_t i, const Valuation& prefix) const;

 private:
  std::vector<std::string> variables_;
  std::vector<std::vector<bool>> tables_;
};

/// Interventions: forced value per variable index.
using Intervention = std::vector<std::pair<std::size_t, bool>>;

Valuation evaluate_default(const StructuralEquationModel& sem);
Valuation evaluate(const StructuralEquationModel& sem, const Intervention& intervention);

/// Node id of a partial valuation: "v:" followed by one 0/1 digit per value.
std::string valuation_id(const Valuation& prefix);
/// Terminal node below a full valuation: "out:" followed by its digits.
std::string outcome_id(const Valuation& full);

inline constexpr const char* kDefaultLabel = "{}";
inline constexpr const char* kInterventionLabel = "{intervention}";

/// Complete binary tree of partial valuations. Children extend by f_i's
/// value (label {}) and by its negation (label {intervention}). With
/// `outcome_leaves`, every full valuation gets one terminal outcome child
/// labelled {}, which keeps cause sets at the last level disjoint from the
/// effect. Throws BudgetExceeded when the tree would exceed `max_states`.
TransitionSystem unroll_to_ts(const StructuralEquationModel& sem,
                              std::size_t max_states = std::size_t{1} << 20,
                              bool outcome_leaves = false);

/// Throws PreconditionViolated if the default valuation is not in `effect`.
bool is_but_for_cause(const StructuralEquationModel& sem, const std::set<Valuation>& effect,
                      const std::vector<std::size_t>& vars);

/// Nodes entered by the default action at the level of a variable in `vars`.
IndexSet butfor_to_cause_set(const StructuralEquationModel& sem, const TransitionSystem& ts,
                             const std::vector<std::size_t>& vars);

/// The default path from the root to the full default valuation (and on to
/// its outcome node when present).
std::vector<std::size_t> default_path(const StructuralEquationModel& sem,
                                      const TransitionSystem& ts);

/// Leaves (outcome nodes when present) whose valuation lies in `effect`.
IndexSet effect_leaves(const StructuralEquationModel& sem, const TransitionSystem& ts,
                       const std::set<Valuation>& effect);

struct BridgeResult {
  bool but_for = false;
  CauseVerdict verdict;
};

/// Runs the Hamming cause check of C_X on the default path of the tree with
/// outcome leaves, targeting the effect outcomes. PreconditionViolated when
/// X is empty.
BridgeResult bridge_check(const StructuralEquationModel& sem, const std::set<Valuation>& effect,
                          const std::vector<std::size_t>& vars);

/// Expands a predicate over the last `k` variables (bit j of the index is
/// X_{n-k+j}) into the set of full valuations satisfying it.
std::set<Valuation> expand_effect_predicate(std::size_t n, std::size_t k,
                                            const std::vector<bool>& table);

}  // namespace causekit

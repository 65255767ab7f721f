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

#include "causekit/sem_bridge.hpp"

#include <algorithm>

namespace causekit {

StructuralEquationModel::StructuralEquationModel(std::vector<std::string> variables,
                                                 std::vector<std::vector<bool>> tables)
    : variables_(std::move(variables)), tables_(std::move(tables)) {
  if (variables_.empty()) throw InvalidModel("a structural equation model needs a variable");
  if (variables_.size() > 24) throw InvalidModel("at most 24 variables are supported");
  if (tables_.size() != variables_.size())
    throw InvalidModel("one truth table per variable is required");
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    if (tables_[i].size() != (std::size_t{1} << i))
      throw InvalidModel("truth table of '" + variables_[i] + "' must have " +
                         std::to_string(std::size_t{1} << i) + " entries");
  }
  auto sorted = variables_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidModel("duplicate variable name");
}

std::size_t StructuralEquationModel::index_of(const std::string& variable) const {
  auto it = std::find(variables_.begin(), variables_.end(), variable);
  if (it == variables_.end()) throw InvalidModel("unknown variable '" + variable + "'");
  return static_cast<std::size_t>(it - variables_.begin());
}

bool StructuralEquationModel::equation(std::size_t i, const Valuation& prefix) const {
  std::size_t k = 0;
  for (std::size_t j = 0; j < i; ++j)
    if (prefix[j]) k |= std::size_t{1} << j;
  return tables_[i][k];
}

Valuation evaluate(const StructuralEquationModel& sem, const Intervention& intervention) {
  Valuation w;
  for (std::size_t i = 0; i < sem.size(); ++i) {
    auto forced = std::find_if(intervention.begin(), intervention.end(),
                               [i](const auto& p) { return p.first == i; });
    w.push_back(forced != intervention.end() ? forced->second : sem.equation(i, w));
  }
  return w;
}

Valuation evaluate_default(const StructuralEquationModel& sem) { return evaluate(sem, {}); }

std::string valuation_id(const Valuation& prefix) {
  std::string id = "v:";
  for (bool b : prefix) id.push_back(b ? '1' : '0');
  return id;
}

std::string outcome_id(const Valuation& full) {
  std::string id = "out:";
  for (bool b : full) id.push_back(b ? '1' : '0');
  return id;
}

TransitionSystem unroll_to_ts(const StructuralEquationModel& sem, std::size_t max_states,
                              bool outcome_leaves) {
  const auto n = sem.size();
  if (n >= 62 || (std::size_t{2} << n) - 1 + (outcome_leaves ? std::size_t{1} << n : 0) > max_states)
    throw BudgetExceeded("unrolled tree of " + std::to_string(n) + " variables is too large");
  TsData data;
  data.alphabet = {kDefaultLabel, kInterventionLabel};
  // Breadth-first numbering: the node for prefix p of length l gets index
  // 2^l - 1 + value(p), with the first variable as the most significant bit.
  std::vector<Valuation> nodes{Valuation{}};
  data.ids.push_back(valuation_id({}));
  data.labels.push_back(0);
  for (std::size_t level = 0; level < n; ++level) {
    std::vector<Valuation> next;
    auto parent = data.ids.size() - nodes.size();
    for (const auto& w : nodes) {
      bool dflt = sem.equation(level, w);
      for (bool b : {false, true}) {
        auto child = w;
        child.push_back(b);
        data.transitions.emplace_back(parent, data.ids.size());
        data.ids.push_back(valuation_id(child));
        data.labels.push_back(b == dflt ? 0 : 1);
        next.push_back(std::move(child));
      }
      ++parent;
    }
    nodes = std::move(next);
  }
  auto parent = data.ids.size() - nodes.size();
  for (const auto& w : outcome_leaves ? nodes : std::vector<Valuation>{}) {
    data.transitions.emplace_back(parent++, data.ids.size());
    data.ids.push_back(outcome_id(w));
    data.labels.push_back(0);
  }
  data.initial = 0;
  return TransitionSystem(std::move(data));
}

bool is_but_for_cause(const StructuralEquationModel& sem, const std::set<Valuation>& effect,
                      const std::vector<std::size_t>& vars) {
  if (!effect.count(evaluate_default(sem)))
    throw PreconditionViolated("the default valuation is not in the effect");
  for (auto x : vars)
    if (x >= sem.size()) throw PreconditionViolated("variable index out of range");

  // Some assignment to the variables in `subset` leaves the effect.
  auto works = [&](const std::vector<std::size_t>& subset) {
    for (std::size_t alpha = 0; alpha < (std::size_t{1} << subset.size()); ++alpha) {
      Intervention iv;
      for (std::size_t j = 0; j < subset.size(); ++j) iv.emplace_back(subset[j], (alpha >> j) & 1);
      if (!effect.count(evaluate(sem, iv))) return true;
    }
    return false;
  };

  if (vars.empty() || !works(vars)) return false;
  for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << vars.size()); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t j = 0; j < vars.size(); ++j)
      if ((mask >> j) & 1) subset.push_back(vars[j]);
    if (works(subset)) return false;
  }
  return true;
}

IndexSet butfor_to_cause_set(const StructuralEquationModel& sem, const TransitionSystem& ts,
                             const std::vector<std::size_t>& vars) {
  IndexSet cause(ts.num_states());
  for (auto x : vars) {
    if (x >= sem.size()) throw PreconditionViolated("variable index out of range");
    for (std::size_t k = 0; k < (std::size_t{1} << x); ++k) {
      Valuation w;
      for (std::size_t j = 0; j < x; ++j) w.push_back((k >> j) & 1);
      w.push_back(sem.equation(x, w));
      cause.insert(ts.index_of(valuation_id(w)));
    }
  }
  return cause;
}

std::vector<std::size_t> default_path(const StructuralEquationModel& sem,
                                      const TransitionSystem& ts) {
  auto full = evaluate_default(sem);
  std::vector<std::size_t> path;
  for (std::size_t l = 0; l <= full.size(); ++l)
    path.push_back(ts.index_of(valuation_id(Valuation(full.begin(), full.begin() + l))));
  if (ts.has_state(outcome_id(full))) path.push_back(ts.index_of(outcome_id(full)));
  return path;
}

IndexSet effect_leaves(const StructuralEquationModel& sem, const TransitionSystem& ts,
                       const std::set<Valuation>& effect) {
  IndexSet leaves(ts.num_states());
  for (const auto& w : effect) {
    if (w.size() != sem.size()) throw InvalidModel("effect valuation has the wrong length");
    leaves.insert(ts.index_of(ts.has_state(outcome_id(w)) ? outcome_id(w) : valuation_id(w)));
  }
  return leaves;
}

BridgeResult bridge_check(const StructuralEquationModel& sem, const std::set<Valuation>& effect,
                          const std::vector<std::size_t>& vars) {
  BridgeResult result;
  result.but_for = is_but_for_cause(sem, effect, vars);
  auto ts = unroll_to_ts(sem, std::size_t{1} << 20, true);
  auto pi = validate_maximal_path(ts, default_path(sem, ts));
  CauseQuery query{ts,     pi,          butfor_to_cause_set(sem, ts, vars),
                   effect_leaves(sem, ts, effect), Objective::Reach, Metric::Hamm};
  result.verdict = check_cause(query);
  return result;
}

std::set<Valuation> expand_effect_predicate(std::size_t n, std::size_t k,
                                            const std::vector<bool>& table) {
  if (k > n) throw InvalidModel("effect predicate ranges over more variables than exist");
  if (table.size() != (std::size_t{1} << k))
    throw InvalidModel("effect table must have 2^k entries");
  std::set<Valuation> out;
  for (std::size_t full = 0; full < (std::size_t{1} << n); ++full) {
    std::size_t idx = full >> (n - k);
    if (!table[idx]) continue;
    Valuation w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = (full >> j) & 1;
    out.insert(std::move(w));
  }
  return out;
}

}  // namespace causekit

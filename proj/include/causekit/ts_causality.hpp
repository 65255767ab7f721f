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

// Counterfactual causes on executions of transition systems.
//
// A query fixes an execution pi, a candidate cause C and an effect E (a set
// of terminal states). C is a cause for the property Phi (eventually E, or
// never E) on pi when some maximal path avoids C, and every C-avoiding
// maximal path that is closest to pi under the chosen metric violates Phi.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "causekit/distances.hpp"
#include "causekit/model.hpp"
#include "causekit/weighted_graph.hpp"

namespace causekit {

enum class Objective { Reach, Safe };
enum class Metric { PrefAP, Pref, Hamm, GHamm, Lev };

std::string_view to_string(Objective o);
std::string_view to_string(Metric m);

struct CauseQuery {
  const TransitionSystem& ts;
  MaximalFinitePath pi;
  IndexSet cause;
  IndexSet effect;
  Objective phi = Objective::Reach;
  Metric metric = Metric::PrefAP;
  /// Per-position label distance for the Hamm checker (0/1 when empty).
  std::optional<LabelMetric> label_metric = std::nullopt;
  /// Upper bound on reported witnesses.
  std::size_t max_witnesses = 2;
};

/// A C-avoiding maximal path: `path` alone when finite, `path` followed by
/// `cycle` repeated forever when infinite.
struct Witness {
  std::vector<std::size_t> path;
  std::vector<std::size_t> cycle;
  Distance distance;
  bool satisfies_phi = false;

  bool is_finite() const { return cycle.empty(); }
};

struct CauseVerdict {
  bool is_cause = false;
  /// Condition 1: some maximal path avoids C.
  bool avoider_exists = false;
  /// Minimum distance from pi over C-avoiding maximal paths (inf if none).
  Distance min_distance = Distance::infinity();
  /// Avoiders at the minimum distance, Phi-satisfying ones first.
  std::vector<Witness> witnesses;
  std::uint64_t expansions = 0;
};

/// Throws PreconditionViolated unless E is terminal, C and E are disjoint,
/// pi visits C and pi satisfies Phi.
void validate_query(const CauseQuery& query);

/// Validates the query and dispatches on the metric.
CauseVerdict check_cause(const CauseQuery& query);

/// Prefix metric on traces; for Metric::Pref every state acts as its own
/// label, which compares paths instead of traces.
CauseVerdict check_cause_pref_ap(const CauseQuery& query);

/// Depth of every state reachable from the initial state. Throws NotLayered
/// unless each reachable state has a unique depth and all maximal paths have
/// the same length. Unreachable states get kNone.
std::vector<std::size_t> validate_layered(const TransitionSystem& ts);

CauseVerdict check_cause_hamm_layered(const CauseQuery& query);
CauseVerdict check_cause_ghamm(const CauseQuery& query);

/// Alignment product of ts with pi. Node (s, i) has index s * |pi| + i and
/// the start node is (initial, 0). Every edge is tagged with the state it
/// appends to the compared path (kNone for deletions of pi symbols).
WeightedGraph build_lev_product(const TransitionSystem& ts, const MaximalFinitePath& pi);
CauseVerdict check_cause_lev(const CauseQuery& query);

/// Definitional oracle: enumerates maximal paths and applies the definition
/// literally. Cyclic systems need `length_bound`; paths longer than the bound
/// and all infinite paths are then ignored, which makes the answer unsound.
CauseVerdict brute_force_check(const CauseQuery& query,
                               std::optional<std::size_t> length_bound = std::nullopt);
CauseVerdict brute_force_check(const CauseQuery& query, std::optional<std::size_t> length_bound,
                               SearchBudget& budget);

/// All finite maximal paths from the initial state with at most `max_length`
/// states (every path when the system is acyclic and max_length is kNone).
std::vector<std::vector<std::size_t>> enumerate_maximal_paths(const TransitionSystem& ts,
                                                              std::size_t max_length,
                                                              SearchBudget& budget);

/// Distance between two finite state sequences under the query's metric.
Distance path_distance(const CauseQuery& query, std::span<const std::size_t> a,
                       std::span<const std::size_t> b);

}  // namespace causekit

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

// Causes for losing strategies in reachability games, explanations (strategy
// repairs) and the exact searches behind them.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "causekit/distances.hpp"
#include "causekit/errors.hpp"
#include "causekit/model.hpp"

namespace causekit {

enum class GameMetric { PrefH, HammS, DStar };
std::string_view to_string(GameMetric m);

// ---------------------------------------------------------------------------
// Solving

struct WinningAnalysis {
  IndexSet reach_region;
  IndexSet safe_region;
  MDStrategy reach_strategy;
  MDStrategy safe_strategy;

  const IndexSet& region(Player p) const { return p == Player::Reach ? reach_region : safe_region; }
  const MDStrategy& strategy(Player p) const {
    return p == Player::Reach ? reach_strategy : safe_strategy;
  }
};

/// Attractor of Reach towards the effect vertices; the rest is Safe's.
WinningAnalysis solve(const ReachabilityGame& game);

/// Every play consistent with the strategy and starting at the initial
/// vertex is won by its owner.
bool is_winning(const ReachabilityGame& game, const MDStrategy& strategy);

struct AvoidRegion {
  IndexSet region;
  /// For owned vertices in the region: the successors inside the region.
  Adjacency preserving;
};

/// Vertices from which `player` can keep every play out of `cause`.
AvoidRegion avoid_region(const ReachabilityGame& game, Player player, const IndexSet& cause);

/// No play consistent with the strategy visits `cause`.
bool avoids(const ReachabilityGame& game, const MDStrategy& strategy, const IndexSet& cause);

// ---------------------------------------------------------------------------
// Causes

struct GameCauseQuery {
  const ReachabilityGame& game;
  MDStrategy sigma;
  IndexSet cause;
  GameMetric metric = GameMetric::PrefH;
  std::uint64_t budget = SearchBudget::kDefaultLimit;
};

struct GameCauseVerdict {
  bool is_cause = false;
  /// Some sigma-play visits C and is lost by sigma's owner.
  bool losing_play_through_cause = false;
  /// Some strategy avoids C.
  bool avoidable = false;
  /// All closest C-avoiding strategies win.
  bool closest_win = false;
  /// Distance of the closest C-avoiding strategies (inf when none exist).
  Distance min_distance = Distance::infinity();
  /// A closest C-avoiding strategy; a losing one whenever such exists.
  std::optional<MDStrategy> witness;
  std::uint64_t expansions = 0;
};

/// Throws PreconditionViolated when C meets the effect vertices or sigma's
/// owner is not the player; NotAcyclic for HammS on a cyclic game;
/// BudgetExceeded when an exact search runs out of budget.
GameCauseVerdict check_cause_game(const GameCauseQuery& query);

/// Definitional oracle over all memoryless strategies of sigma's owner.
GameCauseVerdict brute_force_check_cause(const GameCauseQuery& query);

// ---------------------------------------------------------------------------
// Explanations

struct Explanation {
  IndexSet vertices;
  std::optional<MDStrategy> witness;
};

/// Winning strategy of G without C, staying close to sigma; E is where the
/// two differ. Throws NoWinningStrategy if sigma's owner loses G without C.
Explanation extract_explanation(const ReachabilityGame& game, const MDStrategy& sigma,
                                const IndexSet& cause);

/// Whether a winning strategy changes sigma exactly on `vertices`. Throws
/// EmptyChoice when a vertex of E has no alternative to sigma's edge.
Explanation is_explanation(const ReachabilityGame& game, const MDStrategy& sigma,
                           const IndexSet& vertices);

struct MinWinning {
  std::size_t distance = 0;
  MDStrategy strategy;
};

/// Exact minimum distance (HammS or DStar) from sigma to a winning strategy.
/// With `threshold`, the search stops at the first strategy within it.
/// Throws NoWinningStrategy when sigma's owner cannot win at all.
MinWinning min_winning_distance(const ReachabilityGame& game, const MDStrategy& sigma,
                                GameMetric metric, SearchBudget& budget,
                                std::optional<std::size_t> threshold = std::nullopt);
MinWinning min_winning_distance(const ReachabilityGame& game, const MDStrategy& sigma,
                                GameMetric metric);

bool is_minimal_explanation(const ReachabilityGame& game, const MDStrategy& sigma,
                            const IndexSet& vertices, GameMetric metric, SearchBudget& budget);
bool is_minimal_explanation(const ReachabilityGame& game, const MDStrategy& sigma,
                            const IndexSet& vertices, GameMetric metric);

struct MinDStar {
  MDStrategy strategy;
  std::size_t distance = 0;
  /// The shortest-path game answer was optimal; otherwise the exact search
  /// result is returned.
  bool fast_path_certified = false;
};

/// Requires a Reach strategy with G^sigma acyclic apart from sink loops
/// (NotAcyclic otherwise) and a winnable game (NoWinningStrategy).
MinDStar min_dstar_winning_strategy_acyclic(const ReachabilityGame& game,
                                            const MDStrategy& sigma, SearchBudget& budget);
MinDStar min_dstar_winning_strategy_acyclic(const ReachabilityGame& game,
                                            const MDStrategy& sigma);

// ---------------------------------------------------------------------------
// Strategy enumeration shared by the exact searches

/// Allowed successors per vertex; an empty list means "all edges".
struct StrategyEnumeration {
  Player player = Player::Reach;
  /// Owned vertices restricted to these successors (empty entry: no limit).
  Adjacency allowed;
  /// Choice at owned vertices that are never reached (kNone: sigma's edge).
  std::vector<std::size_t> unreached_choice;
  /// Partial strategies whose explored part visits a blocked vertex are cut.
  IndexSet blocked;
};

/// Enumerates memoryless strategies on the part reachable from the initial
/// vertex, deciding the lowest undecided reached vertex first and trying
/// sigma's edge before the others. `prune(partial)` receives the choices
/// made so far (kNone where undecided) and may cut the subtree; `visit`
/// receives each complete strategy and returns false to stop everything.
void enumerate_strategies(const ReachabilityGame& game, const MDStrategy& sigma,
                          const StrategyEnumeration& config, SearchBudget& budget,
                          const std::function<bool(const std::vector<std::size_t>&)>& prune,
                          const std::function<bool(const MDStrategy&)>& visit);

}  // namespace causekit

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

#include "causekit/game_causality.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <queue>
#include <tuple>

namespace causekit {

std::string_view to_string(GameMetric m) {
  switch (m) {
    case GameMetric::PrefH: return "pref-h";
    case GameMetric::HammS: return "hamm-s";
    case GameMetric::DStar: return "dstar";
  }
  return "?";
}

namespace {

/// Game graph with possibly restricted edges. No totality invariant: vertices
/// may become dead ends, and a non-effect dead end is never attracted.
struct Arena {
  std::vector<Owner> owners;
  Adjacency succ;
  std::size_t initial;

  std::size_t size() const { return owners.size(); }
  bool owned_by(std::size_t v, Player p) const { return causekit::owned_by(owners[v], p); }
};

Arena arena_of(const ReachabilityGame& game) {
  return {game.owners(), game.adjacency(), game.initial()};
}

struct Attractor {
  IndexSet set;
  std::vector<std::size_t> rank;    // kNone outside the set
  std::vector<std::size_t> choice;  // for player vertices inside the set
};

/// Vertices from which `player` forces a visit to `target` while never
/// entering `blocked`.
Attractor attractor(const Arena& arena, Player player, const IndexSet& target,
                    const IndexSet& blocked) {
  const auto n = arena.size();
  Attractor a{IndexSet(n), std::vector<std::size_t>(n, kNone), std::vector<std::size_t>(n, kNone)};
  Adjacency pred(n);
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    pending[v] = arena.succ[v].size();
    for (auto w : arena.succ[v]) pred[w].push_back(v);
  }
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (target.contains(v) && !blocked.contains(v)) {
      a.set.insert(v);
      a.rank[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    auto w = queue.front();
    queue.pop_front();
    for (auto v : pred[w]) {
      if (a.set.contains(v) || blocked.contains(v)) continue;
      bool joins = arena.owned_by(v, player) ? true : --pending[v] == 0;
      if (!joins) continue;
      a.set.insert(v);
      a.rank[v] = a.rank[w] + 1;
      if (arena.owned_by(v, player)) a.choice[v] = w;
      queue.push_back(v);
    }
  }
  return a;
}

IndexSet effect_vertices(const Arena& arena) {
  IndexSet e(arena.size());
  for (std::size_t v = 0; v < arena.size(); ++v)
    if (arena.owners[v] == Owner::Effect) e.insert(v);
  return e;
}

/// Winning region of `player` when visiting `blocked` loses for it, with a
/// winning choice at each of its vertices inside the region.
struct Region {
  IndexSet set;
  std::vector<std::size_t> choice;
  std::vector<std::size_t> rank;  // attractor ranks (Reach only)
};

Region winning_region(const Arena& arena, Player player, const IndexSet& blocked) {
  const auto n = arena.size();
  auto eff = effect_vertices(arena);
  Region r;
  if (player == Player::Reach) {
    auto a = attractor(arena, Player::Reach, eff, blocked);
    r.set = std::move(a.set);
    r.choice = std::move(a.choice);
    r.rank = std::move(a.rank);
    return r;
  }
  auto a = attractor(arena, Player::Reach, eff.united(blocked), IndexSet(n));
  r.set = a.set.complement();
  r.choice.assign(n, kNone);
  for (std::size_t v = 0; v < n; ++v) {
    if (!r.set.contains(v) || !arena.owned_by(v, Player::Safe)) continue;
    for (auto w : arena.succ[v])
      if (r.set.contains(w)) {
        r.choice[v] = w;
        break;
      }
  }
  return r;
}

AvoidRegion avoid_region_arena(const Arena& arena, Player player, const IndexSet& cause) {
  auto a = attractor(arena, opponent(player), cause, IndexSet(arena.size()));
  AvoidRegion out{a.set.complement(), Adjacency(arena.size())};
  for (std::size_t v = 0; v < arena.size(); ++v) {
    if (!out.region.contains(v) || !arena.owned_by(v, player)) continue;
    for (auto w : arena.succ[v])
      if (out.region.contains(w)) out.preserving[v].push_back(w);
  }
  return out;
}

Adjacency strategy_adjacency(const ReachabilityGame& game, const MDStrategy& s) {
  Adjacency adj = game.adjacency();
  for (auto v : game.owned_vertices(s.player())) adj[v] = {s(v)};
  return adj;
}

/// Partially decided strategy: undecided owned vertices become dead ends.
Adjacency partial_adjacency(const ReachabilityGame& game, Player player,
                            const std::vector<std::size_t>& partial) {
  Adjacency adj = game.adjacency();
  for (auto v : game.owned_vertices(player)) {
    if (partial[v] == kNone)
      adj[v].clear();
    else
      adj[v] = {partial[v]};
  }
  return adj;
}

/// Some play of the one-player graph from `from` is lost by `player`.
bool has_losing_path(const Adjacency& adj, std::size_t from, Player player, const IndexSet& eff,
                     const IndexSet& within) {
  if (player == Player::Safe) return reachable_set(adj, from, within.complement()).intersects(eff);
  IndexSet inner(within.universe());
  for (auto v : within.members())
    if (!eff.contains(v)) inner.insert(v);
  return reaches_cycle(adj, from, inner);
}

bool losing_play_through_cause(const ReachabilityGame& game, const MDStrategy& sigma,
                               const IndexSet& cause) {
  auto adj = strategy_adjacency(game, sigma);
  auto reach = reachable_set(adj, game.initial(), IndexSet(game.num_vertices()));
  auto eff = game.effect_set();
  auto all = IndexSet::full(game.num_vertices());
  for (auto c : cause.members()) {
    if (!reach.contains(c)) continue;
    if (has_losing_path(adj, c, sigma.player(), eff, all)) return true;
  }
  return false;
}

void validate_game_query(const GameCauseQuery& q) {
  const auto n = q.game.num_vertices();
  if (q.cause.universe() != n) throw PreconditionViolated("cause set must range over the vertices");
  if (q.cause.intersects(q.game.effect_set()))
    throw PreconditionViolated("cause set contains an effect vertex");
  if (q.sigma.choices().size() != n)
    throw PreconditionViolated("strategy does not belong to this game");
}

std::size_t count_changes(const MDStrategy& sigma, const std::vector<std::size_t>& partial) {
  std::size_t k = 0;
  for (std::size_t v = 0; v < partial.size(); ++v)
    if (partial[v] != kNone && partial[v] != sigma(v)) ++k;
  return k;
}

/// Lower bound on dstar(tau, sigma) for every completion tau of `partial`.
std::size_t dstar_lower_bound(const ReachabilityGame& game, const MDStrategy& sigma,
                              const std::vector<std::size_t>& partial, SearchBudget& budget) {
  IndexSet marked(game.num_vertices());
  for (std::size_t v = 0; v < partial.size(); ++v)
    if (partial[v] != kNone && partial[v] != sigma(v)) marked.insert(v);
  if (marked.empty()) return 0;
  auto along_tau = max_marked_on_walks(partial_adjacency(game, sigma.player(), partial),
                                       game.initial(), marked, budget);
  auto along_sigma =
      max_marked_on_walks(strategy_adjacency(game, sigma), game.initial(), marked, budget);
  return std::max(along_tau, along_sigma);
}

std::vector<std::size_t> completed(const MDStrategy& sigma, const std::vector<std::size_t>& partial) {
  auto out = sigma.choices();
  for (std::size_t v = 0; v < partial.size(); ++v)
    if (partial[v] != kNone) out[v] = partial[v];
  return out;
}

/// Reach loses every completion once the decided part already contains a
/// reachable cycle; Safe once an effect vertex is reachable.
bool partial_already_losing(const ReachabilityGame& game, Player player,
                            const std::vector<std::size_t>& partial) {
  auto adj = partial_adjacency(game, player, partial);
  return has_losing_path(adj, game.initial(), player, game.effect_set(),
                         IndexSet::full(game.num_vertices()));
}

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;

std::size_t add(std::size_t a, std::size_t b) { return std::min(kInf, a + b); }

// -- PrefH condition 3 -------------------------------------------------------

/// Closest C-avoiding strategies agree with sigma on every owned vertex within
/// sigma-depth n - 1 for the largest feasible n. They all win iff no losing
/// path exists in the graph of edges they may still use.
void prefh_closest(const GameCauseQuery& q, GameCauseVerdict& verdict) {
  const auto& game = q.game;
  const auto& sigma = q.sigma;
  const auto player = sigma.player();
  const auto n = game.num_vertices();
  auto depth = bfs_depths(strategy_adjacency(game, sigma), game.initial());

  auto pinned_arena = [&](std::size_t pins) {
    auto arena = arena_of(game);
    for (auto v : game.owned_vertices(player))
      if (depth[v] != kNone && depth[v] + 1 <= pins) arena.succ[v] = {sigma(v)};
    return arena;
  };

  std::size_t best = 0;
  auto region = avoid_region_arena(arena_of(game), player, q.cause);
  for (std::size_t pins = 1; pins <= n + 1; ++pins) {
    auto candidate = avoid_region_arena(pinned_arena(pins), player, q.cause);
    verdict.expansions += n;
    if (!candidate.region.contains(game.initial())) break;
    best = pins;
    region = std::move(candidate);
  }
  verdict.min_distance = Distance::power_of_two(-static_cast<int>(best + 1));

  auto arena = pinned_arena(best);
  Adjacency allowed(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!region.region.contains(v)) continue;
    allowed[v] = arena.owned_by(v, player) ? region.preserving[v] : arena.succ[v];
  }
  auto eff = game.effect_set();

  auto choices = sigma.choices();
  for (auto v : game.owned_vertices(player)) {
    const auto& opts = allowed[v];
    if (opts.empty() || std::find(opts.begin(), opts.end(), sigma(v)) != opts.end()) continue;
    choices[v] = opts.front();
  }

  // Search a losing path in the allowed graph; its owned vertices then fix
  // the witness choices (each appears once, so the strategy is memoryless).
  std::vector<std::size_t> route;
  if (player == Player::Safe) {
    std::vector<std::size_t> parent(n, kNone);
    std::vector<char> seen(n, 0);
    std::deque<std::size_t> queue{game.initial()};
    seen[game.initial()] = 1;
    while (!queue.empty() && route.empty()) {
      auto v = queue.front();
      queue.pop_front();
      if (eff.contains(v)) {
        for (auto u = v; u != kNone; u = parent[u]) route.push_back(u);
        std::reverse(route.begin(), route.end());
        break;
      }
      for (auto w : allowed[v])
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = v;
          queue.push_back(w);
        }
    }
  } else {
    // Iterative DFS; the grey stack at a back edge is a lasso.
    std::vector<char> colour(n, 0);
    std::vector<std::pair<std::size_t, std::size_t>> stack{{game.initial(), 0}};
    colour[game.initial()] = 1;
    while (!stack.empty() && route.empty()) {
      auto& [v, k] = stack.back();
      if (k == allowed[v].size()) {
        colour[v] = 2;
        stack.pop_back();
        continue;
      }
      auto w = allowed[v][k++];
      if (eff.contains(w)) continue;
      if (colour[w] == 1) {
        for (auto& frame : stack) route.push_back(frame.first);
        route.push_back(w);
      } else if (colour[w] == 0) {
        colour[w] = 1;
        stack.emplace_back(w, 0);
      }
    }
  }
  verdict.closest_win = route.empty();
  for (std::size_t i = 0; i + 1 < route.size(); ++i)
    if (game.owned_by(route[i], player)) choices[route[i]] = route[i + 1];
  verdict.witness = MDStrategy(game, player, std::move(choices));
}

// -- HammS condition 3 -------------------------------------------------------

bool is_leaf(const ReachabilityGame& game, const IndexSet& cause, std::size_t v) {
  return game.is_effect(v) || game.is_sink(v) || cause.contains(v);
}

/// Every reachable vertex with a choice below it has a single parent, so
/// change counts of different subtrees simply add up.
bool is_tree_shaped(const ReachabilityGame& game, const IndexSet& cause) {
  const auto n = game.num_vertices();
  auto reach = reachable_set(game.adjacency(), game.initial(), IndexSet(n));
  std::vector<std::size_t> parents(n, 0);
  for (auto v : reach.members()) {
    if (is_leaf(game, cause, v)) continue;
    for (auto w : game.successors(v)) ++parents[w];
  }
  for (auto v : reach.members())
    if (!is_leaf(game, cause, v) && parents[v] > (v == game.initial() ? 0u : 1u)) return false;
  return true;
}

void hamms_tree(const GameCauseQuery& q, GameCauseVerdict& verdict) {
  const auto& game = q.game;
  const auto& sigma = q.sigma;
  const auto player = sigma.player();
  const auto n = game.num_vertices();
  std::vector<std::size_t> cost(n, kNone), lose(n, kNone);

  // Post-order over the acyclic (modulo sink loops) reachable part.
  std::function<void(std::size_t)> eval = [&](std::size_t v) {
    if (cost[v] != kNone) return;
    ++verdict.expansions;
    if (q.cause.contains(v)) {
      cost[v] = lose[v] = kInf;
      return;
    }
    if (game.is_effect(v)) {
      cost[v] = 0;
      lose[v] = player == Player::Reach ? kInf : 0;
      return;
    }
    if (game.is_sink(v)) {
      cost[v] = 0;
      lose[v] = player == Player::Reach ? 0 : kInf;
      return;
    }
    for (auto u : game.successors(v)) eval(u);
    if (game.owned_by(v, player)) {
      cost[v] = lose[v] = kInf;
      for (auto u : game.successors(v)) {
        std::size_t change = u == sigma(v) ? 0 : 1;
        cost[v] = std::min(cost[v], add(change, cost[u]));
        lose[v] = std::min(lose[v], add(change, lose[u]));
      }
    } else {
      std::size_t sum = 0, extra = kInf;
      for (auto u : game.successors(v)) {
        sum = add(sum, cost[u]);
        if (lose[u] < kInf) extra = std::min(extra, lose[u] - std::min(lose[u], cost[u]));
      }
      cost[v] = sum;
      lose[v] = add(sum, extra);
    }
  };
  eval(game.initial());

  const auto root = game.initial();
  verdict.min_distance = Distance(static_cast<double>(cost[root]));
  verdict.closest_win = lose[root] > cost[root];

  auto choices = sigma.choices();
  std::function<void(std::size_t, bool)> assign = [&](std::size_t v, bool losing) {
    if (is_leaf(game, q.cause, v)) return;
    const auto& table = losing ? lose : cost;
    if (game.owned_by(v, player)) {
      std::size_t pick = sigma(v);
      for (auto u : game.successors(v)) {
        auto value = add(u == sigma(v) ? 0 : 1, table[u]);
        auto current = add(pick == sigma(v) ? 0 : 1, table[pick]);
        if (value < current) pick = u;
      }
      choices[v] = pick;
      assign(pick, losing);
      return;
    }
    std::size_t lose_child = kNone;
    if (losing) {
      for (auto u : game.successors(v)) {
        if (lose[u] >= kInf) continue;
        if (lose_child == kNone || lose[u] - cost[u] < lose[lose_child] - cost[lose_child])
          lose_child = u;
      }
    }
    for (auto u : game.successors(v)) assign(u, u == lose_child);
  };
  assign(root, !verdict.closest_win);
  verdict.witness = MDStrategy(game, player, std::move(choices));
}

/// Exact search over C-avoiding strategies for the minimum distance, and
/// whether a losing strategy attains it.
void closest_by_search(const GameCauseQuery& q, GameCauseVerdict& verdict) {
  const auto& game = q.game;
  const auto& sigma = q.sigma;
  SearchBudget budget(q.budget);
  StrategyEnumeration config;
  config.player = sigma.player();
  config.blocked = q.cause;

  std::size_t best = kInf;
  bool loser_at_best = false;
  std::optional<MDStrategy> witness;
  auto lower_bound = [&](const std::vector<std::size_t>& partial) {
    return q.metric == GameMetric::HammS ? count_changes(sigma, partial)
                                         : dstar_lower_bound(game, sigma, partial, budget);
  };
  enumerate_strategies(
      game, sigma, config, budget,
      [&](const std::vector<std::size_t>& partial) {
        auto lb = lower_bound(partial);
        return lb > best || (lb == best && loser_at_best);
      },
      [&](const MDStrategy& tau) {
        auto d = q.metric == GameMetric::HammS ? d_hamm_s(game, sigma, tau)
                                               : dstar(game, tau, sigma, budget);
        bool loses = !is_winning(game, tau);
        if (d < best) {
          best = d;
          loser_at_best = loses;
          witness = tau;
        } else if (d == best && loses && !loser_at_best) {
          loser_at_best = true;
          witness = tau;
        }
        return true;
      });
  verdict.expansions += budget.used();
  verdict.min_distance = Distance(static_cast<double>(best));
  verdict.closest_win = !loser_at_best;
  verdict.witness = witness;
}

}  // namespace

// ---------------------------------------------------------------------------

WinningAnalysis solve(const ReachabilityGame& game) {
  auto arena = arena_of(game);
  auto a = attractor(arena, Player::Reach, game.effect_set(), IndexSet(game.num_vertices()));
  auto reach_choices = first_choice_strategy(game, Player::Reach).choices();
  auto safe_choices = first_choice_strategy(game, Player::Safe).choices();
  for (std::size_t v = 0; v < game.num_vertices(); ++v) {
    if (game.owned_by(v, Player::Reach) && a.set.contains(v)) reach_choices[v] = a.choice[v];
    if (game.owned_by(v, Player::Safe) && !a.set.contains(v)) {
      for (auto w : game.successors(v))
        if (!a.set.contains(w)) {
          safe_choices[v] = w;
          break;
        }
    }
  }
  return {a.set, a.set.complement(), MDStrategy(game, Player::Reach, std::move(reach_choices)),
          MDStrategy(game, Player::Safe, std::move(safe_choices))};
}

bool is_winning(const ReachabilityGame& game, const MDStrategy& strategy) {
  return !has_losing_path(strategy_adjacency(game, strategy), game.initial(), strategy.player(),
                          game.effect_set(), IndexSet::full(game.num_vertices()));
}

AvoidRegion avoid_region(const ReachabilityGame& game, Player player, const IndexSet& cause) {
  if (cause.universe() != game.num_vertices())
    throw PreconditionViolated("cause set must range over the vertices");
  return avoid_region_arena(arena_of(game), player, cause);
}

bool avoids(const ReachabilityGame& game, const MDStrategy& strategy, const IndexSet& cause) {
  auto reach = reachable_set(strategy_adjacency(game, strategy), game.initial(),
                             IndexSet(game.num_vertices()));
  return !reach.intersects(cause);
}

GameCauseVerdict check_cause_game(const GameCauseQuery& q) {
  validate_game_query(q);
  const auto& game = q.game;
  if (q.metric == GameMetric::HammS && !is_acyclic_modulo_sinks(game))
    throw NotAcyclic("the Hamming strategy metric needs an acyclic game");

  GameCauseVerdict verdict;
  verdict.losing_play_through_cause = losing_play_through_cause(game, q.sigma, q.cause);
  verdict.avoidable = avoid_region(game, q.sigma.player(), q.cause).region.contains(game.initial());
  if (!verdict.avoidable) return verdict;

  if (avoids(game, q.sigma, q.cause)) {
    // sigma itself is closest; every strategy at distance 0 has its plays.
    verdict.min_distance = Distance(0.0);
    verdict.closest_win = is_winning(game, q.sigma);
    verdict.witness = q.sigma;
  } else {
    switch (q.metric) {
      case GameMetric::PrefH: prefh_closest(q, verdict); break;
      case GameMetric::HammS:
        if (is_tree_shaped(game, q.cause))
          hamms_tree(q, verdict);
        else
          closest_by_search(q, verdict);
        break;
      case GameMetric::DStar: closest_by_search(q, verdict); break;
    }
  }
  verdict.is_cause = verdict.losing_play_through_cause && verdict.avoidable && verdict.closest_win;
  return verdict;
}

GameCauseVerdict brute_force_check_cause(const GameCauseQuery& q) {
  validate_game_query(q);
  const auto& game = q.game;
  const auto& sigma = q.sigma;
  const auto player = sigma.player();
  SearchBudget budget(q.budget);

  GameCauseVerdict verdict;
  verdict.losing_play_through_cause = losing_play_through_cause(game, sigma, q.cause);

  auto owned = game.owned_vertices(player);
  std::vector<std::size_t> digit(owned.size(), 0);
  auto choices = sigma.choices();
  bool loser_at_best = false;
  while (true) {
    budget.charge();
    for (std::size_t i = 0; i < owned.size(); ++i) choices[owned[i]] = game.successors(owned[i])[digit[i]];
    MDStrategy tau(game, player, choices);
    if (avoids(game, tau, q.cause)) {
      Distance d;
      switch (q.metric) {
        case GameMetric::PrefH: d = d_pref_hausdorff(game, sigma, tau); break;
        case GameMetric::HammS: d = Distance(static_cast<double>(d_hamm_s(game, sigma, tau))); break;
        case GameMetric::DStar: d = Distance(static_cast<double>(dstar(game, tau, sigma, budget))); break;
      }
      bool loses = !is_winning(game, tau);
      if (!verdict.avoidable || d < verdict.min_distance) {
        verdict.avoidable = true;
        verdict.min_distance = d;
        loser_at_best = loses;
        verdict.witness = tau;
      } else if (d == verdict.min_distance && loses && !loser_at_best) {
        loser_at_best = true;
        verdict.witness = tau;
      }
    }
    std::size_t i = 0;
    while (i < owned.size() && ++digit[i] == game.successors(owned[i]).size()) digit[i++] = 0;
    if (i == owned.size()) break;
  }
  verdict.expansions = budget.used();
  verdict.closest_win = verdict.avoidable && !loser_at_best;
  verdict.is_cause = verdict.losing_play_through_cause && verdict.avoidable && verdict.closest_win;
  return verdict;
}

// ---------------------------------------------------------------------------
// Explanations

Explanation extract_explanation(const ReachabilityGame& game, const MDStrategy& sigma,
                                const IndexSet& cause) {
  const auto n = game.num_vertices();
  if (cause.universe() != n) throw PreconditionViolated("cause set must range over the vertices");
  const auto player = sigma.player();
  auto region = winning_region(arena_of(game), player, cause);
  if (!region.set.contains(game.initial()))
    throw NoWinningStrategy(std::string(to_string(player)) +
                            " cannot win once the cause vertices are removed");

  auto choices = sigma.choices();
  for (auto v : game.owned_vertices(player)) {
    if (!region.set.contains(v)) continue;
    auto s = sigma(v);
    bool keep = player == Player::Reach
                    ? region.set.contains(s) && region.rank[s] < region.rank[v]
                    : region.set.contains(s);
    if (!keep) choices[v] = region.choice[v];
  }
  MDStrategy tau(game, player, std::move(choices));
  IndexSet changed(n);
  for (auto v : game.owned_vertices(player))
    if (tau(v) != sigma(v)) changed.insert(v);
  return {changed, tau};
}

Explanation is_explanation(const ReachabilityGame& game, const MDStrategy& sigma,
                           const IndexSet& vertices) {
  const auto n = game.num_vertices();
  const auto player = sigma.player();
  if (vertices.universe() != n) throw PreconditionViolated("vertex set must range over the vertices");
  auto arena = arena_of(game);
  for (std::size_t v = 0; v < n; ++v) {
    if (vertices.contains(v) && !game.owned_by(v, player))
      throw PreconditionViolated("vertex '" + game.id(v) + "' is not owned by " +
                                 std::string(to_string(player)));
    if (!game.owned_by(v, player)) continue;
    if (vertices.contains(v)) {
      std::erase(arena.succ[v], sigma(v));
      if (arena.succ[v].empty())
        throw EmptyChoice("vertex '" + game.id(v) + "' has no edge besides the strategy's");
    } else {
      arena.succ[v] = {sigma(v)};
    }
  }
  auto region = winning_region(arena, player, IndexSet(n));
  Explanation out{vertices, std::nullopt};
  if (!region.set.contains(game.initial())) return out;
  auto choices = sigma.choices();
  for (auto v : game.owned_vertices(player)) {
    choices[v] = region.set.contains(v) && region.choice[v] != kNone ? region.choice[v]
                                                                     : arena.succ[v].front();
  }
  out.witness = MDStrategy(game, player, std::move(choices));
  return out;
}

MinWinning min_winning_distance(const ReachabilityGame& game, const MDStrategy& sigma,
                                GameMetric metric, SearchBudget& budget,
                                std::optional<std::size_t> threshold) {
  if (metric == GameMetric::PrefH)
    throw PreconditionViolated("minimum winning distance is defined for hamm-s and dstar");
  const auto player = sigma.player();
  if (!solve(game).region(player).contains(game.initial()))
    throw NoWinningStrategy(std::string(to_string(player)) + " has no winning strategy");
  if (is_winning(game, sigma)) return {0, sigma};

  StrategyEnumeration config;
  config.player = player;
  config.blocked = IndexSet(game.num_vertices());
  std::size_t best = kInf;
  std::optional<MDStrategy> found;
  enumerate_strategies(
      game, sigma, config, budget,
      [&](const std::vector<std::size_t>& partial) {
        auto lb = metric == GameMetric::HammS ? count_changes(sigma, partial)
                                              : dstar_lower_bound(game, sigma, partial, budget);
        return lb >= best || partial_already_losing(game, player, partial);
      },
      [&](const MDStrategy& tau) {
        if (!is_winning(game, tau)) return true;
        auto d = metric == GameMetric::HammS ? d_hamm_s(game, sigma, tau)
                                             : dstar(game, tau, sigma, budget);
        if (d < best) {
          best = d;
          found = tau;
        }
        return !(threshold && best <= *threshold);
      });
  if (!found) throw NoWinningStrategy("no winning memoryless strategy found");
  return {best, *found};
}

MinWinning min_winning_distance(const ReachabilityGame& game, const MDStrategy& sigma,
                                GameMetric metric) {
  SearchBudget budget;
  return min_winning_distance(game, sigma, metric, budget);
}

bool is_minimal_explanation(const ReachabilityGame& game, const MDStrategy& sigma,
                            const IndexSet& vertices, GameMetric metric, SearchBudget& budget) {
  if (metric == GameMetric::PrefH)
    throw PreconditionViolated("minimal explanations are defined for hamm-s and dstar");
  if (!is_explanation(game, sigma, vertices).witness) return false;
  auto target = min_winning_distance(game, sigma, metric, budget).distance;
  if (metric == GameMetric::HammS) return vertices.size() == target;

  const auto player = sigma.player();
  StrategyEnumeration config;
  config.player = player;
  config.blocked = IndexSet(game.num_vertices());
  config.allowed.assign(game.num_vertices(), {});
  config.unreached_choice.assign(game.num_vertices(), kNone);
  for (auto v : game.owned_vertices(player)) {
    if (vertices.contains(v)) {
      for (auto w : game.successors(v))
        if (w != sigma(v)) config.allowed[v].push_back(w);
      config.unreached_choice[v] = config.allowed[v].front();
    } else {
      config.allowed[v] = {sigma(v)};
    }
  }
  // E-distinct strategies also differ at unreached vertices of E, which can
  // lie on sigma-plays; the lower bound must see those changes too.
  auto with_forced = [&](std::vector<std::size_t> partial) {
    for (auto v : vertices.members())
      if (partial[v] == kNone) partial[v] = config.unreached_choice[v];
    return partial;
  };
  bool found = false;
  enumerate_strategies(
      game, sigma, config, budget,
      [&](const std::vector<std::size_t>& partial) {
        if (partial_already_losing(game, player, partial)) return true;
        IndexSet marked(game.num_vertices());
        auto forced = with_forced(partial);
        // Only the sigma-play direction may use forced (unreached) changes.
        std::size_t along_sigma = 0;
        for (std::size_t v = 0; v < forced.size(); ++v)
          if (forced[v] != kNone && forced[v] != sigma(v)) marked.insert(v);
        if (!marked.empty())
          along_sigma = max_marked_on_walks(strategy_adjacency(game, sigma), game.initial(),
                                            marked, budget);
        return std::max(along_sigma, dstar_lower_bound(game, sigma, partial, budget)) > target;
      },
      [&](const MDStrategy& tau) {
        if (!is_winning(game, tau)) return true;
        if (dstar(game, tau, sigma, budget) <= target) found = true;
        return !found;
      });
  return found;
}

bool is_minimal_explanation(const ReachabilityGame& game, const MDStrategy& sigma,
                            const IndexSet& vertices, GameMetric metric) {
  SearchBudget budget;
  return is_minimal_explanation(game, sigma, vertices, metric, budget);
}

MinDStar min_dstar_winning_strategy_acyclic(const ReachabilityGame& game,
                                            const MDStrategy& sigma, SearchBudget& budget) {
  if (sigma.player() != Player::Reach)
    throw PreconditionViolated("the acyclic construction applies to Reach strategies");
  if (!is_acyclic_modulo_sinks(restrict_game(game, sigma)))
    throw NotAcyclic("the game restricted to the strategy has a cycle");
  auto analysis = solve(game);
  if (!analysis.reach_region.contains(game.initial()))
    throw NoWinningStrategy("reach has no winning strategy");
  if (is_winning(game, sigma)) return {sigma, 0, true};

  // Min-max shortest paths on the attractor: Reach minimises and Safe
  // maximises the number of deviating edges until an effect vertex.
  const auto n = game.num_vertices();
  const auto& region = analysis.reach_region;
  Adjacency pred(n);
  std::vector<std::size_t> pending(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!region.contains(v)) continue;
    for (auto w : game.successors(v))
      if (region.contains(w)) {
        pred[w].push_back(v);
        ++pending[v];
      }
  }
  std::vector<std::size_t> value(n, kInf), worst(n, 0);
  auto choices = sigma.choices();
  std::vector<char> done(n, 0);
  using Entry = std::pair<std::size_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (auto v : game.effect_set().members()) {
    value[v] = 0;
    queue.emplace(0, v);
  }
  while (!queue.empty()) {
    auto [d, w] = queue.top();
    queue.pop();
    if (done[w] || d != value[w]) continue;
    done[w] = 1;
    budget.charge();
    for (auto v : pred[w]) {
      if (done[v]) continue;
      if (game.owned_by(v, Player::Reach)) {
        auto candidate = d + (w == sigma(v) ? 0 : 1);
        if (candidate < value[v]) {
          value[v] = candidate;
          choices[v] = w;
          queue.emplace(candidate, v);
        } else if (candidate == value[v] && w == sigma(v)) {
          choices[v] = w;
        }
      } else {
        worst[v] = std::max(worst[v], d);
        if (--pending[v] == 0) {
          value[v] = worst[v];
          queue.emplace(worst[v], v);
        }
      }
    }
  }
  MDStrategy tau(game, Player::Reach, std::move(choices));

  auto exact = min_winning_distance(game, sigma, GameMetric::DStar, budget);
  if (is_winning(game, tau)) {
    auto d = dstar(game, tau, sigma, budget);
    if (d == exact.distance) return {tau, d, true};
  }
  return {exact.strategy, exact.distance, false};
}

MinDStar min_dstar_winning_strategy_acyclic(const ReachabilityGame& game,
                                            const MDStrategy& sigma) {
  SearchBudget budget;
  return min_dstar_winning_strategy_acyclic(game, sigma, budget);
}

// ---------------------------------------------------------------------------

void enumerate_strategies(const ReachabilityGame& game, const MDStrategy& sigma,
                          const StrategyEnumeration& config, SearchBudget& budget,
                          const std::function<bool(const std::vector<std::size_t>&)>& prune,
                          const std::function<bool(const MDStrategy&)>& visit) {
  const auto n = game.num_vertices();
  const auto player = config.player;
  auto options = [&](std::size_t v) {
    std::vector<std::size_t> out;
    if (!config.allowed.empty() && !config.allowed[v].empty())
      out = config.allowed[v];
    else
      out.assign(game.successors(v).begin(), game.successors(v).end());
    auto it = std::find(out.begin(), out.end(), sigma(v));
    if (it != out.end()) std::rotate(out.begin(), it, it + 1);
    return out;
  };
  std::vector<std::size_t> partial(n, kNone);
  const bool has_blocked = config.blocked.universe() == n && !config.blocked.empty();

  std::function<bool()> search = [&]() -> bool {
    budget.charge();
    auto reached = reachable_set(partial_adjacency(game, player, partial), game.initial(),
                                 IndexSet(n));
    if (has_blocked && reached.intersects(config.blocked)) return true;
    if (prune && prune(partial)) return true;
    std::size_t next = kNone;
    for (auto v : reached.members())
      if (game.owned_by(v, player) && partial[v] == kNone) {
        next = v;
        break;
      }
    if (next == kNone) {
      auto choices = completed(sigma, partial);
      if (!config.unreached_choice.empty())
        for (std::size_t v = 0; v < n; ++v)
          if (partial[v] == kNone && config.unreached_choice[v] != kNone)
            choices[v] = config.unreached_choice[v];
      return visit(MDStrategy(game, player, std::move(choices)));
    }
    for (auto u : options(next)) {
      partial[next] = u;
      bool go_on = search();
      partial[next] = kNone;
      if (!go_on) return false;
    }
    return true;
  };
  search();
}

}  // namespace causekit

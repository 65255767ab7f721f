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

#include "causekit/distances.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <unordered_set>

namespace causekit {

// ---------------------------------------------------------------------------
// Distance

Distance::Distance(double value) : value_(value) {
  if (!(value >= 0.0)) throw std::invalid_argument("distance must be non-negative");
}

Distance Distance::infinity() { return Distance(std::numeric_limits<double>::infinity()); }

Distance Distance::power_of_two(int exponent) { return Distance(std::ldexp(1.0, exponent)); }

bool Distance::is_infinite() const { return std::isinf(value_); }

Distance Distance::operator+(const Distance& other) const { return Distance(value_ + other.value_); }

std::string Distance::to_string() const {
  if (is_infinite()) return "inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value_);
  return std::string(buf, end);
}

// ---------------------------------------------------------------------------
// Edit sequences

EditSymbol::EditSymbol(std::optional<Symbol> left, std::optional<Symbol> right)
    : left_(left), right_(right) {
  if (!left_ && !right_) throw std::invalid_argument("(eps, eps) is not an edit symbol");
}

std::size_t EditSequence::weight() const {
  return static_cast<std::size_t>(
      std::count_if(symbols_.begin(), symbols_.end(), [](const auto& s) { return !s.is_match(); }));
}

Word EditSequence::left_projection() const {
  Word w;
  for (const auto& s : symbols_)
    if (s.left()) w.push_back(*s.left());
  return w;
}

Word EditSequence::right_projection() const {
  Word w;
  for (const auto& s : symbols_)
    if (s.right()) w.push_back(*s.right());
  return w;
}

bool EditSequence::is_edit_sequence_for(std::span<const Symbol> u,
                                        std::span<const Symbol> v) const {
  auto l = left_projection();
  auto r = right_projection();
  return std::equal(l.begin(), l.end(), u.begin(), u.end()) &&
         std::equal(r.begin(), r.end(), v.begin(), v.end());
}

// ---------------------------------------------------------------------------
// Trace distances

namespace {

template <typename T>
Distance prefix_distance(std::span<const T> u, std::span<const T> v) {
  if (std::equal(u.begin(), u.end(), v.begin(), v.end())) return Distance(0.0);
  auto [iu, iv] = std::mismatch(u.begin(), u.end(), v.begin(), v.end());
  return Distance::power_of_two(-static_cast<int>(iu - u.begin()));
}

}  // namespace

Distance d_pref_ap(std::span<const Symbol> u, std::span<const Symbol> v) {
  return prefix_distance(u, v);
}

Distance d_pref(std::span<const std::size_t> p, std::span<const std::size_t> q) {
  return prefix_distance(p, q);
}

Distance d_hamm(std::span<const Symbol> u, std::span<const Symbol> v) {
  if (u.size() != v.size())
    throw LengthMismatch("Hamming distance needs words of equal length (" +
                         std::to_string(u.size()) + " vs " + std::to_string(v.size()) + ")");
  std::size_t n = 0;
  for (std::size_t i = 0; i < u.size(); ++i) n += u[i] != v[i];
  return Distance(static_cast<double>(n));
}

Distance d_hamm_weighted(std::span<const Symbol> u, std::span<const Symbol> v,
                         const LabelMetric& metric) {
  if (u.size() != v.size())
    throw LengthMismatch("weighted Hamming distance needs words of equal length");
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += metric(u[i], v[i]);
  return Distance(sum);
}

Distance d_ghamm(std::span<const Symbol> u, std::span<const Symbol> v) {
  if (u.size() > v.size()) std::swap(u, v);
  auto prefix = d_hamm(u, v.first(u.size()));
  return prefix + Distance(static_cast<double>(v.size() - u.size()));
}

LevenshteinResult d_lev(std::span<const Symbol> u, std::span<const Symbol> v) {
  const auto n = u.size();
  const auto m = v.size();
  std::vector<std::vector<std::size_t>> cost(n + 1, std::vector<std::size_t>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) cost[i][0] = i;
  for (std::size_t j = 0; j <= m; ++j) cost[0][j] = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      cost[i][j] = std::min({cost[i - 1][j - 1] + (u[i - 1] != v[j - 1]), cost[i - 1][j] + 1,
                             cost[i][j - 1] + 1});
    }
  }

  std::vector<EditSymbol> rev;
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && cost[i][j] == cost[i - 1][j - 1] + (u[i - 1] != v[j - 1])) {
      rev.emplace_back(u[i - 1], v[j - 1]);
      --i;
      --j;
    } else if (i > 0 && cost[i][j] == cost[i - 1][j] + 1) {
      rev.emplace_back(u[i - 1], std::nullopt);
      --i;
    } else {
      rev.emplace_back(std::nullopt, v[j - 1]);
      --j;
    }
  }
  std::reverse(rev.begin(), rev.end());
  return {Distance(static_cast<double>(cost[n][m])), EditSequence(std::move(rev))};
}

// ---------------------------------------------------------------------------
// Strategy distances

namespace {

void require_same_player(const MDStrategy& a, const MDStrategy& b) {
  if (a.player() != b.player())
    throw PreconditionViolated("strategies belong to different players");
}

Adjacency strategy_graph(const ReachabilityGame& game, const MDStrategy& s) {
  Adjacency adj(game.num_vertices());
  for (std::size_t v = 0; v < game.num_vertices(); ++v) {
    if (game.owned_by(v, s.player()))
      adj[v] = {s(v)};
    else
      adj[v].assign(game.successors(v).begin(), game.successors(v).end());
  }
  return adj;
}

IndexSet disagreement(const ReachabilityGame& game, const MDStrategy& a, const MDStrategy& b) {
  IndexSet d(game.num_vertices());
  for (auto v : game.owned_vertices(a.player()))
    if (a(v) != b(v)) d.insert(v);
  return d;
}

}  // namespace

Distance d_pref_hausdorff(const ReachabilityGame& game, const MDStrategy& sigma,
                          const MDStrategy& tau) {
  require_same_player(sigma, tau);
  const auto player = sigma.player();
  // Common graph: owned vertices keep the shared choice, disagreement
  // vertices are dead ends. The nearest disagreement vertex at BFS depth j
  // gives a play prefix of length j + 2 that only one strategy realises.
  Adjacency common(game.num_vertices());
  for (std::size_t v = 0; v < game.num_vertices(); ++v) {
    if (game.owned_by(v, player)) {
      if (sigma(v) == tau(v)) common[v] = {sigma(v)};
    } else {
      common[v].assign(game.successors(v).begin(), game.successors(v).end());
    }
  }
  auto depth = bfs_depths(common, game.initial());
  std::size_t best = kNone;
  for (auto v : game.owned_vertices(player)) {
    if (sigma(v) != tau(v) && depth[v] != kNone) best = std::min(best, depth[v]);
  }
  if (best == kNone) return Distance(0.0);
  return Distance::power_of_two(-static_cast<int>(best + 1));
}

std::size_t d_hamm_s(const ReachabilityGame& game, const MDStrategy& sigma, const MDStrategy& tau) {
  require_same_player(sigma, tau);
  return disagreement(game, sigma, tau).size();
}

std::size_t play_dist(const ReachabilityGame& game, const Play& play, const MDStrategy& sigma) {
  validate_play(game, play);
  std::vector<std::size_t> seq(play.stem);
  seq.insert(seq.end(), play.cycle.begin(), play.cycle.end());
  if (!play.is_finite()) seq.push_back(play.cycle.front());
  IndexSet hits(game.num_vertices());
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    auto v = seq[i];
    if (game.owned_by(v, sigma.player()) && sigma(v) != seq[i + 1]) hits.insert(v);
  }
  return hits.size();
}

std::size_t max_marked_on_walks(const Adjacency& adj, std::size_t from, const IndexSet& marked,
                                SearchBudget& budget) {
  const auto n = adj.size();
  // Only marked vertices reachable from `from` can ever be counted.
  auto reach = reachable_set(adj, from, IndexSet(n));
  std::vector<std::size_t> bit(n, kNone);
  std::size_t k = 0;
  for (std::size_t v = 0; v < n; ++v)
    if (marked.contains(v) && reach.contains(v)) bit[v] = k++;
  if (k == 0) return 0;
  if (k > 63) throw BudgetExceeded("more than 63 marked vertices in a walk search");

  auto with = [&](std::uint64_t mask, std::size_t v) {
    return bit[v] == kNone ? mask : (mask | (std::uint64_t{1} << bit[v]));
  };
  std::vector<std::unordered_set<std::uint64_t>> seen(n);
  std::vector<std::pair<std::size_t, std::uint64_t>> stack;
  auto start = with(0, from);
  seen[from].insert(start);
  stack.emplace_back(from, start);
  std::size_t best = static_cast<std::size_t>(std::popcount(start));
  while (!stack.empty() && best < k) {
    auto [v, mask] = stack.back();
    stack.pop_back();
    budget.charge();
    for (auto w : adj[v]) {
      auto next = with(mask, w);
      if (!seen[w].insert(next).second) continue;
      best = std::max(best, static_cast<std::size_t>(std::popcount(next)));
      stack.emplace_back(w, next);
    }
  }
  return best;
}

std::size_t dstrat(const ReachabilityGame& game, const MDStrategy& tau, const MDStrategy& sigma,
                   SearchBudget& budget) {
  require_same_player(tau, sigma);
  // On a tau-play the move at an owned vertex v is tau(v), so it contradicts
  // sigma exactly at the disagreement vertices.
  return max_marked_on_walks(strategy_graph(game, tau), game.initial(),
                             disagreement(game, tau, sigma), budget);
}

std::size_t dstrat(const ReachabilityGame& game, const MDStrategy& tau, const MDStrategy& sigma) {
  SearchBudget budget;
  return dstrat(game, tau, sigma, budget);
}

std::size_t dstar(const ReachabilityGame& game, const MDStrategy& tau, const MDStrategy& sigma,
                  SearchBudget& budget) {
  return std::max(dstrat(game, tau, sigma, budget), dstrat(game, sigma, tau, budget));
}

std::size_t dstar(const ReachabilityGame& game, const MDStrategy& tau, const MDStrategy& sigma) {
  SearchBudget budget;
  return dstar(game, tau, sigma, budget);
}

}  // namespace causekit

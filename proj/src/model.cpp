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

#include "causekit/model.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>
#include <unordered_set>

#include "causekit/errors.hpp"

namespace causekit {

// ---------------------------------------------------------------------------
// IndexSet

IndexSet::IndexSet(std::size_t universe, std::initializer_list<std::size_t> members)
    : bits_(universe, 0) {
  for (auto m : members) insert(m);
}

IndexSet::IndexSet(std::size_t universe, std::span<const std::size_t> members)
    : bits_(universe, 0) {
  for (auto m : members) insert(m);
}

IndexSet IndexSet::full(std::size_t universe) {
  IndexSet s(universe);
  std::fill(s.bits_.begin(), s.bits_.end(), 1);
  return s;
}

void IndexSet::insert(std::size_t i) {
  if (i >= bits_.size()) throw std::out_of_range("IndexSet::insert: index out of universe");
  bits_[i] = 1;
}

void IndexSet::erase(std::size_t i) {
  if (i < bits_.size()) bits_[i] = 0;
}

std::size_t IndexSet::size() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::vector<std::size_t> IndexSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) out.push_back(i);
  return out;
}

IndexSet IndexSet::united(const IndexSet& other) const {
  IndexSet out(std::max(universe(), other.universe()));
  for (std::size_t i = 0; i < out.universe(); ++i)
    if (contains(i) || other.contains(i)) out.bits_[i] = 1;
  return out;
}

IndexSet IndexSet::complement() const {
  IndexSet out(universe());
  for (std::size_t i = 0; i < universe(); ++i) out.bits_[i] = bits_[i] ? 0 : 1;
  return out;
}

bool IndexSet::intersects(const IndexSet& other) const {
  const auto n = std::min(universe(), other.universe());
  for (std::size_t i = 0; i < n; ++i)
    if (bits_[i] && other.bits_[i]) return true;
  return false;
}

bool IndexSet::subset_of(const IndexSet& other) const {
  for (std::size_t i = 0; i < universe(); ++i)
    if (bits_[i] && !other.contains(i)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void check_ids(const std::vector<std::string>& ids, const char* what) {
  if (ids.empty()) throw InvalidModel(std::string("model has no ") + what);
  std::unordered_set<std::string> seen;
  for (const auto& id : ids) {
    if (id.empty()) throw InvalidModel(std::string("empty ") + what + " id");
    if (!seen.insert(id).second) throw InvalidModel("duplicate id '" + id + "'");
  }
}

Adjacency build_adjacency(std::size_t n,
                          const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Adjacency adj(n);
  for (auto [from, to] : edges) adj[from].push_back(to);
  for (auto& succ : adj) {
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
  }
  return adj;
}

std::unordered_map<std::string, std::size_t> build_index(const std::vector<std::string>& ids) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < ids.size(); ++i) index.emplace(ids[i], i);
  return index;
}

}  // namespace

void validate_model(const TsData& data) {
  check_ids(data.ids, "state");
  const auto n = data.ids.size();
  if (data.alphabet.empty()) throw InvalidModel("alphabet is empty");
  std::set<std::string> symbols(data.alphabet.begin(), data.alphabet.end());
  if (symbols.size() != data.alphabet.size()) throw InvalidModel("alphabet has duplicate symbols");
  if (data.initial >= n) throw InvalidModel("initial state is not a state");
  if (data.labels.size() != n) throw InvalidModel("labeling is not total");
  for (std::size_t s = 0; s < n; ++s) {
    if (data.labels[s] >= data.alphabet.size())
      throw InvalidModel("label of state '" + data.ids[s] + "' is not in the alphabet");
  }
  for (auto [from, to] : data.transitions) {
    if (from >= n || to >= n) throw InvalidModel("transition endpoint is not a state");
  }
}

void validate_model(const GameData& data) {
  check_ids(data.ids, "vertex");
  const auto n = data.ids.size();
  if (data.owners.size() != n) throw InvalidModel("vertex partition is not exact");
  if (data.initial >= n) throw InvalidModel("initial vertex is not a vertex");
  if (data.owners[data.initial] == Owner::Effect)
    throw InvalidModel("initial vertex is an effect vertex");
  std::vector<std::size_t> out_degree(n, 0);
  for (auto [from, to] : data.edges) {
    if (from >= n || to >= n) throw InvalidModel("edge endpoint is not a vertex");
    ++out_degree[from];
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (data.owners[v] == Owner::Effect && out_degree[v] > 0)
      throw InvalidModel("effect vertex '" + data.ids[v] + "' has an outgoing edge");
    if (data.owners[v] != Owner::Effect && out_degree[v] == 0)
      throw InvalidModel("non-effect vertex '" + data.ids[v] + "' has no outgoing edge");
  }
}

// ---------------------------------------------------------------------------
// TransitionSystem

TransitionSystem::TransitionSystem(TsData data) {
  validate_model(data);
  alphabet_ = std::move(data.alphabet);
  ids_ = std::move(data.ids);
  labels_ = std::move(data.labels);
  initial_ = data.initial;
  succ_ = build_adjacency(ids_.size(), data.transitions);
  index_ = build_index(ids_);
}

std::size_t TransitionSystem::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw InvalidModel("unknown state '" + std::string(id) + "'");
  return it->second;
}

bool TransitionSystem::has_state(std::string_view id) const {
  return index_.count(std::string(id)) > 0;
}

Word TransitionSystem::trace(std::span<const std::size_t> path) const {
  Word w;
  w.reserve(path.size());
  for (auto s : path) w.push_back(labels_[s]);
  return w;
}

TsData TransitionSystem::data() const {
  TsData d{alphabet_, ids_, labels_, initial_, {}};
  for (std::size_t s = 0; s < succ_.size(); ++s)
    for (auto t : succ_[s]) d.transitions.emplace_back(s, t);
  return d;
}

bool MaximalFinitePath::visits(const IndexSet& set) const {
  return std::any_of(states_.begin(), states_.end(), [&](auto s) { return set.contains(s); });
}

MaximalFinitePath validate_maximal_path(const TransitionSystem& ts,
                                        std::span<const std::size_t> sequence) {
  if (sequence.empty()) throw NotAPath("path is empty");
  for (auto s : sequence)
    if (s >= ts.num_states()) throw NotAPath("path mentions an unknown state");
  if (sequence.front() != ts.initial()) throw NotAPath("path does not start at the initial state");
  for (std::size_t i = 0; i + 1 < sequence.size(); ++i) {
    auto succ = ts.successors(sequence[i]);
    if (!std::binary_search(succ.begin(), succ.end(), sequence[i + 1])) {
      throw NotAPath("no transition from '" + ts.id(sequence[i]) + "' to '" +
                     ts.id(sequence[i + 1]) + "'");
    }
  }
  if (!ts.is_terminal(sequence.back()))
    throw NotMaximal("path ends in non-terminal state '" + ts.id(sequence.back()) + "'");
  return MaximalFinitePath({sequence.begin(), sequence.end()});
}

IndexSet maximal_avoiding_region(const TransitionSystem& ts, const IndexSet& avoid) {
  const auto n = ts.num_states();
  // Start from everything outside `avoid` and peel off states whose every
  // successor has been removed.
  IndexSet good = IndexSet::full(n);
  for (std::size_t s = 0; s < n; ++s)
    if (avoid.contains(s)) good.erase(s);

  std::vector<std::size_t> live(n, 0);
  Adjacency pred(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (auto t : ts.successors(s)) {
      pred[t].push_back(s);
      if (good.contains(t)) ++live[s];
    }
  }
  std::deque<std::size_t> work;
  for (std::size_t s = 0; s < n; ++s)
    if (good.contains(s) && !ts.is_terminal(s) && live[s] == 0) work.push_back(s);
  while (!work.empty()) {
    auto s = work.front();
    work.pop_front();
    if (!good.contains(s)) continue;
    good.erase(s);
    for (auto p : pred[s]) {
      if (good.contains(p) && --live[p] == 0) work.push_back(p);
    }
  }
  return good;
}

bool exists_maximal_path_avoiding(const TransitionSystem& ts, std::size_t from,
                                  const IndexSet& avoid) {
  return maximal_avoiding_region(ts, avoid).contains(from);
}

bool exists_path_reaching_avoiding(const TransitionSystem& ts, std::size_t from,
                                   const IndexSet& target, const IndexSet& avoid) {
  auto seen = reachable_set(ts.adjacency(), from, avoid);
  for (std::size_t s = 0; s < ts.num_states(); ++s)
    if (seen.contains(s) && target.contains(s)) return true;
  return false;
}

bool is_acyclic(const TransitionSystem& ts) {
  // Kahn's algorithm over the whole state space.
  const auto n = ts.num_states();
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t s = 0; s < n; ++s)
    for (auto t : ts.successors(s)) ++indeg[t];
  std::vector<std::size_t> work;
  for (std::size_t s = 0; s < n; ++s)
    if (indeg[s] == 0) work.push_back(s);
  std::size_t seen = 0;
  while (!work.empty()) {
    auto s = work.back();
    work.pop_back();
    ++seen;
    for (auto t : ts.successors(s))
      if (--indeg[t] == 0) work.push_back(t);
  }
  return seen == n;
}

// ---------------------------------------------------------------------------
// ReachabilityGame

std::string_view to_string(Player p) { return p == Player::Reach ? "reach" : "safe"; }

std::string_view to_string(Owner o) {
  switch (o) {
    case Owner::Reach: return "reach";
    case Owner::Safe: return "safe";
    case Owner::Effect: return "effect";
  }
  return "?";
}

ReachabilityGame::ReachabilityGame(GameData data) {
  validate_model(data);
  ids_ = std::move(data.ids);
  owners_ = std::move(data.owners);
  initial_ = data.initial;
  succ_ = build_adjacency(ids_.size(), data.edges);
  index_ = build_index(ids_);
}

bool ReachabilityGame::has_edge(std::size_t from, std::size_t to) const {
  return std::binary_search(succ_[from].begin(), succ_[from].end(), to);
}

bool ReachabilityGame::is_sink(std::size_t v) const {
  return succ_[v].size() == 1 && succ_[v][0] == v;
}

std::size_t ReachabilityGame::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) throw InvalidModel("unknown vertex '" + std::string(id) + "'");
  return it->second;
}

bool ReachabilityGame::has_vertex(std::string_view id) const {
  return index_.count(std::string(id)) > 0;
}

std::vector<std::size_t> ReachabilityGame::owned_vertices(Player p) const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < owners_.size(); ++v)
    if (owned_by(v, p)) out.push_back(v);
  return out;
}

IndexSet ReachabilityGame::effect_set() const {
  IndexSet s(num_vertices());
  for (std::size_t v = 0; v < owners_.size(); ++v)
    if (is_effect(v)) s.insert(v);
  return s;
}

GameData ReachabilityGame::data() const {
  GameData d{ids_, owners_, initial_, {}};
  for (std::size_t v = 0; v < succ_.size(); ++v)
    for (auto w : succ_[v]) d.edges.emplace_back(v, w);
  return d;
}

MDStrategy::MDStrategy(const ReachabilityGame& game, Player player,
                       std::vector<std::size_t> choices)
    : player_(player), choices_(std::move(choices)) {
  if (choices_.size() != game.num_vertices())
    throw InvalidModel("strategy size does not match the game");
  for (std::size_t v = 0; v < game.num_vertices(); ++v) {
    if (game.owned_by(v, player)) {
      if (choices_[v] == kNone)
        throw InvalidModel("strategy has no choice at owned vertex '" + game.id(v) + "'");
      if (!game.has_edge(v, choices_[v]))
        throw InvalidModel("strategy choice at '" + game.id(v) + "' is not a successor");
    } else if (choices_[v] != kNone) {
      throw InvalidModel("strategy chooses at vertex '" + game.id(v) + "' it does not own");
    }
  }
}

MDStrategy first_choice_strategy(const ReachabilityGame& game, Player player) {
  std::vector<std::size_t> choices(game.num_vertices(), kNone);
  for (auto v : game.owned_vertices(player)) choices[v] = game.successors(v).front();
  return MDStrategy(game, player, std::move(choices));
}

void validate_play(const ReachabilityGame& game, const Play& play) {
  if (play.stem.empty()) throw NotAPath("play has an empty stem");
  if (play.stem.front() != game.initial()) throw NotAPath("play does not start at the initial vertex");
  std::vector<std::size_t> seq(play.stem);
  seq.insert(seq.end(), play.cycle.begin(), play.cycle.end());
  for (auto v : seq)
    if (v >= game.num_vertices()) throw NotAPath("play mentions an unknown vertex");
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (!game.has_edge(seq[i], seq[i + 1]))
      throw NotAPath("no edge from '" + game.id(seq[i]) + "' to '" + game.id(seq[i + 1]) + "'");
  }
  if (play.is_finite()) {
    if (!game.is_effect(seq.back())) throw NotAPath("finite play does not end in an effect vertex");
  } else if (!game.has_edge(play.cycle.back(), play.cycle.front())) {
    throw NotAPath("play cycle is not closed by an edge");
  }
}

ReachabilityGame restrict_game(const ReachabilityGame& game, const MDStrategy& strategy) {
  GameData d = game.data();
  std::erase_if(d.edges, [&](const auto& e) {
    return game.owned_by(e.first, strategy.player()) && strategy(e.first) != e.second;
  });
  return ReachabilityGame(std::move(d));
}

bool is_acyclic_modulo_sinks(const ReachabilityGame& game) {
  const auto n = game.num_vertices();
  Adjacency adj(n);
  for (std::size_t v = 0; v < n; ++v)
    if (!game.is_sink(v)) adj[v].assign(game.successors(v).begin(), game.successors(v).end());
  IndexSet all = IndexSet::full(n);
  for (std::size_t v = 0; v < n; ++v)
    if (reaches_cycle(adj, v, all)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Digraph helpers

IndexSet reachable_set(const Adjacency& adj, std::size_t from, const IndexSet& blocked) {
  IndexSet seen(adj.size());
  if (blocked.contains(from)) return seen;
  std::vector<std::size_t> stack{from};
  seen.insert(from);
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v]) {
      if (seen.contains(w) || blocked.contains(w)) continue;
      seen.insert(w);
      stack.push_back(w);
    }
  }
  return seen;
}

std::vector<std::size_t> bfs_depths(const Adjacency& adj, std::size_t from) {
  std::vector<std::size_t> depth(adj.size(), kNone);
  std::deque<std::size_t> queue{from};
  depth[from] = 0;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto w : adj[v]) {
      if (depth[w] != kNone) continue;
      depth[w] = depth[v] + 1;
      queue.push_back(w);
    }
  }
  return depth;
}

bool reaches_cycle(const Adjacency& adj, std::size_t from, const IndexSet& within) {
  if (!within.contains(from)) return false;
  // Iterative DFS with white/grey/black colouring.
  enum : char { kWhite, kGrey, kBlack };
  std::vector<char> colour(adj.size(), kWhite);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{from, 0}};
  colour[from] = kGrey;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < adj[v].size()) {
      auto w = adj[v][next++];
      if (!within.contains(w)) continue;
      if (colour[w] == kGrey) return true;
      if (colour[w] == kWhite) {
        colour[w] = kGrey;
        stack.emplace_back(w, 0);
      }
    } else {
      colour[v] = kBlack;
      stack.pop_back();
    }
  }
  return false;
}

}  // namespace causekit

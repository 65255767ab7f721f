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

// Explicit-state transition systems and two-player reachability games.
//
// States and vertices carry opaque string ids for file I/O, but every
// algorithm works on dense indices [0, n). Models are validated on
// construction and immutable afterwards.

#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace causekit {

/// Index of a label in a model's alphabet.
using Symbol = std::size_t;
using Word = std::vector<Symbol>;
using Adjacency = std::vector<std::vector<std::size_t>>;

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// Subset of a fixed index universe [0, universe).
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : bits_(universe, 0) {}
  IndexSet(std::size_t universe, std::initializer_list<std::size_t> members);
  IndexSet(std::size_t universe, std::span<const std::size_t> members);

  static IndexSet full(std::size_t universe);

  bool contains(std::size_t i) const { return i < bits_.size() && bits_[i] != 0; }
  void insert(std::size_t i);
  void erase(std::size_t i);

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  std::vector<std::size_t> members() const;

  IndexSet united(const IndexSet& other) const;
  IndexSet complement() const;
  bool intersects(const IndexSet& other) const;
  bool subset_of(const IndexSet& other) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<char> bits_;
};

// ---------------------------------------------------------------------------
// Transition systems

/// Raw, unvalidated transition system description.
struct TsData {
  std::vector<std::string> alphabet;
  std::vector<std::string> ids;
  std::vector<Symbol> labels;
  std::size_t initial = 0;
  std::vector<std::pair<std::size_t, std::size_t>> transitions;
};

/// T = (S, s_init, ->, L) with labels drawn from a finite alphabet.
class TransitionSystem {
 public:
  explicit TransitionSystem(TsData data);

  std::size_t num_states() const { return ids_.size(); }
  std::size_t initial() const { return initial_; }
  std::span<const std::size_t> successors(std::size_t s) const { return succ_[s]; }
  const Adjacency& adjacency() const { return succ_; }
  bool is_terminal(std::size_t s) const { return succ_[s].empty(); }
  Symbol label(std::size_t s) const { return labels_[s]; }
  const std::string& id(std::size_t s) const { return ids_[s]; }
  const std::vector<std::string>& alphabet() const { return alphabet_; }
  const std::vector<std::string>& ids() const { return ids_; }

  /// Index of the state with the given id; throws InvalidModel if absent.
  std::size_t index_of(std::string_view id) const;
  bool has_state(std::string_view id) const;

  Word trace(std::span<const std::size_t> path) const;
  TsData data() const;

 private:
  std::vector<std::string> alphabet_;
  std::vector<std::string> ids_;
  std::vector<Symbol> labels_;
  std::size_t initial_;
  Adjacency succ_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// A finite path from the initial state that ends in a terminal state.
class MaximalFinitePath {
 public:
  const std::vector<std::size_t>& states() const { return states_; }
  std::size_t length() const { return states_.size(); }
  std::size_t operator[](std::size_t i) const { return states_[i]; }
  bool visits(const IndexSet& set) const;

 private:
  friend MaximalFinitePath validate_maximal_path(const TransitionSystem&,
                                                 std::span<const std::size_t>);
  explicit MaximalFinitePath(std::vector<std::size_t> states) : states_(std::move(states)) {}
  std::vector<std::size_t> states_;
};

/// Throws NotAPath on broken initiality/adjacency and NotMaximal when the last
/// state still has successors.
MaximalFinitePath validate_maximal_path(const TransitionSystem& ts,
                                        std::span<const std::size_t> sequence);

/// Greatest fixpoint: s qualifies iff s is not avoided and s is terminal or
/// has a qualifying successor. The result is the set of states from which a
/// maximal path (finite or infinite) never visits `avoid`.
IndexSet maximal_avoiding_region(const TransitionSystem& ts, const IndexSet& avoid);

bool exists_maximal_path_avoiding(const TransitionSystem& ts, std::size_t from,
                                  const IndexSet& avoid);

/// Plain reachability of `target` inside states \ avoid (from itself included).
bool exists_path_reaching_avoiding(const TransitionSystem& ts, std::size_t from,
                                   const IndexSet& target, const IndexSet& avoid);

bool is_acyclic(const TransitionSystem& ts);

// ---------------------------------------------------------------------------
// Reachability games

enum class Player { Reach, Safe };
enum class Owner { Reach, Safe, Effect };

constexpr Player opponent(Player p) { return p == Player::Reach ? Player::Safe : Player::Reach; }
constexpr bool owned_by(Owner o, Player p) {
  return (o == Owner::Reach && p == Player::Reach) || (o == Owner::Safe && p == Player::Safe);
}
std::string_view to_string(Player p);
std::string_view to_string(Owner o);

struct GameData {
  std::vector<std::string> ids;
  std::vector<Owner> owners;
  std::size_t initial = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// G = (V, v_i, Delta) with V = V_Reach + V_Safe + V_Eff.
class ReachabilityGame {
 public:
  explicit ReachabilityGame(GameData data);

  std::size_t num_vertices() const { return ids_.size(); }
  std::size_t initial() const { return initial_; }
  Owner owner(std::size_t v) const { return owners_[v]; }
  const std::vector<Owner>& owners() const { return owners_; }
  bool is_effect(std::size_t v) const { return owners_[v] == Owner::Effect; }
  bool owned_by(std::size_t v, Player p) const { return causekit::owned_by(owners_[v], p); }
  std::span<const std::size_t> successors(std::size_t v) const { return succ_[v]; }
  const Adjacency& adjacency() const { return succ_; }
  bool has_edge(std::size_t from, std::size_t to) const;
  /// A non-effect vertex whose only outgoing edge is a self-loop.
  bool is_sink(std::size_t v) const;

  const std::string& id(std::size_t v) const { return ids_[v]; }
  const std::vector<std::string>& ids() const { return ids_; }
  std::size_t index_of(std::string_view id) const;
  bool has_vertex(std::string_view id) const;

  std::vector<std::size_t> owned_vertices(Player p) const;
  IndexSet effect_set() const;
  GameData data() const;

 private:
  std::vector<std::string> ids_;
  std::vector<Owner> owners_;
  std::size_t initial_;
  Adjacency succ_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Memoryless deterministic strategy: one successor per owned vertex,
/// kNone everywhere else.
class MDStrategy {
 public:
  MDStrategy(const ReachabilityGame& game, Player player, std::vector<std::size_t> choices);

  Player player() const { return player_; }
  std::size_t operator()(std::size_t v) const { return choices_[v]; }
  const std::vector<std::size_t>& choices() const { return choices_; }

  friend bool operator==(const MDStrategy&, const MDStrategy&) = default;

 private:
  Player player_;
  std::vector<std::size_t> choices_;
};

/// Strategy that picks the first (lowest-index) successor everywhere.
MDStrategy first_choice_strategy(const ReachabilityGame& game, Player player);

/// stem . cycle^omega; finite (ending in an effect vertex) iff cycle is empty.
struct Play {
  std::vector<std::size_t> stem;
  std::vector<std::size_t> cycle;

  bool is_finite() const { return cycle.empty(); }
  friend bool operator==(const Play&, const Play&) = default;
};

/// Throws NotAPath if the play is not a play of the game.
void validate_play(const ReachabilityGame& game, const Play& play);

/// G^sigma: edges from owned vertices not chosen by sigma are removed.
ReachabilityGame restrict_game(const ReachabilityGame& game, const MDStrategy& strategy);

/// Acyclic apart from self-loops on sink vertices.
bool is_acyclic_modulo_sinks(const ReachabilityGame& game);

// ---------------------------------------------------------------------------
// Validation

/// Throws InvalidModel naming the first violated invariant.
void validate_model(const TsData& data);
void validate_model(const GameData& data);

// ---------------------------------------------------------------------------
// Plain digraph helpers shared by the checkers.

/// States reachable from `from` without entering `blocked` (from itself is
/// excluded entirely when blocked).
IndexSet reachable_set(const Adjacency& adj, std::size_t from, const IndexSet& blocked);

/// BFS distances from `from`; kNone for unreachable vertices.
std::vector<std::size_t> bfs_depths(const Adjacency& adj, std::size_t from);

/// True iff a cycle is reachable from `from` inside the vertices allowed by
/// `within`.
bool reaches_cycle(const Adjacency& adj, std::size_t from, const IndexSet& within);

}  // namespace causekit

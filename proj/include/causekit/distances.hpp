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

// Distances between traces, paths and memoryless strategies.

#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causekit/errors.hpp"
#include "causekit/model.hpp"

namespace causekit {

/// Non-negative distance value or +infinity.
class Distance {
 public:
  constexpr Distance() = default;
  explicit Distance(double value);

  static Distance infinity();
  /// 2^exponent.
  static Distance power_of_two(int exponent);

  double value() const { return value_; }
  bool is_infinite() const;

  Distance operator+(const Distance& other) const;
  friend auto operator<=>(const Distance&, const Distance&) = default;

  /// Shortest round-trip decimal, or "inf".
  std::string to_string() const;

 private:
  double value_ = 0.0;
};

/// Element of the edit alphabet (Sigma + eps)^2 \ {(eps, eps)}; an empty
/// optional stands for eps.
class EditSymbol {
 public:
  EditSymbol(std::optional<Symbol> left, std::optional<Symbol> right);

  const std::optional<Symbol>& left() const { return left_; }
  const std::optional<Symbol>& right() const { return right_; }
  /// (s, s) for some letter s.
  bool is_match() const { return left_ && right_ && *left_ == *right_; }

  friend bool operator==(const EditSymbol&, const EditSymbol&) = default;

 private:
  std::optional<Symbol> left_;
  std::optional<Symbol> right_;
};

class EditSequence {
 public:
  EditSequence() = default;
  explicit EditSequence(std::vector<EditSymbol> symbols) : symbols_(std::move(symbols)) {}

  const std::vector<EditSymbol>& symbols() const { return symbols_; }
  /// Number of non-matching symbols.
  std::size_t weight() const;
  Word left_projection() const;
  Word right_projection() const;
  /// True iff the projections (with eps removed) are exactly u and v.
  bool is_edit_sequence_for(std::span<const Symbol> u, std::span<const Symbol> v) const;

 private:
  std::vector<EditSymbol> symbols_;
};

struct LevenshteinResult {
  Distance distance;
  EditSequence witness;
};

using LabelMetric = std::function<double(Symbol, Symbol)>;

// -- trace and path distances ------------------------------------------------

/// 2^-n for the longest common prefix length n; 0 for identical words.
Distance d_pref_ap(std::span<const Symbol> u, std::span<const Symbol> v);
/// Same as d_pref_ap, comparing state sequences instead of traces.
Distance d_pref(std::span<const std::size_t> p, std::span<const std::size_t> q);
/// Throws LengthMismatch unless |u| = |v|.
Distance d_hamm(std::span<const Symbol> u, std::span<const Symbol> v);
Distance d_hamm_weighted(std::span<const Symbol> u, std::span<const Symbol> v,
                         const LabelMetric& metric);
Distance d_ghamm(std::span<const Symbol> u, std::span<const Symbol> v);
LevenshteinResult d_lev(std::span<const Symbol> u, std::span<const Symbol> v);

// -- strategy distances ------------------------------------------------------
// All of them require both strategies to belong to the same player
// (PreconditionViolated otherwise).

/// Hausdorff lifting of d_pref to the play sets of two MD strategies.
Distance d_pref_hausdorff(const ReachabilityGame& game, const MDStrategy& sigma,
                          const MDStrategy& tau);

/// Number of owned vertices where the strategies choose differently.
std::size_t d_hamm_s(const ReachabilityGame& game, const MDStrategy& sigma, const MDStrategy& tau);

/// Number of distinct owned vertices on the play where the play's move is not
/// the strategy's choice.
std::size_t play_dist(const ReachabilityGame& game, const Play& play, const MDStrategy& sigma);

/// sup over tau-plays rho of play_dist(rho, sigma).
std::size_t dstrat(const ReachabilityGame& game, const MDStrategy& tau, const MDStrategy& sigma,
                   SearchBudget& budget);
std::size_t dstrat(const ReachabilityGame& game, const MDStrategy& tau, const MDStrategy& sigma);

/// max(dstrat(tau, sigma), dstrat(sigma, tau)).
std::size_t dstar(const ReachabilityGame& game, const MDStrategy& tau, const MDStrategy& sigma,
                  SearchBudget& budget);
std::size_t dstar(const ReachabilityGame& game, const MDStrategy& tau, const MDStrategy& sigma);

/// Largest number of `marked` vertices visited by a single walk from `from`.
/// Exhaustive search over (vertex, visited-marked-set) pairs.
std::size_t max_marked_on_walks(const Adjacency& adj, std::size_t from, const IndexSet& marked,
                                SearchBudget& budget);

}  // namespace causekit

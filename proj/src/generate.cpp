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

#include "causekit/generate.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace causekit {

namespace {

constexpr std::array<std::string_view, 5> kFamilyNames = {
    "layered-ts", "acyclic-ts", "acyclic-game", "cyclic-game", "boolean-sem"};

std::vector<std::string> make_alphabet(std::size_t size) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < size; ++i)
    out.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "l" + std::to_string(i));
  return out;
}

std::vector<std::string> numbered(char prefix, std::size_t n) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back(prefix + std::to_string(i));
  return ids;
}

// Distinct draws from [lo, hi), in increasing order.
std::vector<std::size_t> sample_distinct(Rng& rng, std::size_t lo, std::size_t hi, std::size_t k) {
  std::vector<std::size_t> pool;
  for (std::size_t i = lo; i < hi; ++i) pool.push_back(i);
  for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

std::string_view to_string(Family f) { return kFamilyNames[static_cast<std::size_t>(f)]; }

Family parse_family(std::string_view name) {
  for (std::size_t i = 0; i < kFamilyNames.size(); ++i)
    if (kFamilyNames[i] == name) return static_cast<Family>(i);
  throw InvalidSpec("unknown generator family '" + std::string(name) + "'");
}

void validate_spec(const GeneratorSpec& spec) {
  if (spec.size == 0) throw InvalidSpec("size must be positive");
  if (spec.alphabet == 0) throw InvalidSpec("alphabet size must be positive");
  if (spec.family == Family::LayeredTs && spec.width == 0)
    throw InvalidSpec("layer width must be positive");
  bool game = spec.family == Family::AcyclicGame || spec.family == Family::CyclicGame;
  if (game && spec.size < 2) throw InvalidSpec("games need at least two vertices");
  if (spec.family == Family::BooleanSem && spec.size > 16)
    throw InvalidSpec("at most 16 variables");
  if (spec.size > 100000) throw InvalidSpec("size above 100000");
}

TransitionSystem generate_layered_ts(const GeneratorSpec& spec, Rng& rng) {
  TsData data;
  data.alphabet = make_alphabet(spec.alphabet);
  std::size_t layers = rng.between(1, spec.size);
  std::vector<std::size_t> previous = {0};
  data.labels.push_back(rng.below(spec.alphabet));
  for (std::size_t l = 1; l < layers; ++l) {
    std::size_t width = rng.between(1, spec.width);
    std::vector<std::size_t> current;
    std::vector<char> has_successor(previous.size(), 0);
    for (std::size_t k = 0; k < width; ++k) {
      std::size_t s = data.labels.size();
      data.labels.push_back(rng.below(spec.alphabet));
      current.push_back(s);
      std::size_t first = rng.below(previous.size());
      for (std::size_t p = 0; p < previous.size(); ++p) {
        if (p == first || rng.chance(1, 3)) {
          data.transitions.emplace_back(previous[p], s);
          has_successor[p] = 1;
        }
      }
    }
    for (std::size_t p = 0; p < previous.size(); ++p)
      if (!has_successor[p]) data.transitions.emplace_back(previous[p], current[rng.below(width)]);
    previous = std::move(current);
  }
  data.ids = numbered('s', data.labels.size());
  std::sort(data.transitions.begin(), data.transitions.end());
  return TransitionSystem(std::move(data));
}

TransitionSystem generate_acyclic_ts(const GeneratorSpec& spec, Rng& rng) {
  TsData data;
  data.alphabet = make_alphabet(spec.alphabet);
  std::size_t n = rng.between(1, spec.size);
  for (std::size_t j = 0; j < n; ++j) {
    data.labels.push_back(rng.below(spec.alphabet));
    if (j == 0) continue;
    std::size_t parent = rng.below(j);
    for (std::size_t i = 0; i < j; ++i)
      if (i == parent || rng.chance(1, 4)) data.transitions.emplace_back(i, j);
  }
  data.ids = numbered('s', n);
  std::sort(data.transitions.begin(), data.transitions.end());
  return TransitionSystem(std::move(data));
}

ReachabilityGame generate_game(const GeneratorSpec& spec, Rng& rng) {
  bool cyclic = spec.family == Family::CyclicGame;
  GameData data;
  std::size_t n = rng.between(2, spec.size);
  for (std::size_t v = 0; v < n; ++v) {
    if (v == n - 1 || (v > 0 && rng.chance(1, 3)))
      data.owners.push_back(Owner::Effect);
    else
      data.owners.push_back(rng.chance(1, 2) ? Owner::Reach : Owner::Safe);
  }
  std::vector<char> sink(n, 0), entered(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (data.owners[v] == Owner::Effect) continue;
    if (v > 0 && rng.chance(1, 6)) {
      sink[v] = 1;
      data.edges.emplace_back(v, v);
      continue;
    }
    std::size_t lo = cyclic ? 0 : v + 1;
    std::size_t degree = rng.between(1, std::min<std::size_t>(3, n - lo));
    for (auto w : sample_distinct(rng, lo, n, degree)) {
      data.edges.emplace_back(v, w);
      if (w > v) entered[w] = 1;
    }
  }
  // Every vertex gets an edge from a lower branching vertex when one exists,
  // so the whole arena tends to be reachable.
  for (std::size_t w = 1; w < n; ++w) {
    if (entered[w]) continue;
    std::vector<std::size_t> sources;
    for (std::size_t u = 0; u < w; ++u)
      if (data.owners[u] != Owner::Effect && !sink[u]) sources.push_back(u);
    if (!sources.empty()) data.edges.emplace_back(sources[rng.below(sources.size())], w);
  }
  std::sort(data.edges.begin(), data.edges.end());
  data.edges.erase(std::unique(data.edges.begin(), data.edges.end()), data.edges.end());
  data.ids = numbered('v', n);
  return ReachabilityGame(std::move(data));
}

SemDocument generate_sem(const GeneratorSpec& spec, Rng& rng) {
  std::size_t n = spec.size;
  std::vector<std::vector<bool>> tables(n);
  for (std::size_t i = 0; i < n; ++i) {
    tables[i].resize(std::size_t{1} << i);
    for (std::size_t k = 0; k < tables[i].size(); ++k) tables[i][k] = rng.chance(1, 2);
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("X" + std::to_string(i));
  StructuralEquationModel sem(std::move(names), std::move(tables));
  std::set<Valuation> effect = {evaluate_default(sem)};
  for (std::size_t k = 0; k < (std::size_t{1} << n); ++k) {
    Valuation w(n);
    for (std::size_t j = 0; j < n; ++j) w[j] = (k >> j) & 1;
    if (rng.chance(1, 2)) effect.insert(std::move(w));
  }
  return SemDocument{std::move(sem), std::move(effect)};
}

MDStrategy random_strategy(const ReachabilityGame& game, Player player, Rng& rng) {
  std::vector<std::size_t> choices(game.num_vertices(), kNone);
  for (auto v : game.owned_vertices(player)) {
    auto succ = game.successors(v);
    choices[v] = succ[rng.below(succ.size())];
  }
  return MDStrategy(game, player, std::move(choices));
}

Json generate(const GeneratorSpec& spec) {
  validate_spec(spec);
  Rng rng(spec.seed);
  switch (spec.family) {
    case Family::LayeredTs:
      return to_json(generate_layered_ts(spec, rng));
    case Family::AcyclicTs:
      return to_json(generate_acyclic_ts(spec, rng));
    case Family::AcyclicGame:
    case Family::CyclicGame:
      return to_json(generate_game(spec, rng));
    case Family::BooleanSem:
      return to_json(generate_sem(spec, rng));
  }
  throw InvalidSpec("unknown generator family");
}

}  // namespace causekit

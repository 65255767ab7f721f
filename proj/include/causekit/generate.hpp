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

// Seeded random instances. Identical specs give identical instances on every
// platform: bounded draws use the raw 64-bit engine output modulo the range.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "causekit/io.hpp"
#include "causekit/model.hpp"

namespace causekit {

enum class Family { LayeredTs, AcyclicTs, AcyclicGame, CyclicGame, BooleanSem };

std::string_view to_string(Family f);
/// Throws InvalidSpec for unknown names.
Family parse_family(std::string_view name);

struct GeneratorSpec {
  Family family = Family::AcyclicTs;
  /// Upper bound on states, vertices or variables; layers for layered-ts.
  std::size_t size = 6;
  /// States per layer (layered-ts only).
  std::size_t width = 3;
  std::size_t alphabet = 2;
  std::uint64_t seed = 1;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform-ish draw from [0, n); n must be positive.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  /// Draw from [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  /// True with probability num/den.
  bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

 private:
  std::mt19937_64 engine_;
};

/// Throws InvalidSpec on a family/size combination that admits no instance.
void validate_spec(const GeneratorSpec& spec);

TransitionSystem generate_layered_ts(const GeneratorSpec& spec, Rng& rng);
TransitionSystem generate_acyclic_ts(const GeneratorSpec& spec, Rng& rng);
/// Games with at least one effect vertex; non-effect vertices may be sinks.
ReachabilityGame generate_game(const GeneratorSpec& spec, Rng& rng);
SemDocument generate_sem(const GeneratorSpec& spec, Rng& rng);

/// Uniformly chosen memoryless strategy for `player`.
MDStrategy random_strategy(const ReachabilityGame& game, Player player, Rng& rng);

/// Model document for the spec's family, seeded by spec.seed.
Json generate(const GeneratorSpec& spec);

}  // namespace causekit

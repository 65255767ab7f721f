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

// JSON documents for models, strategies, paths and structural equation
// models. Parse errors surface as InvalidModel.

#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "causekit/distances.hpp"
#include "causekit/model.hpp"
#include "causekit/sem_bridge.hpp"

namespace causekit {

using Json = nlohmann::json;

Json read_json_file(const std::string& path);
Json parse_json(std::string_view text);

/// "ts", "game" or "sem"; InvalidModel for anything else.
std::string model_kind(const Json& doc);

TransitionSystem ts_from_json(const Json& doc);
Json to_json(const TransitionSystem& ts);

ReachabilityGame game_from_json(const Json& doc);
Json to_json(const ReachabilityGame& game);

/// {"player": "reach"|"safe", "choices": {id: id}}; missing owned vertices
/// are an error.
MDStrategy strategy_from_json(const ReachabilityGame& game, const Json& doc);
Json to_json(const ReachabilityGame& game, const MDStrategy& strategy);

/// Ordered list of state ids.
std::vector<std::size_t> path_from_json(const TransitionSystem& ts, const Json& doc);

struct SemDocument {
  StructuralEquationModel sem;
  std::set<Valuation> effect;
};

/// {"kind": "sem", "variables": [...], "equations": [[bool...]...],
///  "effect": [[bool...]...] | {"over_last": k, "table": [bool...]}}
SemDocument sem_from_json(const Json& doc);
Json to_json(const SemDocument& doc);

/// Non-negative distances as numbers, infinity as the string "inf".
Json to_json(const Distance& d);

/// Splits a comma-separated id list; the empty string gives no ids.
std::vector<std::string> split_ids(std::string_view list);

}  // namespace causekit

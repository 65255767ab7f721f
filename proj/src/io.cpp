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

#include "causekit/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace causekit {

namespace {

template <typename F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InvalidModel(std::string("malformed ") + what + ": " + e.what());
  }
}

const Json& require(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key))
    throw InvalidModel(std::string("missing key '") + key + "'");
  return doc.at(key);
}

std::size_t lookup(const std::map<std::string, std::size_t>& index, const std::string& id,
                   const char* what) {
  auto it = index.find(id);
  if (it == index.end()) throw InvalidModel(std::string("unknown ") + what + " '" + id + "'");
  return it->second;
}

Owner owner_from_string(const std::string& s) {
  if (s == "reach") return Owner::Reach;
  if (s == "safe") return Owner::Safe;
  if (s == "effect") return Owner::Effect;
  throw InvalidModel("unknown owner '" + s + "'");
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidModel("cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json(buffer.str());
}

Json parse_json(std::string_view text) {
  return guarded("JSON", [&] { return Json::parse(text); });
}

std::string model_kind(const Json& doc) {
  return guarded("model", [&] {
    auto kind = require(doc, "kind").get<std::string>();
    if (kind != "ts" && kind != "game" && kind != "sem")
      throw InvalidModel("unknown model kind '" + kind + "'");
    return kind;
  });
}

TransitionSystem ts_from_json(const Json& doc) {
  return guarded("transition system", [&] {
    if (model_kind(doc) != "ts") throw InvalidModel("expected a transition system");
    TsData data;
    data.alphabet = require(doc, "alphabet").get<std::vector<std::string>>();
    std::map<std::string, std::size_t> symbols, states;
    for (std::size_t i = 0; i < data.alphabet.size(); ++i) symbols[data.alphabet[i]] = i;
    for (const auto& s : require(doc, "states")) {
      data.ids.push_back(require(s, "id").get<std::string>());
      data.labels.push_back(lookup(symbols, require(s, "label").get<std::string>(), "label"));
      states.emplace(data.ids.back(), data.ids.size() - 1);
    }
    data.initial = lookup(states, require(doc, "initial").get<std::string>(), "state");
    for (const auto& t : require(doc, "transitions")) {
      auto pair = t.get<std::vector<std::string>>();
      if (pair.size() != 2) throw InvalidModel("a transition is a pair of state ids");
      data.transitions.emplace_back(lookup(states, pair[0], "state"),
                                    lookup(states, pair[1], "state"));
    }
    return TransitionSystem(std::move(data));
  });
}

Json to_json(const TransitionSystem& ts) {
  Json doc;
  doc["kind"] = "ts";
  doc["alphabet"] = ts.alphabet();
  doc["initial"] = ts.id(ts.initial());
  Json states = Json::array(), transitions = Json::array();
  for (std::size_t s = 0; s < ts.num_states(); ++s) {
    states.push_back({{"id", ts.id(s)}, {"label", ts.alphabet()[ts.label(s)]}});
    for (auto t : ts.successors(s)) transitions.push_back({ts.id(s), ts.id(t)});
  }
  doc["states"] = std::move(states);
  doc["transitions"] = std::move(transitions);
  return doc;
}

ReachabilityGame game_from_json(const Json& doc) {
  return guarded("game", [&] {
    if (model_kind(doc) != "game") throw InvalidModel("expected a game");
    GameData data;
    std::map<std::string, std::size_t> vertices;
    for (const auto& v : require(doc, "vertices")) {
      data.ids.push_back(require(v, "id").get<std::string>());
      data.owners.push_back(owner_from_string(require(v, "owner").get<std::string>()));
      vertices.emplace(data.ids.back(), data.ids.size() - 1);
    }
    data.initial = lookup(vertices, require(doc, "initial").get<std::string>(), "vertex");
    for (const auto& e : require(doc, "edges")) {
      auto pair = e.get<std::vector<std::string>>();
      if (pair.size() != 2) throw InvalidModel("an edge is a pair of vertex ids");
      data.edges.emplace_back(lookup(vertices, pair[0], "vertex"),
                              lookup(vertices, pair[1], "vertex"));
    }
    return ReachabilityGame(std::move(data));
  });
}

Json to_json(const ReachabilityGame& game) {
  Json doc;
  doc["kind"] = "game";
  doc["initial"] = game.id(game.initial());
  Json vertices = Json::array(), edges = Json::array();
  for (std::size_t v = 0; v < game.num_vertices(); ++v) {
    vertices.push_back({{"id", game.id(v)}, {"owner", std::string(to_string(game.owner(v)))}});
    for (auto w : game.successors(v)) edges.push_back({game.id(v), game.id(w)});
  }
  doc["vertices"] = std::move(vertices);
  doc["edges"] = std::move(edges);
  return doc;
}

MDStrategy strategy_from_json(const ReachabilityGame& game, const Json& doc) {
  return guarded("strategy", [&] {
    auto player_name = require(doc, "player").get<std::string>();
    if (player_name != "reach" && player_name != "safe")
      throw InvalidModel("unknown player '" + player_name + "'");
    auto player = player_name == "reach" ? Player::Reach : Player::Safe;
    std::vector<std::size_t> choices(game.num_vertices(), kNone);
    for (const auto& [from, to] : require(doc, "choices").items()) {
      if (!game.has_vertex(from)) throw InvalidModel("unknown vertex '" + from + "'");
      auto target = to.get<std::string>();
      if (!game.has_vertex(target)) throw InvalidModel("unknown vertex '" + target + "'");
      choices[game.index_of(from)] = game.index_of(target);
    }
    return MDStrategy(game, player, std::move(choices));
  });
}

Json to_json(const ReachabilityGame& game, const MDStrategy& strategy) {
  Json choices = Json::object();
  for (auto v : game.owned_vertices(strategy.player())) choices[game.id(v)] = game.id(strategy(v));
  return {{"player", std::string(to_string(strategy.player()))}, {"choices", std::move(choices)}};
}

std::vector<std::size_t> path_from_json(const TransitionSystem& ts, const Json& doc) {
  return guarded("path", [&] {
    std::vector<std::size_t> path;
    for (const auto& id : doc.get<std::vector<std::string>>()) {
      if (!ts.has_state(id)) throw NotAPath("unknown state '" + id + "' in path");
      path.push_back(ts.index_of(id));
    }
    return path;
  });
}

SemDocument sem_from_json(const Json& doc) {
  return guarded("structural equation model", [&] {
    if (model_kind(doc) != "sem") throw InvalidModel("expected a structural equation model");
    StructuralEquationModel sem(require(doc, "variables").get<std::vector<std::string>>(),
                                require(doc, "equations").get<std::vector<std::vector<bool>>>());
    const auto& effect = require(doc, "effect");
    std::set<Valuation> valuations;
    if (effect.is_object()) {
      valuations = expand_effect_predicate(sem.size(), require(effect, "over_last").get<std::size_t>(),
                                           require(effect, "table").get<std::vector<bool>>());
    } else {
      for (const auto& w : effect) {
        auto v = w.get<std::vector<bool>>();
        if (v.size() != sem.size()) throw InvalidModel("effect valuation has the wrong length");
        valuations.insert(std::move(v));
      }
    }
    return SemDocument{std::move(sem), std::move(valuations)};
  });
}

Json to_json(const SemDocument& doc) {
  Json out;
  out["kind"] = "sem";
  out["variables"] = doc.sem.variables();
  out["equations"] = doc.sem.tables();
  Json effect = Json::array();
  for (const auto& w : doc.effect) effect.push_back(w);
  out["effect"] = std::move(effect);
  return out;
}

Json to_json(const Distance& d) {
  if (d.is_infinite()) return "inf";
  return d.value();
}

std::vector<std::string> split_ids(std::string_view list) {
  std::vector<std::string> out;
  if (list.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto comma = list.find(',', start);
    auto item = list.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                   : comma - start);
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace causekit

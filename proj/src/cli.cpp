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

#include "causekit/cli.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "causekit/game_causality.hpp"
#include "causekit/generate.hpp"
#include "causekit/io.hpp"
#include "causekit/sem_bridge.hpp"
#include "causekit/ts_causality.hpp"

namespace causekit {

namespace {

struct Globals {
  std::uint64_t budget = SearchBudget::kDefaultLimit;
  std::uint64_t seed = 1;
  std::size_t witnesses = 2;
  bool pretty = false;
};

struct Outcome {
  Json doc;
  int code = kPositive;
};

int verdict_code(bool positive) { return positive ? kPositive : kNegative; }

const std::map<std::string, Metric> kTsMetrics = {{"pref-ap", Metric::PrefAP},
                                                  {"pref", Metric::Pref},
                                                  {"hamm", Metric::Hamm},
                                                  {"ghamm", Metric::GHamm},
                                                  {"lev", Metric::Lev}};
const std::map<std::string, GameMetric> kGameMetrics = {
    {"pref-h", GameMetric::PrefH}, {"hamm-s", GameMetric::HammS}, {"dstar", GameMetric::DStar}};

std::vector<std::string> keys_of(const auto& map) {
  std::vector<std::string> out;
  for (const auto& [k, v] : map) out.push_back(k);
  return out;
}

template <typename Model>
IndexSet resolve_ids(const Model& model, std::size_t universe, const std::string& list,
                     const std::function<bool(const std::string&)>& exists) {
  IndexSet set(universe);
  for (const auto& id : split_ids(list)) {
    if (!exists(id)) throw InvalidModel("unknown id '" + id + "'");
    set.insert(model.index_of(id));
  }
  return set;
}

IndexSet state_set(const TransitionSystem& ts, const std::string& list) {
  return resolve_ids(ts, ts.num_states(), list, [&](const std::string& id) { return ts.has_state(id); });
}

IndexSet vertex_set(const ReachabilityGame& game, const std::string& list) {
  return resolve_ids(game, game.num_vertices(), list,
                     [&](const std::string& id) { return game.has_vertex(id); });
}

Json id_list(const std::vector<std::string>& ids, const std::vector<std::size_t>& indices) {
  Json out = Json::array();
  for (auto i : indices) out.push_back(ids[i]);
  return out;
}

Json id_list(const std::vector<std::string>& ids, const IndexSet& set) {
  return id_list(ids, set.members());
}

// ---------------------------------------------------------------------------
// ts-cause

struct TsCauseArgs {
  std::string model, path, cause, effect;
  std::string phi = "reach";
  std::string metric = "pref-ap";
  std::optional<std::size_t> length_bound;
};

void add_ts_cause_options(CLI::App& cmd, TsCauseArgs& a, bool oracle) {
  cmd.add_option("--model", a.model, "transition system file")->required();
  cmd.add_option("--path", a.path, "file with the observed maximal path")->required();
  cmd.add_option("--cause", a.cause, "comma-separated candidate cause states")->required();
  cmd.add_option("--effect", a.effect, "comma-separated terminal effect states")->required();
  cmd.add_option("--phi", a.phi, "objective of the observed path")
      ->check(CLI::IsMember({"reach", "safe"}));
  cmd.add_option("--metric", a.metric, "path distance")->check(CLI::IsMember(keys_of(kTsMetrics)));
  if (oracle) cmd.add_option("--length-bound", a.length_bound, "longest enumerated path");
}

Outcome ts_cause(const TsCauseArgs& a, const Globals& g, bool oracle) {
  auto ts = ts_from_json(read_json_file(a.model));
  auto pi = validate_maximal_path(ts, path_from_json(ts, read_json_file(a.path)));
  CauseQuery query{ts,
                   pi,
                   state_set(ts, a.cause),
                   state_set(ts, a.effect),
                   a.phi == "reach" ? Objective::Reach : Objective::Safe,
                   kTsMetrics.at(a.metric),
                   std::nullopt,
                   g.witnesses};
  CauseVerdict verdict;
  if (oracle) {
    SearchBudget budget(g.budget);
    verdict = brute_force_check(query, a.length_bound, budget);
  } else {
    verdict = check_cause(query);
  }
  Json witnesses = Json::array();
  for (const auto& w : verdict.witnesses) {
    witnesses.push_back({{"path", id_list(ts.ids(), w.path)},
                         {"cycle", id_list(ts.ids(), w.cycle)},
                         {"distance", to_json(w.distance)},
                         {"satisfiesPhi", w.satisfies_phi}});
  }
  Json doc = {{"verdict", verdict.is_cause},
              {"isCause", verdict.is_cause},
              {"avoiderExists", verdict.avoider_exists},
              {"metric", a.metric},
              {"minDistance", to_json(verdict.min_distance)},
              {"witnesses", std::move(witnesses)},
              {"diagnostics", {{"budget", g.budget}, {"expansions", verdict.expansions}}}};
  return {std::move(doc), verdict_code(verdict.is_cause)};
}

// ---------------------------------------------------------------------------
// game-cause

struct GameCauseArgs {
  std::string model, strategy, cause;
  std::string metric = "pref-h";
  std::optional<std::string> player;
};

void add_game_cause_options(CLI::App& cmd, GameCauseArgs& a) {
  cmd.add_option("--model", a.model, "game file")->required();
  cmd.add_option("--strategy", a.strategy, "strategy file")->required();
  cmd.add_option("--cause", a.cause, "comma-separated candidate cause vertices")->required();
  cmd.add_option("--metric", a.metric, "strategy distance")
      ->check(CLI::IsMember(keys_of(kGameMetrics)));
  cmd.add_option("--player", a.player, "owner of the strategy (must match the strategy file)")
      ->check(CLI::IsMember({"reach", "safe"}));
}

Outcome game_cause(const GameCauseArgs& a, const Globals& g, bool oracle) {
  auto game = game_from_json(read_json_file(a.model));
  auto sigma = strategy_from_json(game, read_json_file(a.strategy));
  if (a.player && *a.player != to_string(sigma.player()))
    throw PreconditionViolated("the strategy belongs to " + std::string(to_string(sigma.player())));
  GameCauseQuery query{game, sigma, vertex_set(game, a.cause), kGameMetrics.at(a.metric), g.budget};
  auto verdict = oracle ? brute_force_check_cause(query) : check_cause_game(query);
  Json doc = {{"verdict", verdict.is_cause},
              {"isCause", verdict.is_cause},
              {"metric", a.metric},
              {"conditions",
               {{"losingPlayThroughCause", verdict.losing_play_through_cause},
                {"avoidable", verdict.avoidable},
                {"closestWin", verdict.closest_win}}},
              {"minDistance", to_json(verdict.min_distance)},
              {"witness", verdict.witness ? to_json(game, *verdict.witness) : Json()},
              {"diagnostics", {{"budget", g.budget}, {"expansions", verdict.expansions}}}};
  return {std::move(doc), verdict_code(verdict.is_cause)};
}

// ---------------------------------------------------------------------------
// explain

struct ExplainArgs {
  std::string model, strategy;
  std::optional<std::string> cause, check, check_minimal;
  bool min_winning = false;
  bool min_dstar_acyclic = false;
  std::string metric = "hamm-s";
};

Outcome explain(const ExplainArgs& a, const Globals& g) {
  auto game = game_from_json(read_json_file(a.model));
  auto sigma = strategy_from_json(game, read_json_file(a.strategy));
  SearchBudget budget(g.budget);
  auto metric = kGameMetrics.at(a.metric);
  auto diagnostics = [&] { return Json{{"budget", g.budget}, {"expansions", budget.used()}}; };
  if (a.check) {
    auto e = is_explanation(game, sigma, vertex_set(game, *a.check));
    bool ok = e.witness.has_value();
    Json doc = {{"verdict", ok},
                {"isExplanation", ok},
                {"witness", ok ? to_json(game, *e.witness) : Json()},
                {"diagnostics", diagnostics()}};
    return {std::move(doc), verdict_code(ok)};
  }
  if (a.check_minimal) {
    if (metric == GameMetric::PrefH)
      throw PreconditionViolated("minimality is defined for hamm-s and dstar");
    bool ok = is_minimal_explanation(game, sigma, vertex_set(game, *a.check_minimal), metric, budget);
    Json doc = {{"verdict", ok},
                {"isMinimal", ok},
                {"metric", a.metric},
                {"diagnostics", diagnostics()}};
    return {std::move(doc), verdict_code(ok)};
  }
  if (a.min_winning) {
    auto best = min_winning_distance(game, sigma, metric, budget);
    Json doc = {{"verdict", best.distance},
                {"distance", best.distance},
                {"metric", a.metric},
                {"strategy", to_json(game, best.strategy)},
                {"explanation", id_list(game.ids(), [&] {
                   std::vector<std::size_t> diff;
                   for (auto v : game.owned_vertices(sigma.player()))
                     if (best.strategy(v) != sigma(v)) diff.push_back(v);
                   return diff;
                 }())},
                {"diagnostics", diagnostics()}};
    return {std::move(doc), kPositive};
  }
  if (a.min_dstar_acyclic) {
    auto best = min_dstar_winning_strategy_acyclic(game, sigma, budget);
    Json doc = {{"verdict", best.distance},
                {"distance", best.distance},
                {"fastPathCertified", best.fast_path_certified},
                {"strategy", to_json(game, best.strategy)},
                {"diagnostics", diagnostics()}};
    return {std::move(doc), kPositive};
  }
  auto e = extract_explanation(game, sigma, vertex_set(game, a.cause.value_or("")));
  Json doc = {{"verdict", id_list(game.ids(), e.vertices)},
              {"explanation", id_list(game.ids(), e.vertices)},
              {"witness", e.witness ? to_json(game, *e.witness) : Json()},
              {"diagnostics", diagnostics()}};
  return {std::move(doc), kPositive};
}

// ---------------------------------------------------------------------------
// solve

Outcome solve_game(const std::string& model) {
  auto game = game_from_json(read_json_file(model));
  auto analysis = solve(game);
  bool reach_wins = analysis.reach_region.contains(game.initial());
  Json doc = {{"verdict", reach_wins ? "reach" : "safe"},
              {"winner", reach_wins ? "reach" : "safe"},
              {"reachRegion", id_list(game.ids(), analysis.reach_region)},
              {"safeRegion", id_list(game.ids(), analysis.safe_region)},
              {"reachStrategy", to_json(game, analysis.reach_strategy)},
              {"safeStrategy", to_json(game, analysis.safe_strategy)}};
  return {std::move(doc), kPositive};
}

// ---------------------------------------------------------------------------
// distance

struct DistanceArgs {
  std::string metric;
  std::string left, right;
  std::string model, strategy, other;
};

std::vector<std::string> split_word(const std::string& word) {
  if (word.find(',') != std::string::npos) return split_ids(word);
  std::vector<std::string> out;
  for (char c : word) out.emplace_back(1, c);
  return out;
}

Outcome distance(const DistanceArgs& a, const Globals& g) {
  static const std::vector<std::string> trace_metrics = {"pref-ap", "hamm", "ghamm", "lev"};
  if (std::find(trace_metrics.begin(), trace_metrics.end(), a.metric) != trace_metrics.end()) {
    auto left = split_word(a.left), right = split_word(a.right);
    std::vector<std::string> alphabet(left);
    alphabet.insert(alphabet.end(), right.begin(), right.end());
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
    auto encode = [&](const std::vector<std::string>& w) {
      Word out;
      for (const auto& s : w)
        out.push_back(std::lower_bound(alphabet.begin(), alphabet.end(), s) - alphabet.begin());
      return out;
    };
    Word u = encode(left), v = encode(right);
    Json doc = {{"metric", a.metric}};
    Distance d;
    if (a.metric == "pref-ap") d = d_pref_ap(u, v);
    if (a.metric == "hamm") d = d_hamm(u, v);
    if (a.metric == "ghamm") d = d_ghamm(u, v);
    if (a.metric == "lev") {
      auto result = d_lev(u, v);
      d = result.distance;
      Json seq = Json::array();
      for (const auto& s : result.witness.symbols()) {
        seq.push_back({s.left() ? alphabet[*s.left()] : "", s.right() ? alphabet[*s.right()] : ""});
      }
      doc["editSequence"] = std::move(seq);
    }
    doc["distance"] = to_json(d);
    doc["verdict"] = to_json(d);
    return {std::move(doc), kPositive};
  }
  if (a.model.empty() || a.strategy.empty() || a.other.empty())
    throw PreconditionViolated("strategy distances need --model, --strategy and --other");
  auto game = game_from_json(read_json_file(a.model));
  auto sigma = strategy_from_json(game, read_json_file(a.strategy));
  auto tau = strategy_from_json(game, read_json_file(a.other));
  SearchBudget budget(g.budget);
  Json value;
  if (a.metric == "pref-h") value = to_json(d_pref_hausdorff(game, sigma, tau));
  if (a.metric == "hamm-s") value = d_hamm_s(game, sigma, tau);
  if (a.metric == "dstrat") value = dstrat(game, tau, sigma, budget);
  if (a.metric == "dstar") value = dstar(game, tau, sigma, budget);
  Json doc = {{"metric", a.metric},
              {"distance", value},
              {"verdict", value},
              {"diagnostics", {{"budget", g.budget}, {"expansions", budget.used()}}}};
  return {std::move(doc), kPositive};
}

// ---------------------------------------------------------------------------
// sem

struct SemArgs {
  std::string model, vars;
};

std::vector<std::size_t> sem_vars(const StructuralEquationModel& sem, const std::string& list) {
  std::vector<std::size_t> out;
  for (const auto& name : split_ids(list)) out.push_back(sem.index_of(name));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Outcome sem_butfor(const SemArgs& a) {
  auto doc = sem_from_json(read_json_file(a.model));
  bool ok = is_but_for_cause(doc.sem, doc.effect, sem_vars(doc.sem, a.vars));
  return {Json{{"verdict", ok}, {"isButFor", ok}}, verdict_code(ok)};
}

Outcome sem_bridge(const SemArgs& a) {
  auto doc = sem_from_json(read_json_file(a.model));
  auto vars = sem_vars(doc.sem, a.vars);
  auto result = bridge_check(doc.sem, doc.effect, vars);
  auto ts = unroll_to_ts(doc.sem, std::size_t{1} << 20, true);
  Json out = {{"verdict", result.verdict.is_cause},
              {"isButFor", result.but_for},
              {"isCause", result.verdict.is_cause},
              {"causeSet", id_list(ts.ids(), butfor_to_cause_set(doc.sem, ts, vars))},
              {"minDistance", to_json(result.verdict.min_distance)},
              {"diagnostics", {{"expansions", result.verdict.expansions}}}};
  return {std::move(out), verdict_code(result.verdict.is_cause)};
}

Outcome sem_unroll(const SemArgs& a, const Globals& g) {
  auto doc = sem_from_json(read_json_file(a.model));
  auto ts = unroll_to_ts(doc.sem, static_cast<std::size_t>(std::min<std::uint64_t>(g.budget, SIZE_MAX)));
  return {to_json(ts), kPositive};
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string family;
  std::size_t size = 6;
  std::size_t width = 3;
  std::size_t alphabet = 2;
};

Outcome gen(const GenArgs& a, const Globals& g) {
  GeneratorSpec spec{parse_family(a.family), a.size, a.width, a.alphabet, g.seed};
  return {generate(spec), kPositive};
}

// ---------------------------------------------------------------------------

std::string scalar_text(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  return value.dump();
}

void write_document(std::ostream& out, const Json& doc, bool pretty) {
  if (!pretty) {
    out << doc.dump() << '\n';
    return;
  }
  out << doc.dump(2) << '\n';
  std::size_t width = 0;
  for (const auto& [key, value] : doc.items())
    if (!value.is_structured()) width = std::max(width, key.size());
  out << '\n';
  for (const auto& [key, value] : doc.items()) {
    if (value.is_structured()) continue;
    out << std::left << std::setw(static_cast<int>(width)) << key << "  " << scalar_text(value)
        << '\n';
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Counterfactual causes in transition systems and reachability games", "causekit"};
  app.fallthrough();
  app.require_subcommand(1);

  Globals g;
  app.add_option("--budget", g.budget, "node expansion limit for exact searches");
  app.add_option("--seed", g.seed, "seed for generators");
  app.add_option("--witnesses", g.witnesses, "number of reported witnesses");
  app.add_flag("--pretty", g.pretty, "indented output followed by aligned text");

  std::function<Outcome()> action;

  TsCauseArgs ts_args;
  auto* ts_cmd = app.add_subcommand("ts-cause", "is a state set a cause in a transition system");
  add_ts_cause_options(*ts_cmd, ts_args, false);
  ts_cmd->callback([&] { action = [&] { return ts_cause(ts_args, g, false); }; });

  GameCauseArgs game_args;
  auto* game_cmd = app.add_subcommand("game-cause", "is a vertex set a cause of a losing strategy");
  add_game_cause_options(*game_cmd, game_args);
  game_cmd->callback([&] { action = [&] { return game_cause(game_args, g, false); }; });

  ExplainArgs ex;
  auto* ex_cmd = app.add_subcommand("explain", "explanations of losing strategies");
  ex_cmd->add_option("--model", ex.model, "game file")->required();
  ex_cmd->add_option("--strategy", ex.strategy, "strategy file")->required();
  auto* ex_cause = ex_cmd->add_option("--cause", ex.cause, "extract an explanation for this cause");
  auto* ex_check = ex_cmd->add_option("--check", ex.check, "is this vertex set an explanation");
  auto* ex_min = ex_cmd->add_option("--check-minimal", ex.check_minimal,
                                    "is this vertex set a minimal explanation");
  auto* ex_win = ex_cmd->add_flag("--min-winning", ex.min_winning,
                                  "closest winning strategy under --metric");
  auto* ex_dstar = ex_cmd->add_flag("--min-dstar-acyclic", ex.min_dstar_acyclic,
                                    "closest winning strategy under dstar for acyclic G^sigma");
  ex_cmd->add_option("--metric", ex.metric, "hamm-s or dstar")
      ->check(CLI::IsMember({"hamm-s", "dstar"}));
  std::vector<CLI::Option*> modes = {ex_cause, ex_check, ex_min, ex_win, ex_dstar};
  for (auto* m : modes)
    for (auto* other : modes)
      if (m != other) m->excludes(other);
  ex_cmd->callback([&] { action = [&] { return explain(ex, g); }; });

  std::string solve_model;
  auto* solve_cmd = app.add_subcommand("solve", "winning regions and strategies");
  solve_cmd->add_option("--model", solve_model, "game file")->required();
  solve_cmd->callback([&] { action = [&] { return solve_game(solve_model); }; });

  DistanceArgs dist;
  auto* dist_cmd = app.add_subcommand("distance", "distance between two words or two strategies");
  dist_cmd->add_option("--metric", dist.metric)
      ->required()
      ->check(CLI::IsMember({"pref-ap", "hamm", "ghamm", "lev", "pref-h", "hamm-s", "dstrat", "dstar"}));
  dist_cmd->add_option("--left", dist.left, "first word (letters, or comma-separated labels)");
  dist_cmd->add_option("--right", dist.right, "second word");
  dist_cmd->add_option("--model", dist.model, "game file");
  dist_cmd->add_option("--strategy", dist.strategy, "reference strategy file");
  dist_cmd->add_option("--other", dist.other, "compared strategy file");
  dist_cmd->callback([&] { action = [&] { return distance(dist, g); }; });

  SemArgs sem_args;
  auto* sem_cmd = app.add_subcommand("sem", "structural equation models");
  sem_cmd->require_subcommand(1);
  auto* butfor_cmd = sem_cmd->add_subcommand("butfor", "but-for test for a variable set");
  auto* bridge_cmd = sem_cmd->add_subcommand("bridge", "but-for test and the matching TS cause check");
  auto* unroll_cmd = sem_cmd->add_subcommand("unroll", "intervention tree as a transition system");
  for (auto* cmd : {butfor_cmd, bridge_cmd, unroll_cmd})
    cmd->add_option("--model", sem_args.model, "structural equation model file")->required();
  for (auto* cmd : {butfor_cmd, bridge_cmd})
    cmd->add_option("--vars", sem_args.vars, "comma-separated variable names")->required();
  butfor_cmd->callback([&] { action = [&] { return sem_butfor(sem_args); }; });
  bridge_cmd->callback([&] { action = [&] { return sem_bridge(sem_args); }; });
  unroll_cmd->callback([&] { action = [&] { return sem_unroll(sem_args, g); }; });

  TsCauseArgs oracle_ts;
  GameCauseArgs oracle_game;
  auto* oracle_cmd = app.add_subcommand("oracle", "definitional brute-force checks");
  oracle_cmd->require_subcommand(1);
  auto* oracle_ts_cmd = oracle_cmd->add_subcommand("ts-cause", "enumerate maximal paths");
  add_ts_cause_options(*oracle_ts_cmd, oracle_ts, true);
  oracle_ts_cmd->callback([&] { action = [&] { return ts_cause(oracle_ts, g, true); }; });
  auto* oracle_game_cmd = oracle_cmd->add_subcommand("game-cause", "enumerate MD strategies");
  add_game_cause_options(*oracle_game_cmd, oracle_game);
  oracle_game_cmd->callback([&] { action = [&] { return game_cause(oracle_game, g, true); }; });

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "seeded random model");
  gen_cmd->add_option("--family", gen_args.family)
      ->required()
      ->check(CLI::IsMember({"layered-ts", "acyclic-ts", "acyclic-game", "cyclic-game", "boolean-sem"}));
  gen_cmd->add_option("--size", gen_args.size, "bound on states, vertices, layers or variables");
  gen_cmd->add_option("--width", gen_args.width, "states per layer");
  gen_cmd->add_option("--alphabet", gen_args.alphabet, "number of labels");
  gen_cmd->callback([&] { action = [&] { return gen(gen_args, g); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPositive : kUsageError;
  }

  try {
    auto outcome = action();
    Json command = args;
    outcome.doc["command"] = std::move(command);
    write_document(out, outcome.doc, g.pretty);
    return outcome.code;
  } catch (const BudgetExceeded& e) {
    err << "causekit: " << e.what() << '\n';
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    err << "causekit: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace causekit

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

#include "causekit/ts_causality.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <tuple>

namespace causekit {

std::string_view to_string(Objective o) { return o == Objective::Reach ? "reach" : "safe"; }

std::string_view to_string(Metric m) {
  switch (m) {
    case Metric::PrefAP: return "pref-ap";
    case Metric::Pref: return "pref";
    case Metric::Hamm: return "hamm";
    case Metric::GHamm: return "ghamm";
    case Metric::Lev: return "lev";
  }
  return "?";
}

namespace {

bool end_satisfies(const CauseQuery& q, std::size_t last) {
  return q.effect.contains(last) == (q.phi == Objective::Reach);
}

/// Shortest path (fewest steps, lowest indices first) from `from` to a state
/// accepted by `goal`, moving only through `allowed`. Empty when none.
template <typename Goal>
std::vector<std::size_t> bfs_path(const Adjacency& adj, std::size_t from, const IndexSet& allowed,
                                  Goal goal) {
  if (!allowed.contains(from)) return {};
  std::vector<std::size_t> parent(adj.size(), kNone);
  std::vector<char> seen(adj.size(), 0);
  std::deque<std::size_t> queue{from};
  seen[from] = 1;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    if (goal(v)) {
      std::vector<std::size_t> path;
      for (auto u = v; u != kNone; u = parent[u]) path.push_back(u);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (auto w : adj[v]) {
      if (seen[w] || !allowed.contains(w)) continue;
      seen[w] = 1;
      parent[w] = v;
      queue.push_back(w);
    }
  }
  return {};
}

/// Some maximal path from `from` inside `region`, which must be closed in the
/// sense of maximal_avoiding_region. Prefers a finite one.
Witness maximal_continuation(const TransitionSystem& ts, std::size_t from,
                             const IndexSet& region) {
  Witness w;
  w.path = bfs_path(ts.adjacency(), from, region, [&](std::size_t v) { return ts.is_terminal(v); });
  if (!w.path.empty()) return w;
  std::map<std::size_t, std::size_t> position;
  std::vector<std::size_t> walk;
  auto v = from;
  while (!position.count(v)) {
    position[v] = walk.size();
    walk.push_back(v);
    auto succ = ts.successors(v);
    auto next = std::find_if(succ.begin(), succ.end(), [&](auto t) { return region.contains(t); });
    v = *next;
  }
  w.path.assign(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(position[v]));
  w.cycle.assign(walk.begin() + static_cast<std::ptrdiff_t>(position[v]), walk.end());
  return w;
}

/// prefix + continuation, where the continuation starts at prefix.back()
/// (its stem, or its cycle when the stem is empty).
Witness join(const std::vector<std::size_t>& prefix, Witness continuation) {
  Witness w = std::move(continuation);
  std::vector<std::size_t> path(prefix.begin(), prefix.end() - 1);
  path.insert(path.end(), w.path.begin(), w.path.end());
  w.path = std::move(path);
  return w;
}

void sort_and_trim(std::vector<Witness>& ws, std::size_t limit) {
  std::stable_sort(ws.begin(), ws.end(), [](const Witness& a, const Witness& b) {
    return std::tie(a.distance, b.satisfies_phi, a.path, a.cycle) <
           std::tie(b.distance, a.satisfies_phi, b.path, b.cycle);
  });
  if (!ws.empty()) {
    auto best = ws.front().distance;
    ws.erase(std::find_if(ws.begin(), ws.end(), [&](const Witness& w) { return w.distance > best; }),
             ws.end());
  }
  if (ws.size() > limit) ws.resize(limit);
}

CauseVerdict not_avoidable() {
  CauseVerdict v;
  v.avoider_exists = false;
  v.is_cause = false;
  v.min_distance = Distance::infinity();
  return v;
}

/// A goal node of a weighted comparison graph: reaching it completes a
/// C-avoiding maximal path that ends in `state`.
struct Goal {
  std::size_t node;
  std::size_t state;
};

/// Shared verdict logic of the shortest-path checkers: compare the cheapest
/// completed route ending in E with the cheapest one ending elsewhere.
CauseVerdict decide_by_routes(const CauseQuery& q, const WeightedGraph& graph,
                              std::size_t source, double source_weight,
                              const std::vector<Goal>& goals) {
  const auto& ts = q.ts;
  if (!exists_maximal_path_avoiding(ts, ts.initial(), q.cause)) return not_avoidable();

  auto sp = shortest_paths(graph, source, source_weight);
  CauseVerdict verdict;
  verdict.avoider_exists = true;
  verdict.expansions = sp.settled;

  std::size_t best_effect = kNone, best_other = kNone;
  auto better = [&](std::size_t cur, std::size_t node) {
    return cur == kNone || sp.distance[node] < sp.distance[cur] ||
           (sp.distance[node] == sp.distance[cur] && node < cur);
  };
  for (const auto& g : goals) {
    if (!sp.reached(g.node)) continue;
    auto& slot = q.effect.contains(g.state) ? best_effect : best_other;
    if (better(slot, g.node)) slot = g.node;
  }

  const bool reach = q.phi == Objective::Reach;
  auto witness_for = [&](std::size_t node, bool ends_in_effect) {
    Witness w;
    w.path.push_back(ts.initial());
    auto tags = sp.tags(node);
    w.path.insert(w.path.end(), tags.begin(), tags.end());
    w.distance = Distance(sp.distance[node]);
    w.satisfies_phi = ends_in_effect == reach;
    return w;
  };

  if (best_effect == kNone && best_other == kNone) {
    // Only infinite C-avoiding paths remain; they are all at distance inf
    // and none of them reaches the terminal effect states.
    verdict.min_distance = Distance::infinity();
    verdict.is_cause = reach;
    auto w = maximal_continuation(ts, ts.initial(), maximal_avoiding_region(ts, q.cause));
    w.distance = Distance::infinity();
    w.satisfies_phi = !reach;
    verdict.witnesses.push_back(std::move(w));
    sort_and_trim(verdict.witnesses, q.max_witnesses);
    return verdict;
  }

  constexpr double inf = std::numeric_limits<double>::infinity();
  double d_effect = best_effect == kNone ? inf : sp.distance[best_effect];
  double d_other = best_other == kNone ? inf : sp.distance[best_other];
  verdict.min_distance = Distance(std::min(d_effect, d_other));
  verdict.is_cause = reach ? d_other < d_effect : d_effect < d_other;
  if (best_effect != kNone) verdict.witnesses.push_back(witness_for(best_effect, true));
  if (best_other != kNone) verdict.witnesses.push_back(witness_for(best_other, false));
  sort_and_trim(verdict.witnesses, q.max_witnesses);
  return verdict;
}

}  // namespace

void validate_query(const CauseQuery& q) {
  const auto n = q.ts.num_states();
  if (q.cause.universe() != n || q.effect.universe() != n)
    throw PreconditionViolated("cause and effect sets must range over the system's states");
  for (auto e : q.effect.members())
    if (!q.ts.is_terminal(e))
      throw PreconditionViolated("effect state '" + q.ts.id(e) + "' is not terminal");
  if (q.cause.intersects(q.effect))
    throw PreconditionViolated("cause and effect sets intersect");
  if (!q.pi.visits(q.cause)) throw PreconditionViolated("the execution does not visit the cause");
  if (!end_satisfies(q, q.pi.states().back()))
    throw PreconditionViolated("the execution does not satisfy the property");
}

CauseVerdict check_cause(const CauseQuery& query) {
  validate_query(query);
  switch (query.metric) {
    case Metric::PrefAP:
    case Metric::Pref: return check_cause_pref_ap(query);
    case Metric::Hamm: return check_cause_hamm_layered(query);
    case Metric::GHamm: return check_cause_ghamm(query);
    case Metric::Lev: return check_cause_lev(query);
  }
  throw PreconditionViolated("unknown metric");
}

// ---------------------------------------------------------------------------
// Prefix metric

CauseVerdict check_cause_pref_ap(const CauseQuery& q) {
  validate_query(q);
  const auto& ts = q.ts;
  const auto& pi = q.pi;
  const auto n = pi.length();
  auto label = [&](std::size_t s) { return q.metric == Metric::Pref ? s : ts.label(s); };

  auto viable = maximal_avoiding_region(ts, q.cause);
  if (!viable.contains(ts.initial())) return not_avoidable();

  // layers[j]: states ending a C-avoiding prefix whose labels match pi's
  // first j + 1 labels, with one predecessor each for witness paths.
  std::vector<std::vector<std::size_t>> layers{{ts.initial()}};
  std::vector<std::map<std::size_t, std::size_t>> parent(1);
  std::uint64_t expansions = 1;
  for (std::size_t j = 1; j < n; ++j) {
    std::map<std::size_t, std::size_t> next;
    for (auto s : layers.back()) {
      for (auto t : ts.successors(s)) {
        ++expansions;
        if (q.cause.contains(t) || label(t) != label(pi[j])) continue;
        next.emplace(t, s);
      }
    }
    if (next.empty()) break;
    std::vector<std::size_t> layer;
    for (auto& [t, s] : next) layer.push_back(t);
    layers.push_back(std::move(layer));
    parent.push_back(std::move(next));
  }

  std::size_t depth = 0;
  for (std::size_t j = 0; j < layers.size(); ++j)
    if (std::any_of(layers[j].begin(), layers[j].end(),
                    [&](auto s) { return viable.contains(s); }))
      depth = j;
  std::vector<std::size_t> candidates;
  for (auto s : layers[depth])
    if (viable.contains(s)) candidates.push_back(s);

  auto prefix_to = [&](std::size_t s) {
    std::vector<std::size_t> path{s};
    for (auto j = depth; j > 0; --j) path.push_back(parent[j].at(path.back()));
    std::reverse(path.begin(), path.end());
    return path;
  };

  CauseVerdict verdict;
  verdict.avoider_exists = true;
  const bool reach = q.phi == Objective::Reach;

  std::vector<std::size_t> exact;
  if (depth + 1 == n)
    for (auto s : candidates)
      if (ts.is_terminal(s)) exact.push_back(s);

  if (!exact.empty()) {
    // Same trace as pi: distance 0, and only these paths are closest.
    verdict.min_distance = Distance(0.0);
    verdict.is_cause = true;
    for (auto s : exact) {
      Witness w{prefix_to(s), {}, Distance(0.0), end_satisfies(q, s)};
      if (w.satisfies_phi) verdict.is_cause = false;
      verdict.witnesses.push_back(std::move(w));
    }
  } else {
    const auto distance = Distance::power_of_two(-static_cast<int>(depth + 1));
    verdict.min_distance = distance;
    verdict.is_cause = true;
    auto phi_region = maximal_avoiding_region(ts, q.cause.united(q.effect));
    auto allowed = q.cause.complement();
    for (auto s : candidates) {
      bool sat = reach ? exists_path_reaching_avoiding(ts, s, q.effect, q.cause)
                       : phi_region.contains(s);
      Witness cont;
      if (sat && reach) {
        cont.path = bfs_path(ts.adjacency(), s, allowed,
                             [&](std::size_t v) { return q.effect.contains(v); });
      } else if (sat) {
        cont = maximal_continuation(ts, s, phi_region);
      } else {
        cont = maximal_continuation(ts, s, viable);
      }
      auto w = join(prefix_to(s), std::move(cont));
      w.distance = distance;
      w.satisfies_phi = sat;
      if (sat) verdict.is_cause = false;
      verdict.witnesses.push_back(std::move(w));
    }
  }
  verdict.expansions = expansions;
  sort_and_trim(verdict.witnesses, q.max_witnesses);
  return verdict;
}

// ---------------------------------------------------------------------------
// Hamming on layered systems

std::vector<std::size_t> validate_layered(const TransitionSystem& ts) {
  auto depth = bfs_depths(ts.adjacency(), ts.initial());
  std::size_t leaf_depth = kNone;
  for (std::size_t s = 0; s < ts.num_states(); ++s) {
    if (depth[s] == kNone) continue;
    for (auto t : ts.successors(s)) {
      if (depth[t] != depth[s] + 1)
        throw NotLayered("state '" + ts.id(t) + "' is reachable at more than one depth");
    }
    if (ts.is_terminal(s)) {
      if (leaf_depth != kNone && leaf_depth != depth[s])
        throw NotLayered("terminal states occur at different depths");
      leaf_depth = depth[s];
    }
  }
  if (leaf_depth == kNone) throw NotLayered("no terminal state is reachable");
  return depth;
}

CauseVerdict check_cause_hamm_layered(const CauseQuery& q) {
  validate_query(q);
  const auto& ts = q.ts;
  auto depth = validate_layered(ts);
  const auto& pi = q.pi;
  auto weight = [&](std::size_t s) {
    auto a = ts.label(s), b = ts.label(pi[depth[s]]);
    if (q.label_metric) return (*q.label_metric)(a, b);
    return a == b ? 0.0 : 1.0;
  };

  WeightedGraph graph(ts.num_states());
  std::vector<Goal> goals;
  for (std::size_t s = 0; s < ts.num_states(); ++s) {
    if (depth[s] == kNone || q.cause.contains(s)) continue;
    for (auto t : ts.successors(s))
      if (!q.cause.contains(t)) graph.add_edge(s, t, weight(t), t);
    if (ts.is_terminal(s)) goals.push_back({s, s});
  }
  if (q.cause.contains(ts.initial())) return not_avoidable();
  return decide_by_routes(q, graph, ts.initial(), weight(ts.initial()), goals);
}

// ---------------------------------------------------------------------------
// Generalised Hamming: |pi| copies of the state space plus one end node per
// state.

CauseVerdict check_cause_ghamm(const CauseQuery& q) {
  validate_query(q);
  const auto& ts = q.ts;
  const auto& pi = q.pi;
  const auto n = pi.length();
  const auto m = ts.num_states();
  if (q.cause.contains(ts.initial())) return not_avoidable();

  auto node = [n](std::size_t s, std::size_t i) { return s * n + i; };
  auto end = [n, m](std::size_t s) { return m * n + s; };
  WeightedGraph graph(m * n + m);
  std::vector<Goal> goals;
  for (std::size_t s = 0; s < m; ++s) {
    if (q.cause.contains(s)) continue;
    for (std::size_t i = 0; i < n; ++i) {
      for (auto t : ts.successors(s)) {
        if (q.cause.contains(t)) continue;
        if (i + 1 < n)
          graph.add_edge(node(s, i), node(t, i + 1), ts.label(t) == ts.label(pi[i + 1]) ? 0 : 1, t);
        else
          graph.add_edge(node(s, i), node(t, i), 1, t);
      }
      if (ts.is_terminal(s)) graph.add_edge(node(s, i), end(s), static_cast<double>(n - 1 - i));
    }
    if (ts.is_terminal(s)) goals.push_back({end(s), s});
  }
  double start = ts.label(ts.initial()) == ts.label(pi[0]) ? 0 : 1;
  return decide_by_routes(q, graph, node(ts.initial(), 0), start, goals);
}

// ---------------------------------------------------------------------------
// Levenshtein product

WeightedGraph build_lev_product(const TransitionSystem& ts, const MaximalFinitePath& pi) {
  const auto n = pi.length();
  const auto m = ts.num_states();
  auto node = [n](std::size_t s, std::size_t i) { return s * n + i; };
  WeightedGraph graph(m * n);
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      for (auto t : ts.successors(s)) {
        // Aligned step: compare the next symbol of pi with L(t).
        if (i + 1 < n)
          graph.add_edge(node(s, i), node(t, i + 1), ts.label(pi[i + 1]) == ts.label(t) ? 0 : 1, t);
        // Insertion of L(t).
        graph.add_edge(node(s, i), node(t, i), 1, t);
      }
      // Deletion of pi's next symbol.
      if (i + 1 < n) graph.add_edge(node(s, i), node(s, i + 1), 1);
    }
  }
  return graph;
}

CauseVerdict check_cause_lev(const CauseQuery& q) {
  validate_query(q);
  const auto& ts = q.ts;
  const auto n = q.pi.length();
  const auto m = ts.num_states();
  if (q.cause.contains(ts.initial())) return not_avoidable();

  auto full = build_lev_product(ts, q.pi);
  // Drop every product node whose state component lies in C.
  WeightedGraph graph(full.num_nodes());
  for (std::size_t v = 0; v < full.num_nodes(); ++v) {
    if (q.cause.contains(v / n)) continue;
    for (const auto& e : full.edges(v))
      if (!q.cause.contains(e.to / n)) graph.add_edge(v, e.to, e.weight, e.tag);
  }
  std::vector<Goal> goals;
  for (std::size_t t = 0; t < m; ++t)
    if (ts.is_terminal(t) && !q.cause.contains(t)) goals.push_back({t * n + n - 1, t});
  return decide_by_routes(q, graph, ts.initial() * n, 0.0, goals);
}

// ---------------------------------------------------------------------------
// Definitional oracle

std::vector<std::vector<std::size_t>> enumerate_maximal_paths(const TransitionSystem& ts,
                                                              std::size_t max_length,
                                                              SearchBudget& budget) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> path{ts.initial()};
  // Explicit DFS stack of (state, next successor position).
  std::vector<std::size_t> next_child{0};
  while (!path.empty()) {
    auto s = path.back();
    budget.charge();
    if (ts.is_terminal(s)) {
      out.push_back(path);
      path.pop_back();
      next_child.pop_back();
      continue;
    }
    auto succ = ts.successors(s);
    auto& k = next_child.back();
    if (k == succ.size() || path.size() >= max_length) {
      path.pop_back();
      next_child.pop_back();
      continue;
    }
    path.push_back(succ[k++]);
    next_child.push_back(0);
  }
  return out;
}

Distance path_distance(const CauseQuery& q, std::span<const std::size_t> a,
                       std::span<const std::size_t> b) {
  switch (q.metric) {
    case Metric::Pref: return d_pref(a, b);
    case Metric::PrefAP: return d_pref_ap(q.ts.trace(a), q.ts.trace(b));
    case Metric::Hamm:
      if (q.label_metric) return d_hamm_weighted(q.ts.trace(a), q.ts.trace(b), *q.label_metric);
      return d_hamm(q.ts.trace(a), q.ts.trace(b));
    case Metric::GHamm: return d_ghamm(q.ts.trace(a), q.ts.trace(b));
    case Metric::Lev: return d_lev(q.ts.trace(a), q.ts.trace(b)).distance;
  }
  throw PreconditionViolated("unknown metric");
}

CauseVerdict brute_force_check(const CauseQuery& q, std::optional<std::size_t> length_bound,
                               SearchBudget& budget) {
  validate_query(q);
  const auto& ts = q.ts;
  if (!length_bound &&
      reaches_cycle(ts.adjacency(), ts.initial(), IndexSet::full(ts.num_states())))
    throw PreconditionViolated("enumeration on a cyclic system needs a length bound");

  auto paths = enumerate_maximal_paths(ts, length_bound.value_or(kNone), budget);
  std::vector<Witness> avoiders;
  for (auto& p : paths) {
    if (std::any_of(p.begin(), p.end(), [&](auto s) { return q.cause.contains(s); })) continue;
    Witness w;
    w.distance = path_distance(q, q.pi.states(), p);
    w.satisfies_phi = end_satisfies(q, p.back());
    w.path = std::move(p);
    avoiders.push_back(std::move(w));
  }

  CauseVerdict verdict;
  verdict.expansions = budget.used();
  if (avoiders.empty()) {
    verdict.avoider_exists = false;
    return verdict;
  }
  verdict.avoider_exists = true;
  Distance best = Distance::infinity();
  for (const auto& w : avoiders) best = std::min(best, w.distance);
  verdict.min_distance = best;
  verdict.is_cause = std::none_of(avoiders.begin(), avoiders.end(), [&](const Witness& w) {
    return w.distance == best && w.satisfies_phi;
  });
  verdict.witnesses = std::move(avoiders);
  sort_and_trim(verdict.witnesses, q.max_witnesses);
  return verdict;
}

CauseVerdict brute_force_check(const CauseQuery& query, std::optional<std::size_t> length_bound) {
  SearchBudget budget;
  return brute_force_check(query, length_bound, budget);
}

}  // namespace causekit

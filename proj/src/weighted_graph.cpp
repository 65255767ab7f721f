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

#include "causekit/weighted_graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <utility>

namespace causekit {

std::size_t WeightedGraph::add_node() {
  out_.emplace_back();
  return out_.size() - 1;
}

void WeightedGraph::add_edge(std::size_t from, std::size_t to, double weight, std::size_t tag) {
  if (from >= out_.size() || to >= out_.size())
    throw std::invalid_argument("edge endpoint out of range");
  if (!(weight >= 0.0)) throw std::invalid_argument("edge weights must be non-negative");
  out_[from].push_back({to, weight, tag});
}

std::size_t WeightedGraph::num_edges() const {
  std::size_t n = 0;
  for (const auto& e : out_) n += e.size();
  return n;
}

bool ShortestPaths::reached(std::size_t node) const { return !std::isinf(distance[node]); }

std::vector<std::size_t> ShortestPaths::route(std::size_t node) const {
  std::vector<std::size_t> nodes;
  for (auto v = node; v != kNone; v = parent[v]) nodes.push_back(v);
  std::reverse(nodes.begin(), nodes.end());
  return nodes;
}

std::vector<std::size_t> ShortestPaths::tags(std::size_t node) const {
  std::vector<std::size_t> out;
  for (auto v = node; v != kNone && parent[v] != kNone; v = parent[v])
    if (parent_tag[v] != kNone) out.push_back(parent_tag[v]);
  std::reverse(out.begin(), out.end());
  return out;
}

ShortestPaths shortest_paths(const WeightedGraph& graph, std::size_t source,
                             double source_weight) {
  const auto n = graph.num_nodes();
  constexpr double inf = std::numeric_limits<double>::infinity();
  ShortestPaths sp{std::vector<double>(n, inf), std::vector<std::size_t>(n, kNone),
                   std::vector<std::size_t>(n, kNone), 0};
  if (source >= n) throw std::invalid_argument("source out of range");

  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  std::vector<char> done(n, 0);
  sp.distance[source] = source_weight;
  queue.emplace(source_weight, source);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (done[v]) continue;
    done[v] = 1;
    ++sp.settled;
    for (const auto& e : graph.edges(v)) {
      auto candidate = d + e.weight;
      if (!done[e.to] && candidate < sp.distance[e.to]) {
        sp.distance[e.to] = candidate;
        sp.parent[e.to] = v;
        sp.parent_tag[e.to] = e.tag;
        queue.emplace(candidate, e.to);
      }
    }
  }
  return sp;
}

}  // namespace causekit

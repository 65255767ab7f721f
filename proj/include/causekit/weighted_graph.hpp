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

// Directed graph with non-negative edge weights and single-source shortest
// paths. Edges may carry a tag (usually the transition-system state that the
// edge enters) so that routes can be mapped back to paths.

#pragma once

#include <cstddef>
#include <vector>

#include "causekit/model.hpp"

namespace causekit {

struct WeightedEdge {
  std::size_t to;
  double weight;
  std::size_t tag = kNone;
};

class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t nodes) : out_(nodes) {}

  std::size_t add_node();
  /// Throws std::invalid_argument on negative weight or unknown endpoint.
  void add_edge(std::size_t from, std::size_t to, double weight, std::size_t tag = kNone);

  std::size_t num_nodes() const { return out_.size(); }
  std::size_t num_edges() const;
  const std::vector<WeightedEdge>& edges(std::size_t node) const { return out_[node]; }

 private:
  std::vector<std::vector<WeightedEdge>> out_;
};

struct ShortestPaths {
  std::vector<double> distance;         // +inf when unreachable
  std::vector<std::size_t> parent;      // predecessor node, kNone at the source
  std::vector<std::size_t> parent_tag;  // tag of the edge into the node
  std::size_t settled = 0;              // nodes popped from the queue

  bool reached(std::size_t node) const;
  /// Nodes of the shortest route from the source to `node`.
  std::vector<std::size_t> route(std::size_t node) const;
  /// Tags along that route, skipping untagged edges.
  std::vector<std::size_t> tags(std::size_t node) const;
};

/// Dijkstra from `source`, which starts at distance `source_weight`.
/// Ties between equal tentative distances are broken by node index, and a
/// node keeps the first parent that reached its final distance, so routes
/// are deterministic.
ShortestPaths shortest_paths(const WeightedGraph& graph, std::size_t source,
                             double source_weight = 0.0);

}  // namespace causekit

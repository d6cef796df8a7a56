// Copyright 2026 The Biaslens Authors
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

#pragma once

#include <string>
#include <vector>

#include "biaslens/cluster/embedding.hpp"

namespace biaslens {

struct SimilarityEdge {
  std::size_t a = 0;  // index into SimilarityGraph::nodes
  std::size_t b = 0;
  double weight = 0.0;
};

// Undirected, no self-edges, weights in [-1, 1].
struct SimilarityGraph {
  std::vector<std::string> nodes;
  std::vector<SimilarityEdge> edges;

  // Throws InvalidArgument on duplicate node ids, out-of-range endpoints,
  // self-edges or weights outside [-1, 1].
  void check() const;
};

// All pairs. Throws InvalidArgument on duplicate ids or invalid vectors.
SimilarityGraph build_similarity_graph(const std::vector<EmbeddingVector>& vectors);

struct Partition {
  // Each cluster sorted by id; clusters sorted by size descending, then by
  // first id. Singletons sorted by id.
  std::vector<std::vector<std::string>> clusters;
  std::vector<std::string> singletons;

  friend bool operator==(const Partition&, const Partition&) = default;
};

// Connected components over edges with weight >= threshold. Components smaller
// than `min_cluster_size` go to the singleton pool.
Partition threshold_components(const SimilarityGraph& graph, double threshold, std::size_t min_cluster_size = 2);

struct ClusterConfig {
  double article_threshold = 0.8;
  double fact_threshold = 0.85;
  std::size_t min_cluster_size = 2;

  // Thresholds in (0, 1); min_cluster_size >= 1.
  void check() const;
};

}  // namespace biaslens

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

#include "biaslens/cluster/graph.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <set>

namespace biaslens {

void SimilarityGraph::check() const {
  std::set<std::string_view> seen;
  for (const std::string& n : nodes) {
    if (!seen.insert(n).second) throw InvalidArgument(fmt::format("duplicate node '{}'", n));
  }
  for (const SimilarityEdge& e : edges) {
    if (e.a >= nodes.size() || e.b >= nodes.size()) throw InvalidArgument("edge endpoint out of range");
    if (e.a == e.b) throw InvalidArgument(fmt::format("self-edge on '{}'", nodes[e.a]));
    if (!(e.weight >= -1.0 && e.weight <= 1.0)) throw InvalidArgument("edge weight outside [-1, 1]");
  }
}

SimilarityGraph build_similarity_graph(const std::vector<EmbeddingVector>& vectors) {
  SimilarityGraph g;
  for (const EmbeddingVector& v : vectors) g.nodes.push_back(v.id);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      g.edges.push_back({i, j, cosine_similarity(vectors[i], vectors[j])});
    }
  }
  g.check();
  return g;
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

Partition threshold_components(const SimilarityGraph& graph, double threshold, std::size_t min_cluster_size) {
  graph.check();
  std::vector<std::size_t> parent(graph.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const SimilarityEdge& e : graph.edges) {
    if (e.weight < threshold) continue;
    std::size_t ra = find_root(parent, e.a);
    std::size_t rb = find_root(parent, e.b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::vector<std::string>> groups(graph.nodes.size());
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) groups[find_root(parent, i)].push_back(graph.nodes[i]);

  Partition out;
  for (std::vector<std::string>& g : groups) {
    if (g.empty()) continue;
    std::sort(g.begin(), g.end());
    if (g.size() < std::max<std::size_t>(min_cluster_size, 1)) {
      out.singletons.insert(out.singletons.end(), g.begin(), g.end());
    } else {
      out.clusters.push_back(std::move(g));
    }
  }
  std::sort(out.clusters.begin(), out.clusters.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() > y.size();
    return x.front() < y.front();
  });
  std::sort(out.singletons.begin(), out.singletons.end());
  return out;
}

void ClusterConfig::check() const {
  auto in_unit = [](double t) { return t > 0.0 && t < 1.0; };
  if (!in_unit(article_threshold)) throw InvalidArgument(fmt::format("article_threshold {} not in (0,1)", article_threshold));
  if (!in_unit(fact_threshold)) throw InvalidArgument(fmt::format("fact_threshold {} not in (0,1)", fact_threshold));
  if (min_cluster_size < 1) throw InvalidArgument("min_cluster_size must be >= 1");
}

}  // namespace biaslens

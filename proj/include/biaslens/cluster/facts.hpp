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
#include "biaslens/cluster/graph.hpp"
#include "biaslens/core/types.hpp"
#include "biaslens/label/runner.hpp"

namespace biaslens {

inline constexpr std::size_t kSyntheticSentenceMaxWords = 25;

// Embedding id of a sentence: "<article id>#<index>".
std::string sentence_embedding_id(const SentenceRecord& record);

// Clusters the event's fact sentences at config.fact_threshold and summarizes
// each cluster. Sentences of non-member articles and non-fact sentences are
// ignored. Result ordered by size descending, then fact id.
std::vector<FactCluster> cluster_facts(const EventCluster& event, const std::vector<SentenceRecord>& sentences,
                                       EmbeddingProvider& embedder, const PromptRunner& runner,
                                       const ClusterConfig& config, const EmbedOptions& embed_options = {});

}  // namespace biaslens

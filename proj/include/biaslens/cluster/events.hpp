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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biaslens/cluster/embedding.hpp"
#include "biaslens/cluster/graph.hpp"
#include "biaslens/core/types.hpp"
#include "biaslens/label/runner.hpp"

namespace biaslens {

// What the refinement prompts see of an article.
struct ClusterArticle {
  std::string article_id;
  std::string title;
  std::string summary;  // takeaways, or the lead sentences when unlabeled
};

using ClusterArticleIndex = std::map<std::string, ClusterArticle, std::less<>>;

// An event while titling, recall and precision run. `initial`, `added` and
// `removed` record how `members` was reached.
struct DraftEvent {
  std::vector<std::string> members;  // sorted
  std::string theme;
  std::string theme_short;
  bool theme_short_truncated = false;
  std::vector<std::string> initial;
  std::vector<std::string> added;
  std::vector<std::string> removed;
  bool dissolved = false;
};

inline constexpr std::size_t kThemeShortMaxWords = 5;

// Titling, recall and precision, each run once in that order.
class EventRefiner {
 public:
  EventRefiner(const PromptRunner& runner, std::size_t min_cluster_size);

  // Throws DeadLetterError when a title response cannot be repaired.
  std::vector<DraftEvent> title_events(const std::vector<std::vector<std::string>>& clusters,
                                       const ClusterArticleIndex& articles) const;

  // Only adds. Assigned singletons leave `singletons`.
  void recall_pass(std::vector<DraftEvent>& events, std::vector<std::string>& singletons,
                   const ClusterArticleIndex& articles, std::vector<std::string>& warnings) const;

  // Only removes. Removed members and members of dissolved events join
  // `singletons`.
  void precision_pass(std::vector<DraftEvent>& events, std::vector<std::string>& singletons,
                      const ClusterArticleIndex& articles, std::vector<std::string>& warnings) const;

 private:
  const ClusterArticle& lookup(const ClusterArticleIndex& articles, const std::string& id) const;

  const PromptRunner& runner_;
  std::size_t min_cluster_size_;
};

std::string make_event_id(CivilDate day, const std::vector<std::string>& members);

// Inputs to a day's clustering.
struct DayArticle {
  Article article;
  std::optional<LabelSet> labels;
  std::vector<SentenceRecord> sentences;
};

struct DayClusteringOptions {
  ClusterConfig config;
  bool embed_title = true;  // article text is title + blank line + body
  EmbedOptions embed;
};

struct DayClustering {
  std::vector<EventCluster> events;  // size descending, then event id
  std::vector<FactCluster> facts;
  std::vector<DraftEvent> trace;
  std::vector<std::string> unclustered;
  std::vector<std::string> warnings;
  std::vector<std::string> truncated_embeddings;
};

// All-or-nothing: any provider or validation failure propagates and nothing
// is returned.
DayClustering cluster_day(CivilDate day, const std::vector<DayArticle>& articles, EmbeddingProvider& embedder,
                          const PromptRunner& runner, const DayClusteringOptions& options = {});

}  // namespace biaslens

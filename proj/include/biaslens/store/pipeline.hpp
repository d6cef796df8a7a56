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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "biaslens/cluster/events.hpp"
#include "biaslens/core/hierarchy.hpp"
#include "biaslens/core/registry.hpp"
#include "biaslens/ingest/cleaning.hpp"
#include "biaslens/ingest/fetch.hpp"
#include "biaslens/ingest/schedule.hpp"
#include "biaslens/ingest/snapshot_source.hpp"
#include "biaslens/label/labeler.hpp"
#include "biaslens/store/store.hpp"

namespace biaslens {

// Everything a day run reads besides the store. Providers are borrowed.
struct PipelineDeps {
  PublisherRegistry publishers;
  SnapshotSpec snapshot;
  TopicHierarchy hierarchy;
  CleaningDictionary cleaning;
  ClusterConfig clustering;
  LabelerConfig labeler;
  SnapshotSource* snapshots = nullptr;
  PageSource* pages = nullptr;
  LlmProvider* llm = nullptr;
  EmbeddingProvider* embedder = nullptr;
  Clock clock = system_clock();
};

struct StageReport {
  StageName stage = StageName::kIngest;
  RunStatus status = RunStatus::kPending;
  StageCounters counters;
  std::string run_id;
  std::string error;
  bool skipped = false;  // nothing to do; no run row written
};

struct DayReport {
  CivilDate date;
  std::vector<StageReport> stages;
  std::size_t articles = 0;  // stored articles of the day
  std::size_t labeled = 0;   // articles of the day with labels
  std::size_t events = 0;
  std::size_t facts = 0;
  bool ok() const;
};

Json to_document(const DayReport& report);

struct RunDayOptions {
  bool relabel = false;
  std::optional<std::string> publisher;  // restrict ingest and label
  std::vector<StageName> stages{StageName::kIngest, StageName::kLabel, StageName::kCluster};
  // Called after each stage finishes, done or failed.
  std::function<void(const StageReport&)> after_stage;
  std::function<void(const std::string&)> progress;
};

// Stages run in order ingest -> label -> cluster; each one is a PipelineRun.
// Per-item failures are recorded and skipped; a fatal stage error (missing
// fixture, provider outage, store failure) fails that run and stops the day.
DayReport run_day(Store& store, const PipelineDeps& deps, CivilDate date, const RunDayOptions& options = {});

// Captures, ranks and stores one homepage snapshot under
// "<publisher>@<due time>". A capture error is stored as a fetch failure and
// rethrown.
HomepageSnapshot capture_snapshot(Store& store, const PipelineDeps& deps, const SnapshotJob& job);

// Re-labels every article holding a dead letter. Resolved letters stay in
// history; their latest version is marked resolved.
StageReport retry_dead_letters(Store& store, const PipelineDeps& deps);

// Day index of ingested article ids, sorted.
std::vector<std::string> day_article_ids(const Store& store, CivilDate date);

// Typed reads of stored documents.
std::optional<Article> load_article(const Store& store, std::string_view article_id);
std::optional<LabelSet> load_labels(const Store& store, std::string_view article_id, const TopicHierarchy& hierarchy);
std::vector<SentenceRecord> load_sentences(const Store& store, std::string_view article_id);
std::vector<QuoteRecord> load_quotes(const Store& store, std::string_view article_id);

// Writes a day's clustering result and its index in one transaction.
void store_clustering(Store& store, CivilDate date, const DayClustering& result);

struct ClusterDayIndex {
  CivilDate date;
  std::vector<std::string> event_ids;  // size descending
  std::vector<std::string> fact_ids;
  std::vector<std::string> unclustered;
  std::vector<std::string> warnings;
  std::optional<long long> reported_total;  // articles in events per an external table
};
Json to_document(const ClusterDayIndex& index);
ClusterDayIndex cluster_day_index_from_document(const Json& doc);
std::optional<ClusterDayIndex> load_cluster_day(const Store& store, CivilDate date);

}  // namespace biaslens

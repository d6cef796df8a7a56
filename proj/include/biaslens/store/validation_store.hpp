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

#include <optional>
#include <string>
#include <vector>

#include "biaslens/analytics/corpus.hpp"
#include "biaslens/store/store.hpp"
#include "biaslens/validation/corrections.hpp"
#include "biaslens/validation/metrics.hpp"
#include "biaslens/validation/sampler.hpp"

namespace biaslens {

// Article-level dimensions a sampled article is validated on.
const std::vector<TaskKind>& article_task_kinds();

std::string make_task_id(std::string_view batch_id, TaskKind kind, std::string_view item_id, int round);

// What an annotator is shown: the article and the model output being judged.
// "model" holds the judged value as a confusion-matrix label where one exists.
Json task_payload(TaskKind kind, const AnalyzedArticle& article);

struct TaskBatch {
  std::string batch_id;
  SampleBatch sample;
  std::vector<StoredTask> tasks;
};

// Stratified sample over model lean and tone of labeled articles, expanded to
// one task per kind per annotator round, and stored. Re-running with the same
// seed over the same corpus adds nothing. Throws InvalidArgument when no
// article is labeled.
TaskBatch sample_validation_batch(Store& store, const Corpus& corpus, const StratificationSpec& spec,
                                  std::uint64_t seed, const std::vector<TaskKind>& kinds, int rounds);

// One event-membership task per labeled article of the day and round.
TaskBatch event_membership_tasks(Store& store, const Corpus& corpus, CivilDate date, int rounds);

struct SubmitResult {
  ValidationResponse response;
  ChangeLog changes;
};

// Validates and records one response to a claimed task, then applies any
// correction as an overlay or topic proposal. Throws NotFound (unknown task),
// SchemaError (malformed or inconsistent body) or ClaimConflict (task not
// held by this annotator, or already answered).
SubmitResult submit_response(Store& store, const TopicHierarchy& hierarchy, std::string_view task_id, const Json& body);

struct StoredResponse {
  ValidationTask task;
  ValidationResponse response;
};
std::vector<StoredResponse> load_responses(const Store& store);

// Empty when nothing of that kind was answered yet.
std::optional<AgreementReport> agreement_from_store(const Store& store, TaskKind kind);

// Model label against the validator's label for topic, lean, tone or type
// tasks. Agreeing verdicts pair the model label with itself; disagreements
// pair it with the correction; neutral verdicts and proposals for labels
// outside the space are skipped. Empty when no pair remains.
std::optional<ConfusionMatrix> confusion_from_store(const Store& store, TaskKind kind, const TopicHierarchy& hierarchy);
std::vector<std::string> label_space(TaskKind kind, const TopicHierarchy& hierarchy);

// Event-membership verdicts of a day. With several rounds per article the
// most frequent verdict wins; ties go to the smallest (no event first).
ClusterPrf cluster_prf_from_store(const Store& store, CivilDate date);

}  // namespace biaslens

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
#include <string_view>

#include "biaslens/core/hierarchy.hpp"
#include "biaslens/core/schema.hpp"

namespace biaslens {

enum class TaskKind { kTopic, kArticleLean, kArticleTone, kArticleType, kSentence, kEventMembership };

// "Agree" ... "Disagree". Lean and tone use all five levels; the other kinds
// use only Agree/Disagree.
enum class Verdict { kAgree, kSomewhatAgree, kNeither, kSomewhatDisagree, kDisagree };

std::string_view to_string(TaskKind kind);
TaskKind parse_task_kind(std::string_view s);
std::string_view to_string(Verdict verdict);
Verdict parse_verdict(std::string_view s);

bool uses_five_point_scale(TaskKind kind);
bool verdict_allowed(TaskKind kind, Verdict verdict);
bool is_disagreement(Verdict verdict);

struct ValidationTask {
  std::string task_id;
  TaskKind kind = TaskKind::kArticleLean;
  std::string item_id;  // article id (or article id for sentence tasks)
  Json payload;         // the item plus the model's label and rationale
  std::string annotator_id;  // empty until claimed
};

struct ValidationResponse {
  std::string task_id;
  std::string annotator_id;
  Verdict verdict = Verdict::kAgree;
  std::optional<Json> corrected_label;
  Timestamp submitted_at{};
};

Json to_document(const ValidationTask& task);
ValidationTask task_from_document(const Json& doc);
Json to_document(const ValidationResponse& response);
ValidationResponse response_from_document(const Json& doc);

// Enforces: verdict legal for the task kind; corrected_label present iff the
// verdict is a disagreement; corrected_label passes the same closed-vocabulary
// and range checks as model labels. Throws SchemaError.
void check_response(const ValidationTask& task, const ValidationResponse& response,
                    const TopicHierarchy& hierarchy);

}  // namespace biaslens

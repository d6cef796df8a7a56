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

#include <json.hpp>
#include <string>
#include <vector>

#include "biaslens/core/hierarchy.hpp"
#include "biaslens/core/types.hpp"
#include "biaslens/util/error.hpp"

namespace biaslens {

using Json = nlohmann::json;

// A document failed a schema constraint. `field` names the offending key and
// `reason` is a short machine-readable tag (out-of-range, not-under-topic, ...).
class SchemaError : public Error {
 public:
  SchemaError(std::string field, std::string reason, std::string detail = {});

  const std::string& field() const { return field_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string field_;
  std::string reason_;
};

// Canonical label document. Keys follow the labeling prompts: each task's
// response object is nested under the task name, e.g.
//   "article_lean": {"reason": "...", "lean": -4}.
Json to_document(const LabelSet& labels);

// Checks every LabelSet invariant against `hierarchy` and returns the typed
// value, or throws SchemaError naming the first violated constraint. Pure.
LabelSet validate_label_set(const Json& raw, const TopicHierarchy& hierarchy);

Json to_document(const Article& article);
Article article_from_document(const Json& doc);

Json to_document(const SentenceRecord& record);
SentenceRecord sentence_from_document(const Json& doc);
// Checks that indices run 1..N without gaps and all belong to one article.
void check_sentence_sequence(const std::vector<SentenceRecord>& records);

Json to_document(const QuoteRecord& record);
QuoteRecord quote_from_document(const Json& doc);

Json to_document(const EventCluster& event);
EventCluster event_from_document(const Json& doc);

Json to_document(const FactCluster& fact);
FactCluster fact_from_document(const Json& doc);

Json to_document(const SnapshotRef& ref);
SnapshotRef snapshot_ref_from_document(const Json& doc);

Json to_document(const Publisher& publisher);
Publisher publisher_from_document(const Json& doc);

// One NDJSON line per article joining the article with its labels, sentences
// and quotes. Missing parts are omitted.
Json canonical_record(const Article& article, const LabelSet* labels,
                      const std::vector<SentenceRecord>& sentences,
                      const std::vector<QuoteRecord>& quotes);

// Field accessors that throw SchemaError with the field name.
const Json& require_field(const Json& doc, const char* field);
std::string require_string(const Json& doc, const char* field, bool allow_empty = true);
long long require_integer(const Json& doc, const char* field);

}  // namespace biaslens

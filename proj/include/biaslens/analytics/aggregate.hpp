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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "biaslens/analytics/corpus.hpp"
#include "biaslens/core/schema.hpp"

namespace biaslens {

// Republican +1, Democrat -1, both or neither 0.
double focus_value(Focus focus);

// Mean focus value over the article's sentences. Throws InvalidArgument on an
// empty list.
double article_focus(const std::vector<SentenceRecord>& records);

enum class GroupKey { kPublisher, kCategory, kTopic, kSubtopic, kEvent };
enum class Measure { kCount, kMeanLean, kMeanTone, kMeanHeadlineLean, kMeanHeadlineTone, kMeanFocus };

std::string_view to_string(GroupKey key);
GroupKey parse_group_key(std::string_view s);
std::string_view to_string(Measure measure);
Measure parse_measure(std::string_view s);

struct AggregateQuery {
  std::optional<CivilDate> from;  // inclusive, by first-seen snapshot date
  std::optional<CivilDate> to;    // inclusive
  std::set<std::string> publishers;  // empty means all
  std::set<std::string> categories;
  std::set<std::string> topics;
  std::vector<GroupKey> group_by;
  Measure measure = Measure::kCount;
  bool weight_by_rank = false;  // weight each article by 1 / best_rank
  bool use_overlays = true;

  // Throws InvalidArgument on an empty or inverted date range, an empty or
  // repeated group_by, or rank weighting of a count.
  void check() const;
};

// Date, publisher, category, topic and overlay fields only.
AggregateQuery filter_from_json(const Json& doc);
AggregateQuery aggregate_query_from_json(const Json& doc);
Json to_document(const AggregateQuery& query);

struct AggregateRow {
  std::vector<std::string> key;  // one value per group_by entry
  double value = 0.0;
  std::size_t n = 0;
  std::string label;  // event theme when grouping by event

  friend bool operator==(const AggregateRow&, const AggregateRow&) = default;
};

struct AggregateTable {
  std::vector<GroupKey> group_by;
  Measure measure = Measure::kCount;
  std::vector<AggregateRow> rows;  // sorted by key; cells with n = 0 omitted
};

// True when the article passes the query's date, publisher, category and
// topic filters and carries labels.
bool matches(const AggregateQuery& query, const AnalyzedArticle& article);

// Counts and means over labeled articles. Events imported with a reported
// count and no members contribute that count to event-grouped counts when no
// publisher, category or topic filter is set.
AggregateTable aggregate(const AggregateQuery& query, const Corpus& corpus);

}  // namespace biaslens

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
#include <set>
#include <string>
#include <vector>

#include "biaslens/analytics/aggregate.hpp"
#include "biaslens/core/hierarchy.hpp"

namespace biaslens {

struct DeltaPoint {
  std::string category;  // "all" for the overall point
  double article_lean = 0.0;
  double headline_lean = 0.0;
  double article_tone = 0.0;
  double headline_tone = 0.0;
  std::size_t n = 0;

  double lean_delta() const { return headline_lean - article_lean; }
  double tone_delta() const { return headline_tone - article_tone; }
};

struct HeadlineDeltaReport {
  std::vector<DeltaPoint> categories;  // sorted by category
  DeltaPoint overall;
  std::size_t excluded = 0;  // in range but without labels
};

// Uses the query's filters; its group_by and measure are ignored.
HeadlineDeltaReport headline_delta(const AggregateQuery& filter, const Corpus& corpus);

struct HorseraceConfig {
  std::set<std::string> horserace_subtopics;
  std::set<std::string> policy_topics;

  static HorseraceConfig from_json(const Json& doc);
  // Throws InvalidArgument naming the first unknown subtopic or topic.
  void check(const TopicHierarchy& hierarchy) const;
};

struct HorseraceRow {
  std::string publisher_id;
  std::size_t horserace = 0;
  std::size_t policy = 0;

  friend bool operator==(const HorseraceRow&, const HorseraceRow&) = default;
};

// Per-publisher counts, sorted by publisher. An article matching both sets is
// counted on both sides.
std::vector<HorseraceRow> horserace_vs_policy(const AggregateQuery& filter, const Corpus& corpus,
                                              const HorseraceConfig& config, const TopicHierarchy& hierarchy);

// Renderers.
std::string format_table(const AggregateTable& table);
std::string to_csv(const AggregateTable& table);
Json to_document(const AggregateTable& table);
// Horizontal bar chart, one bar per row, labelled by the joined key.
std::string render_bar_svg(const AggregateTable& table, const std::string& title);
std::string render_delta_svg(const HeadlineDeltaReport& report, bool tone);
std::string format_table(const std::vector<HorseraceRow>& rows);

}  // namespace biaslens

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

#include "biaslens/analytics/aggregate.hpp"
#include "biaslens/store/pipeline.hpp"
#include "biaslens/validation/corrections.hpp"

namespace biaslens {

// Overlays and proposals are stored under "<article_id>:<overlay_id>" so one
// article's corrections share a key prefix.
std::string overlay_key(const Overlay& overlay);
std::vector<Overlay> load_overlays(const Store& store, std::string_view article_id);
std::vector<Overlay> load_all_overlays(const Store& store);
std::vector<TopicProposal> load_proposals(const Store& store);

// Events of every clustered day in range, in each day's stored order.
std::vector<EventCluster> load_events(const Store& store, std::optional<CivilDate> from = std::nullopt,
                                      std::optional<CivilDate> to = std::nullopt);
std::vector<FactCluster> load_facts(const Store& store, std::string_view event_id);

// Every stored article whose first-seen date is in range, with model labels,
// sentences, applied overlays and event membership.
Corpus load_corpus(const Store& store, const TopicHierarchy& hierarchy, std::optional<CivilDate> from = std::nullopt,
                   std::optional<CivilDate> to = std::nullopt);

// Everything the pipeline derived for one day, keyed and ordered
// deterministically: articles with labels, sentences and quotes, then events,
// facts and the unclustered pool. Used for golden comparisons.
Json day_output_document(const Store& store, const TopicHierarchy& hierarchy, CivilDate date);

enum class ExportFormat { kCsv, kNdjson };
ExportFormat parse_export_format(std::string_view s);

// NDJSON: one canonical record per matching article, with "event_id" and, when
// present, "corrected_labels". CSV: one flat row per article.
std::string export_records(const Store& store, const Corpus& corpus, const AggregateQuery& filter, ExportFormat format);

// Imports article documents (one JSON object per line) and indexes each under
// its first-seen date. Returns the number of new or changed articles.
std::size_t import_articles(Store& store, std::string_view ndjson);

// Imports a published per-day event table: {"date", "total_articles",
// "events": [{"theme", "theme_short"?, "count"}]}. Events carry reported
// counts and no members. Returns the number of events.
std::size_t import_event_table(Store& store, const Json& table);

}  // namespace biaslens

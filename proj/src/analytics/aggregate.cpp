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

#include "biaslens/analytics/aggregate.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>

namespace biaslens {

const LabelSet* AnalyzedArticle::labels(bool use_overlays) const {
  if (use_overlays && corrected_labels) return &*corrected_labels;
  return model_labels ? &*model_labels : nullptr;
}

const std::vector<SentenceRecord>& AnalyzedArticle::sentences_for(bool use_overlays) const {
  return use_overlays && corrected_sentences ? *corrected_sentences : sentences;
}

double focus_value(Focus focus) {
  switch (focus) {
    case Focus::kRepublican:
      return 1.0;
    case Focus::kDemocrat:
      return -1.0;
    case Focus::kBoth:
    case Focus::kNeither:
      return 0.0;
  }
  return 0.0;
}

double article_focus(const std::vector<SentenceRecord>& records) {
  if (records.empty()) throw InvalidArgument("focus score of an article without sentences");
  long long sum = 0;
  for (const SentenceRecord& r : records) sum += static_cast<long long>(focus_value(r.focus));
  return static_cast<double>(sum) / static_cast<double>(records.size());
}

namespace {

constexpr std::pair<GroupKey, std::string_view> kGroupNames[] = {{GroupKey::kPublisher, "publisher"},
                                                                 {GroupKey::kCategory, "category"},
                                                                 {GroupKey::kTopic, "topic"},
                                                                 {GroupKey::kSubtopic, "subtopic"},
                                                                 {GroupKey::kEvent, "event"}};
constexpr std::pair<Measure, std::string_view> kMeasureNames[] = {{Measure::kCount, "count"},
                                                                  {Measure::kMeanLean, "mean_lean"},
                                                                  {Measure::kMeanTone, "mean_tone"},
                                                                  {Measure::kMeanHeadlineLean, "mean_headline_lean"},
                                                                  {Measure::kMeanHeadlineTone, "mean_headline_tone"},
                                                                  {Measure::kMeanFocus, "mean_focus"}};

std::optional<double> measure_of(Measure m, const LabelSet& l, const std::vector<SentenceRecord>& sentences) {
  switch (m) {
    case Measure::kCount:
      return 1.0;
    case Measure::kMeanLean:
      return l.lean.score.value();
    case Measure::kMeanTone:
      return l.tone.score.value();
    case Measure::kMeanHeadlineLean:
      return l.headline_lean.score.value();
    case Measure::kMeanHeadlineTone:
      return l.headline_tone.score.value();
    case Measure::kMeanFocus:
      if (sentences.empty()) return std::nullopt;
      return article_focus(sentences);
  }
  return std::nullopt;
}

std::optional<std::string> key_part(GroupKey k, const LabelSet& l, const AnalyzedArticle& a) {
  switch (k) {
    case GroupKey::kPublisher:
      return a.article.publisher_id;
    case GroupKey::kCategory:
      return l.category;
    case GroupKey::kTopic:
      return l.topic;
    case GroupKey::kSubtopic:
      return l.subtopic;
    case GroupKey::kEvent:
      return a.event_id;
  }
  return std::nullopt;
}

struct Cell {
  double weighted_sum = 0.0;
  double weight = 0.0;
  std::size_t n = 0;
};

}  // namespace

std::string_view to_string(GroupKey key) {
  for (const auto& [k, name] : kGroupNames) {
    if (k == key) return name;
  }
  return "?";
}

GroupKey parse_group_key(std::string_view s) {
  for (const auto& [k, name] : kGroupNames) {
    if (name == s) return k;
  }
  throw InvalidArgument(fmt::format("unknown group_by '{}'", s));
}

std::string_view to_string(Measure measure) {
  for (const auto& [m, name] : kMeasureNames) {
    if (m == measure) return name;
  }
  return "?";
}

Measure parse_measure(std::string_view s) {
  for (const auto& [m, name] : kMeasureNames) {
    if (name == s) return m;
  }
  throw InvalidArgument(fmt::format("unknown measure '{}'", s));
}

void AggregateQuery::check() const {
  if (from && to && *from > *to) throw InvalidArgument("date range is empty");
  if (group_by.empty()) throw InvalidArgument("group_by must name at least one key");
  for (std::size_t i = 0; i < group_by.size(); ++i) {
    for (std::size_t j = i + 1; j < group_by.size(); ++j) {
      if (group_by[i] == group_by[j]) throw InvalidArgument(fmt::format("group_by repeats '{}'", to_string(group_by[i])));
    }
  }
  if (weight_by_rank && measure == Measure::kCount) throw InvalidArgument("rank weighting applies to means only");
}

AggregateQuery filter_from_json(const Json& doc) {
  if (!doc.is_object()) throw SchemaError("query", "wrong-type", "expected object");
  AggregateQuery q;
  if (doc.contains("from")) q.from = parse_date(require_string(doc, "from", false));
  if (doc.contains("to")) q.to = parse_date(require_string(doc, "to", false));
  auto string_set = [&](const char* field, std::set<std::string>& out) {
    if (!doc.contains(field)) return;
    if (!doc[field].is_array()) throw SchemaError(field, "wrong-type", "expected array");
    for (const Json& v : doc[field]) out.insert(v.get<std::string>());
  };
  string_set("publishers", q.publishers);
  string_set("categories", q.categories);
  string_set("topics", q.topics);
  q.use_overlays = doc.value("use_overlays", true);
  if (q.from && q.to && *q.from > *q.to) throw InvalidArgument("date range is empty");
  return q;
}

AggregateQuery aggregate_query_from_json(const Json& doc) {
  AggregateQuery q = filter_from_json(doc);
  const Json& group = require_field(doc, "group_by");
  if (group.is_string()) {
    q.group_by.push_back(parse_group_key(group.get<std::string>()));
  } else if (group.is_array()) {
    for (const Json& g : group) q.group_by.push_back(parse_group_key(g.get<std::string>()));
  } else {
    throw SchemaError("group_by", "wrong-type", "expected string or array");
  }
  q.measure = parse_measure(require_string(doc, "measure", false));
  q.weight_by_rank = doc.value("weight_by_rank", false);
  q.check();
  return q;
}

Json to_document(const AggregateQuery& q) {
  Json doc = Json::object();
  if (q.from) doc["from"] = format_date(*q.from);
  if (q.to) doc["to"] = format_date(*q.to);
  doc["publishers"] = q.publishers;
  doc["categories"] = q.categories;
  doc["topics"] = q.topics;
  Json group = Json::array();
  for (GroupKey k : q.group_by) group.push_back(to_string(k));
  doc["group_by"] = group;
  doc["measure"] = to_string(q.measure);
  doc["weight_by_rank"] = q.weight_by_rank;
  doc["use_overlays"] = q.use_overlays;
  return doc;
}

bool matches(const AggregateQuery& q, const AnalyzedArticle& a) {
  const LabelSet* l = a.labels(q.use_overlays);
  if (l == nullptr) return false;
  if (q.from && a.day() < *q.from) return false;
  if (q.to && a.day() > *q.to) return false;
  if (!q.publishers.empty() && !q.publishers.count(a.article.publisher_id)) return false;
  if (!q.categories.empty() && !q.categories.count(l->category)) return false;
  if (!q.topics.empty() && !q.topics.count(l->topic)) return false;
  return true;
}

AggregateTable aggregate(const AggregateQuery& query, const Corpus& corpus) {
  query.check();
  std::map<std::vector<std::string>, Cell> cells;
  for (const AnalyzedArticle& a : corpus.articles) {
    if (!matches(query, a)) continue;
    const LabelSet& l = *a.labels(query.use_overlays);
    std::optional<double> value = measure_of(query.measure, l, a.sentences_for(query.use_overlays));
    if (!value) continue;
    std::vector<std::string> key;
    bool complete = true;
    for (GroupKey k : query.group_by) {
      std::optional<std::string> part = key_part(k, l, a);
      if (!part) {
        complete = false;
        break;
      }
      key.push_back(std::move(*part));
    }
    if (!complete) continue;
    double w = query.weight_by_rank ? 1.0 / std::max(a.article.best_rank, 1) : 1.0;
    Cell& c = cells[key];
    c.weighted_sum += w * *value;
    c.weight += w;
    ++c.n;
  }

  std::map<std::string, const EventCluster*> events;
  for (const EventCluster& e : corpus.events) events[e.event_id] = &e;
  bool unfiltered = query.publishers.empty() && query.categories.empty() && query.topics.empty();
  if (query.measure == Measure::kCount && query.group_by == std::vector<GroupKey>{GroupKey::kEvent} && unfiltered) {
    for (const EventCluster& e : corpus.events) {
      if (!e.reported_count || !e.member_article_ids.empty()) continue;
      if ((query.from && e.day < *query.from) || (query.to && e.day > *query.to)) continue;
      Cell& c = cells[{e.event_id}];
      c.weighted_sum = c.weight = *e.reported_count;
      c.n = static_cast<std::size_t>(*e.reported_count);
    }
  }

  AggregateTable table{query.group_by, query.measure, {}};
  std::size_t event_col = query.group_by.size();
  for (std::size_t i = 0; i < query.group_by.size(); ++i) {
    if (query.group_by[i] == GroupKey::kEvent) event_col = i;
  }
  for (const auto& [key, cell] : cells) {
    if (cell.n == 0) continue;
    AggregateRow row;
    row.key = key;
    row.n = cell.n;
    row.value = query.measure == Measure::kCount ? static_cast<double>(cell.n) : cell.weighted_sum / cell.weight;
    if (event_col < key.size()) {
      auto it = events.find(key[event_col]);
      if (it != events.end()) row.label = it->second->theme;
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace biaslens

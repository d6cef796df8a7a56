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

#include "biaslens/store/queries.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>

#include "biaslens/util/csv.hpp"
#include "biaslens/util/digest.hpp"
#include "biaslens/util/files.hpp"
#include "biaslens/util/strings.hpp"

namespace biaslens {
namespace {

bool in_range(CivilDate d, std::optional<CivilDate> from, std::optional<CivilDate> to) {
  return (!from || d >= *from) && (!to || d <= *to);
}

bool is_label_kind(TaskKind k) {
  return k == TaskKind::kTopic || k == TaskKind::kArticleLean || k == TaskKind::kArticleTone ||
         k == TaskKind::kArticleType;
}

}  // namespace

std::string overlay_key(const Overlay& o) { return o.article_id + ":" + o.overlay_id; }

std::vector<Overlay> load_overlays(const Store& store, std::string_view article_id) {
  std::vector<Overlay> out;
  for (const StoredRecord& r : store.latest_with_prefix(kinds::kOverlay, std::string(article_id) + ":")) {
    out.push_back(overlay_from_document(r.body));
  }
  return out;
}

std::vector<Overlay> load_all_overlays(const Store& store) {
  std::vector<Overlay> out;
  for (const StoredRecord& r : store.all_latest(kinds::kOverlay)) out.push_back(overlay_from_document(r.body));
  return out;
}

std::vector<TopicProposal> load_proposals(const Store& store) {
  std::vector<TopicProposal> out;
  for (const StoredRecord& r : store.all_latest(kinds::kProposal)) out.push_back(proposal_from_document(r.body));
  return out;
}

std::vector<EventCluster> load_events(const Store& store, std::optional<CivilDate> from, std::optional<CivilDate> to) {
  std::vector<EventCluster> out;
  for (const StoredRecord& r : store.all_latest(kinds::kClusterDay)) {
    ClusterDayIndex idx = cluster_day_index_from_document(r.body);
    if (!in_range(idx.date, from, to)) continue;
    for (const std::string& id : idx.event_ids) {
      std::optional<StoredRecord> e = store.latest(kinds::kEvent, id);
      if (!e) throw CorruptRecord(fmt::format("day {} names missing event '{}'", r.id, id));
      out.push_back(event_from_document(e->body));
    }
  }
  return out;
}

std::vector<FactCluster> load_facts(const Store& store, std::string_view event_id) {
  std::optional<StoredRecord> e = store.latest(kinds::kEvent, event_id);
  if (!e) throw NotFound(fmt::format("unknown event '{}'", event_id));
  EventCluster event = event_from_document(e->body);
  std::optional<ClusterDayIndex> idx = load_cluster_day(store, event.day);
  std::vector<FactCluster> out;
  if (!idx) return out;
  for (const std::string& id : idx->fact_ids) {
    std::optional<StoredRecord> f = store.latest(kinds::kFact, id);
    if (!f) throw CorruptRecord(fmt::format("day {} names missing fact '{}'", format_date(event.day), id));
    FactCluster fact = fact_from_document(f->body);
    if (fact.event_id == event_id) out.push_back(std::move(fact));
  }
  return out;
}

Corpus load_corpus(const Store& store, const TopicHierarchy& hierarchy, std::optional<CivilDate> from,
                   std::optional<CivilDate> to) {
  Corpus corpus;
  corpus.events = load_events(store, from, to);
  std::map<std::string, std::string> event_of;
  for (const EventCluster& e : corpus.events) {
    for (const std::string& m : e.member_article_ids) event_of[m] = e.event_id;
  }
  std::map<std::string, std::vector<Overlay>> overlays;
  for (Overlay& o : load_all_overlays(store)) overlays[o.article_id].push_back(std::move(o));

  for (const StoredRecord& r : store.all_latest(kinds::kArticle)) {
    AnalyzedArticle a;
    a.article = article_from_document(r.body);
    if (!in_range(a.day(), from, to)) continue;
    a.model_labels = load_labels(store, a.article.article_id, hierarchy);
    a.sentences = load_sentences(store, a.article.article_id);
    if (auto it = overlays.find(a.article.article_id); it != overlays.end()) {
      std::vector<Overlay> label_overlays, sentence_overlays;
      for (const Overlay& o : it->second) {
        if (is_label_kind(o.kind)) label_overlays.push_back(o);
        if (o.kind == TaskKind::kSentence) sentence_overlays.push_back(o);
      }
      if (a.model_labels && !label_overlays.empty()) {
        a.corrected_labels = apply_label_overlays(*a.model_labels, label_overlays, hierarchy);
      }
      if (!a.sentences.empty() && !sentence_overlays.empty()) {
        a.corrected_sentences = apply_sentence_overlays(a.sentences, sentence_overlays);
      }
    }
    if (auto it = event_of.find(a.article.article_id); it != event_of.end()) a.event_id = it->second;
    corpus.articles.push_back(std::move(a));
  }
  return corpus;
}

Json day_output_document(const Store& store, const TopicHierarchy& hierarchy, CivilDate date) {
  Json articles = Json::array();
  for (const std::string& id : day_article_ids(store, date)) {
    std::optional<Article> article = load_article(store, id);
    if (!article) continue;
    std::optional<LabelSet> labels = load_labels(store, id, hierarchy);
    Json sentences = Json::array();
    for (const SentenceRecord& r : load_sentences(store, id)) sentences.push_back(to_document(r));
    Json quotes = Json::array();
    for (const QuoteRecord& q : load_quotes(store, id)) quotes.push_back(to_document(q));
    articles.push_back(Json{{"article", to_document(*article)},
                            {"labels", labels ? to_document(*labels) : Json(nullptr)},
                            {"sentences", std::move(sentences)},
                            {"quotes", std::move(quotes)}});
  }
  Json events = Json::array();
  Json facts = Json::array();
  Json unclustered = Json::array();
  if (std::optional<ClusterDayIndex> index = load_cluster_day(store, date)) {
    for (const EventCluster& e : load_events(store, date, date)) {
      events.push_back(to_document(e));
      for (const FactCluster& f : load_facts(store, e.event_id)) facts.push_back(to_document(f));
    }
    unclustered = index->unclustered;
  }
  return Json{{"date", format_date(date)},
              {"articles", std::move(articles)},
              {"events", std::move(events)},
              {"facts", std::move(facts)},
              {"unclustered", std::move(unclustered)}};
}

ExportFormat parse_export_format(std::string_view s) {
  if (s == "csv") return ExportFormat::kCsv;
  if (s == "ndjson") return ExportFormat::kNdjson;
  throw InvalidArgument(fmt::format("unknown export format '{}'", s));
}

std::string export_records(const Store& store, const Corpus& corpus, const AggregateQuery& filter, ExportFormat format) {
  std::string out;
  if (format == ExportFormat::kCsv) {
    out = csv::format_row({"article_id", "publisher_id", "date", "best_rank", "url", "title", "category", "topic",
                           "subtopic", "news_type", "lean", "tone", "headline_lean", "headline_tone", "event_id",
                           "corrected"}) +
          "\n";
  }
  for (const AnalyzedArticle& a : corpus.articles) {
    if (!matches(filter, a)) continue;
    const LabelSet* labels = a.labels(filter.use_overlays);
    if (format == ExportFormat::kNdjson) {
      Json doc = canonical_record(a.article, a.model_labels ? &*a.model_labels : nullptr, a.sentences,
                                  load_quotes(store, a.article.article_id));
      if (filter.use_overlays && a.corrected_labels) {
        Json c = to_document(*a.corrected_labels);
        c.erase("article_id");
        doc["corrected_labels"] = std::move(c);
      }
      doc["event_id"] = a.event_id ? Json(*a.event_id) : Json(nullptr);
      out += doc.dump() + "\n";
      continue;
    }
    bool corrected = filter.use_overlays && a.corrected_labels.has_value();
    out += csv::format_row({a.article.article_id, a.article.publisher_id, format_date(a.day()),
                            std::to_string(a.article.best_rank), a.article.canonical_url, a.article.title,
                            labels->category, labels->topic, labels->subtopic, std::string(to_string(labels->news_type)),
                            std::to_string(labels->lean.score.value()), std::to_string(labels->tone.score.value()),
                            std::to_string(labels->headline_lean.score.value()),
                            std::to_string(labels->headline_tone.score.value()), a.event_id.value_or(""),
                            corrected ? "true" : "false"}) +
           "\n";
  }
  return out;
}

std::size_t import_articles(Store& store, std::string_view ndjson) {
  std::vector<Article> articles;
  for (std::string_view line : ndjson_lines(ndjson)) articles.push_back(article_from_document(Json::parse(line)));
  std::size_t changed = 0;
  store.transaction([&] {
    std::map<std::string, std::set<std::string>> by_day;
    for (const Article& a : articles) {
      if (store.put(kinds::kArticle, a.article_id, to_document(a))) ++changed;
      by_day[format_date(a.first_seen_snapshot.date)].insert(a.article_id);
    }
    for (auto& [day, ids] : by_day) {
      for (const std::string& id : day_article_ids(store, parse_date(day))) ids.insert(id);
      store.put(kinds::kDayArticles, day, Json{{"date", day}, {"article_ids", std::vector<std::string>(ids.begin(), ids.end())}});
    }
  });
  return changed;
}

std::size_t import_event_table(Store& store, const Json& table) {
  CivilDate date = parse_date(require_string(table, "date", false));
  const Json& rows = require_field(table, "events");
  if (!rows.is_array() || rows.empty()) throw SchemaError("events", "empty");
  std::vector<EventCluster> events;
  for (const Json& row : rows) {
    EventCluster e;
    e.day = date;
    e.theme = require_string(row, "theme", false);
    long long count = require_integer(row, "count");
    if (count < 1) throw SchemaError("count", "out-of-range");
    e.reported_count = static_cast<int>(count);
    std::string short_theme = row.value("theme_short", e.theme);
    std::vector<std::string> words = text::words(short_theme);
    e.theme_short_truncated = words.size() > kThemeShortMaxWords;
    if (e.theme_short_truncated) words.resize(kThemeShortMaxWords);
    e.theme_short = text::join(words, " ");
    e.event_id = short_digest("table-event\n" + format_date(date) + "\n" + e.theme);
    events.push_back(std::move(e));
  }
  std::stable_sort(events.begin(), events.end(), [](const EventCluster& a, const EventCluster& b) {
    return a.article_count() != b.article_count() ? a.article_count() > b.article_count() : a.event_id < b.event_id;
  });
  ClusterDayIndex idx;
  idx.date = date;
  if (auto it = table.find("total_articles"); it != table.end() && !it->is_null()) idx.reported_total = it->get<long long>();
  std::set<std::string> seen;
  for (const EventCluster& e : events) {
    if (!seen.insert(e.event_id).second) throw SchemaError("theme", "duplicate", e.theme);
    idx.event_ids.push_back(e.event_id);
  }
  store.transaction([&] {
    for (const EventCluster& e : events) store.put(kinds::kEvent, e.event_id, to_document(e));
    store.put(kinds::kClusterDay, format_date(date), to_document(idx));
  });
  return events.size();
}

}  // namespace biaslens

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

#include "biaslens/store/pipeline.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>

#include "biaslens/ingest/dedupe.hpp"
#include "biaslens/ingest/schedule.hpp"

namespace biaslens {
namespace {


void note(const RunDayOptions& o, const std::string& msg) {
  if (o.progress) o.progress(msg);
}

Json snapshot_document(const HomepageSnapshot& s) {
  Json items = Json::array();
  for (const SnapshotItem& i : s.items) {
    items.push_back({{"url", i.url},
                     {"title", i.title},
                     {"y_offset", i.y_offset},
                     {"font_size", i.font_size},
                     {"image_area", i.image_area},
                     {"rank", i.rank}});
  }
  return Json{{"ref", to_document(s.ref)}, {"items", std::move(items)}};
}

void write_day_index(Store& store, CivilDate date, const std::set<std::string>& ids) {
  store.put(kinds::kDayArticles, format_date(date),
            Json{{"date", format_date(date)}, {"article_ids", std::vector<std::string>(ids.begin(), ids.end())}});
}

Article merge_seen(Article a, const ArticleCandidate& c) {
  a.best_rank = std::min(a.best_rank, c.best_rank);
  if (c.first_seen.captured_at < a.first_seen_snapshot.captured_at) a.first_seen_snapshot = c.first_seen;
  return a;
}

StageCounters ingest_stage(Store& store, const PipelineDeps& deps, CivilDate date, const RunDayOptions& o,
                           StageCounters& c) {
  if (!deps.snapshots || !deps.pages) throw Error("ingest needs a snapshot source and a page source");
  std::vector<Publisher> publishers;
  for (const Publisher& p : deps.publishers.enabled()) {
    if (!o.publisher || *o.publisher == p.id) publishers.push_back(p);
  }
  if (o.publisher && publishers.empty()) throw NotFound(fmt::format("no enabled publisher '{}'", *o.publisher));

  std::map<std::string, std::vector<HomepageSnapshot>> by_publisher;
  for (const SnapshotJob& job : plan_day(date, publishers, deps.snapshot)) {
    try {
      by_publisher[job.publisher_id].push_back(capture_snapshot(store, deps, job));
    } catch (const Error& e) {
      ++c.dead_lettered;
      note(o, fmt::format("snapshot {}@{} failed: {}", job.publisher_id, format_timestamp(job.due_utc), e.what()));
    }
  }

  std::vector<std::string> existing = day_article_ids(store, date);
  std::set<std::string> ids(existing.begin(), existing.end());
  for (const auto& [publisher_id, snaps] : by_publisher) {
    for (const ArticleCandidate& cand : dedupe_and_merge(snaps)) {
      if (cand.best_rank > deps.snapshot.top_k_labeled) continue;
      ++c.items_in;
      if (std::optional<Article> stored = load_article(store, cand.article_id)) {
        store.put(kinds::kArticle, cand.article_id, to_document(merge_seen(*stored, cand)));
        ids.insert(cand.article_id);
        ++c.items_out;
        continue;
      }
      CleanedArticle page;
      try {
        page = fetch_and_clean(cand.canonical_url, deps.cleaning, *deps.pages);
      } catch (const FetchError& e) {
        store.put(kinds::kFetchFailure, cand.article_id,
                  Json{{"article_id", cand.article_id}, {"publisher_id", cand.publisher_id}, {"url", cand.canonical_url},
                       {"kind", to_string(e.kind())}, {"detail", e.what()}, {"date", format_date(date)}});
        ++c.dead_lettered;
        note(o, fmt::format("fetch {} failed: {}", cand.canonical_url, e.what()));
        continue;
      }
      Article a;
      a.article_id = cand.article_id;
      a.publisher_id = cand.publisher_id;
      a.canonical_url = cand.canonical_url;
      a.title = page.title.empty() ? cand.title : page.title;
      a.body = page.body;
      a.published_at = page.published_at;
      a.first_seen_snapshot = cand.first_seen;
      a.best_rank = cand.best_rank;
      store.put(kinds::kArticle, a.article_id, to_document(a));
      ids.insert(a.article_id);
      ++c.items_out;
    }
  }
  write_day_index(store, date, ids);
  return c;
}

Json list_document(std::string_view article_id, const char* key, const Json& items) {
  return Json{{"article_id", article_id}, {key, items}};
}

enum class LabelOutcome { kWritten, kUnchanged, kDeadLettered };

// Labels one article and stores all its outputs atomically.
LabelOutcome label_one(Store& store, const PipelineDeps& deps, const Labeler& labeler, const Article& a) {
  LabelSet labels;
  std::vector<SentenceRecord> sentences;
  std::vector<QuoteRecord> quotes;
  try {
    labels = labeler.label_article(a);
    sentences = labeler.label_sentences(a, split_article(a.article_id, a.body));
    quotes = labeler.extract_quotes(a);
  } catch (const DeadLetterError& e) {
    const DeadLetter& l = e.letter();
    Json doc = to_document(l);
    doc["resolved"] = false;
    store.put(kinds::kDeadLetter, fmt::format("{}:{}", a.article_id, l.stage), doc);
    return LabelOutcome::kDeadLettered;
  } catch (const InvalidArgument& e) {
    // Empty body or no sentences: nothing the provider could label.
    Json doc = to_document(DeadLetter{a.article_id, "article", e.what(), "", deps.clock()});
    doc["resolved"] = false;
    store.put(kinds::kDeadLetter, a.article_id + ":article", doc);
    return LabelOutcome::kDeadLettered;
  }
  if (std::optional<LabelSet> old = load_labels(store, a.article_id, deps.hierarchy)) {
    LabelSet probe = labels;
    probe.labeled_at = old->labeled_at;
    if (probe == *old) labels.labeled_at = old->labeled_at;
  }
  bool changed = false;
  store.transaction([&] {
    changed |= store.put(kinds::kLabels, a.article_id, to_document(labels));
    Json s = Json::array();
    for (const SentenceRecord& r : sentences) s.push_back(to_document(r));
    changed |= store.put(kinds::kSentences, a.article_id, list_document(a.article_id, "sentences", s));
    Json q = Json::array();
    for (const QuoteRecord& r : quotes) q.push_back(to_document(r));
    changed |= store.put(kinds::kQuotes, a.article_id, list_document(a.article_id, "quotes", q));
    for (StoredRecord& letter : store.latest_with_prefix(kinds::kDeadLetter, a.article_id + ":")) {
      if (letter.body.value("resolved", false)) continue;
      letter.body["resolved"] = true;
      store.put(kinds::kDeadLetter, letter.id, letter.body);
    }
  });
  return changed ? LabelOutcome::kWritten : LabelOutcome::kUnchanged;
}

bool label_stage(Store& store, const PipelineDeps& deps, CivilDate date, const RunDayOptions& o, StageCounters& c) {
  if (!deps.llm) throw Error("label stage needs an LLM provider");
  Labeler labeler(*deps.llm, deps.hierarchy, deps.labeler, deps.clock);
  bool changed = false;
  for (const std::string& id : day_article_ids(store, date)) {
    std::optional<Article> a = load_article(store, id);
    if (!a) throw CorruptRecord(fmt::format("day index names missing article '{}'", id));
    if (o.publisher && a->publisher_id != *o.publisher) continue;
    if (!o.relabel && store.latest(kinds::kLabels, id)) continue;
    ++c.items_in;
    switch (label_one(store, deps, labeler, *a)) {
      case LabelOutcome::kWritten:
        changed = true;
        ++c.items_out;
        break;
      case LabelOutcome::kUnchanged:
        ++c.items_out;
        break;
      case LabelOutcome::kDeadLettered:
        ++c.dead_lettered;
        note(o, fmt::format("article {} dead-lettered", id));
        break;
    }
  }
  return changed;
}

void cluster_stage(Store& store, const PipelineDeps& deps, CivilDate date, StageCounters& c) {
  if (!deps.llm || !deps.embedder) throw Error("cluster stage needs an LLM provider and an embedding provider");
  std::vector<DayArticle> articles;
  for (const std::string& id : day_article_ids(store, date)) {
    std::optional<LabelSet> labels = load_labels(store, id, deps.hierarchy);
    if (!labels) continue;
    std::optional<Article> a = load_article(store, id);
    if (!a) throw CorruptRecord(fmt::format("day index names missing article '{}'", id));
    articles.push_back({std::move(*a), std::move(labels), load_sentences(store, id)});
  }
  c.items_in = static_cast<long long>(articles.size());
  PromptRunner runner(*deps.llm, deps.labeler.runner, deps.clock);
  DayClusteringOptions options;
  options.config = deps.clustering;
  DayClustering result = cluster_day(date, articles, *deps.embedder, runner, options);
  store_clustering(store, date, result);
  for (const EventCluster& e : result.events) c.items_out += static_cast<long long>(e.member_article_ids.size());
}

// Wraps one stage in a PipelineRun. Returns the report; never throws for
// stage errors.
template <typename Fn>
StageReport run_stage(Store& store, CivilDate date, StageName stage, Fn&& fn) {
  StageReport r;
  r.stage = stage;
  PipelineRun run = store.create_run(date, stage);
  r.run_id = run.run_id;
  store.update_run(run, RunStatus::kRunning, {});
  StageCounters c;
  try {
    fn(c);
    store.update_run(run, RunStatus::kDone, c);
  } catch (const std::exception& e) {
    r.error = e.what();
    store.update_run(run, RunStatus::kFailed, c, r.error);
  }
  r.status = run.status;
  r.counters = c;
  return r;
}

bool wants(const RunDayOptions& o, StageName s) { return std::find(o.stages.begin(), o.stages.end(), s) != o.stages.end(); }

}  // namespace

HomepageSnapshot capture_snapshot(Store& store, const PipelineDeps& deps, const SnapshotJob& job) {
  if (!deps.snapshots) throw Error("no snapshot source configured");
  const Publisher& pub = deps.publishers.get(job.publisher_id);
  std::string snap_id = fmt::format("{}@{}", job.publisher_id, format_timestamp(job.due_utc));
  std::vector<SnapshotItem> raw;
  try {
    raw = deps.snapshots->capture(pub, job.ref());
  } catch (const Error& e) {
    store.put(kinds::kFetchFailure, "snapshot:" + snap_id,
              Json{{"publisher_id", job.publisher_id}, {"url", pub.homepage_url}, {"kind", "snapshot"},
                   {"detail", e.what()}, {"date", format_date(job.date)}});
    throw;
  }
  HomepageSnapshot snap = rank_snapshot(job.ref(), std::move(raw), deps.snapshot);
  store.put(kinds::kSnapshot, snap_id, snapshot_document(snap));
  return snap;
}

bool DayReport::ok() const {
  return std::all_of(stages.begin(), stages.end(), [](const StageReport& s) { return s.skipped || s.status == RunStatus::kDone; });
}

Json to_document(const DayReport& r) {
  Json stages = Json::array();
  for (const StageReport& s : r.stages) {
    stages.push_back({{"stage", to_string(s.stage)},
                      {"status", s.skipped ? "skipped" : std::string(to_string(s.status))},
                      {"run_id", s.run_id},
                      {"items_in", s.counters.items_in},
                      {"items_out", s.counters.items_out},
                      {"dead_lettered", s.counters.dead_lettered},
                      {"error", s.error}});
  }
  return Json{{"date", format_date(r.date)}, {"ok", r.ok()},   {"articles", r.articles}, {"labeled", r.labeled},
              {"events", r.events},          {"facts", r.facts}, {"stages", std::move(stages)}};
}

DayReport run_day(Store& store, const PipelineDeps& deps, CivilDate date, const RunDayOptions& o) {
  DayReport report;
  report.date = date;
  bool labels_changed = false;
  auto finish = [&](StageReport s) {
    report.stages.push_back(s);
    if (o.after_stage) o.after_stage(s);
    return s.skipped || s.status == RunStatus::kDone;
  };
  bool ok = true;
  if (ok && wants(o, StageName::kIngest)) {
    note(o, "ingest " + format_date(date));
    ok = finish(run_stage(store, date, StageName::kIngest, [&](StageCounters& c) { ingest_stage(store, deps, date, o, c); }));
  }
  if (ok && wants(o, StageName::kLabel)) {
    note(o, "label " + format_date(date));
    ok = finish(run_stage(store, date, StageName::kLabel,
                          [&](StageCounters& c) { labels_changed = label_stage(store, deps, date, o, c); }));
  }
  if (ok && wants(o, StageName::kCluster)) {
    bool current = load_cluster_day(store, date).has_value() && !labels_changed && !o.relabel;
    bool forced = !wants(o, StageName::kLabel);
    if (current && !forced) {
      StageReport s;
      s.stage = StageName::kCluster;
      s.skipped = true;
      s.status = RunStatus::kDone;
      ok = finish(s);
    } else {
      note(o, "cluster " + format_date(date));
      ok = finish(run_stage(store, date, StageName::kCluster, [&](StageCounters& c) { cluster_stage(store, deps, date, c); }));
    }
  }
  for (const std::string& id : day_article_ids(store, date)) {
    ++report.articles;
    if (store.latest(kinds::kLabels, id)) ++report.labeled;
  }
  if (std::optional<ClusterDayIndex> idx = load_cluster_day(store, date)) {
    report.events = idx->event_ids.size();
    report.facts = idx->fact_ids.size();
  }
  return report;
}

StageReport retry_dead_letters(Store& store, const PipelineDeps& deps) {
  if (!deps.llm) throw Error("retry needs an LLM provider");
  std::set<std::string> articles;
  for (const StoredRecord& r : store.all_latest(kinds::kDeadLetter)) {
    if (!r.body.value("resolved", false)) articles.insert(r.body.at("item_id").get<std::string>());
  }
  CivilDate today = TimeZone(deps.snapshot.timezone_rule).local_date(deps.clock());
  return run_stage(store, today, StageName::kLabel, [&](StageCounters& c) {
    Labeler labeler(*deps.llm, deps.hierarchy, deps.labeler, deps.clock);
    for (const std::string& id : articles) {
      std::optional<Article> a = load_article(store, id);
      if (!a) continue;
      ++c.items_in;
      if (label_one(store, deps, labeler, *a) == LabelOutcome::kDeadLettered) {
        ++c.dead_lettered;
      } else {
        ++c.items_out;
      }
    }
  });
}

std::vector<std::string> day_article_ids(const Store& store, CivilDate date) {
  std::optional<StoredRecord> r = store.latest(kinds::kDayArticles, format_date(date));
  if (!r) return {};
  return r->body.at("article_ids").get<std::vector<std::string>>();
}

std::optional<Article> load_article(const Store& store, std::string_view id) {
  std::optional<StoredRecord> r = store.latest(kinds::kArticle, id);
  if (!r) return std::nullopt;
  return article_from_document(r->body);
}

std::optional<LabelSet> load_labels(const Store& store, std::string_view id, const TopicHierarchy& hierarchy) {
  std::optional<StoredRecord> r = store.latest(kinds::kLabels, id);
  if (!r) return std::nullopt;
  int version = r->body.value("hierarchy_version", hierarchy.version());
  const TopicHierarchy h = version == hierarchy.version() ? hierarchy : hierarchy.at_version(version);
  return validate_label_set(r->body, h);
}

std::vector<SentenceRecord> load_sentences(const Store& store, std::string_view id) {
  std::vector<SentenceRecord> out;
  std::optional<StoredRecord> r = store.latest(kinds::kSentences, id);
  if (!r) return out;
  for (const Json& s : r->body.at("sentences")) out.push_back(sentence_from_document(s));
  check_sentence_sequence(out);
  return out;
}

std::vector<QuoteRecord> load_quotes(const Store& store, std::string_view id) {
  std::vector<QuoteRecord> out;
  std::optional<StoredRecord> r = store.latest(kinds::kQuotes, id);
  if (!r) return out;
  for (const Json& q : r->body.at("quotes")) out.push_back(quote_from_document(q));
  return out;
}

Json to_document(const ClusterDayIndex& i) {
  Json doc{{"date", format_date(i.date)}, {"event_ids", i.event_ids}, {"fact_ids", i.fact_ids},
           {"unclustered", i.unclustered}, {"warnings", i.warnings}};
  doc["reported_total"] = i.reported_total ? Json(*i.reported_total) : Json(nullptr);
  return doc;
}

ClusterDayIndex cluster_day_index_from_document(const Json& doc) {
  ClusterDayIndex i;
  i.date = parse_date(require_string(doc, "date", false));
  i.event_ids = require_field(doc, "event_ids").get<std::vector<std::string>>();
  i.fact_ids = doc.value("fact_ids", std::vector<std::string>{});
  i.unclustered = doc.value("unclustered", std::vector<std::string>{});
  i.warnings = doc.value("warnings", std::vector<std::string>{});
  if (auto it = doc.find("reported_total"); it != doc.end() && !it->is_null()) i.reported_total = it->get<long long>();
  return i;
}

std::optional<ClusterDayIndex> load_cluster_day(const Store& store, CivilDate date) {
  std::optional<StoredRecord> r = store.latest(kinds::kClusterDay, format_date(date));
  if (!r) return std::nullopt;
  return cluster_day_index_from_document(r->body);
}

void store_clustering(Store& store, CivilDate date, const DayClustering& result) {
  ClusterDayIndex idx;
  idx.date = date;
  idx.unclustered = result.unclustered;
  idx.warnings = result.warnings;
  for (const EventCluster& e : result.events) idx.event_ids.push_back(e.event_id);
  for (const FactCluster& f : result.facts) idx.fact_ids.push_back(f.fact_id);
  store.transaction([&] {
    for (const EventCluster& e : result.events) store.put(kinds::kEvent, e.event_id, to_document(e));
    for (const FactCluster& f : result.facts) store.put(kinds::kFact, f.fact_id, to_document(f));
    store.put(kinds::kClusterDay, format_date(date), to_document(idx));
  });
}

}  // namespace biaslens

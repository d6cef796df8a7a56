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

#include "biaslens/store/validation_store.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>

#include "biaslens/store/queries.hpp"
#include "biaslens/util/digest.hpp"

namespace biaslens {
namespace {

Json article_header(const AnalyzedArticle& a) {
  return Json{{"article_id", a.article.article_id},
              {"title", a.article.title},
              {"url", a.article.canonical_url},
              {"publisher_id", a.article.publisher_id},
              {"date", format_date(a.day())}};
}

std::vector<KindedResponse> kinded(const std::vector<StoredResponse>& responses) {
  std::vector<KindedResponse> out;
  for (const StoredResponse& r : responses) out.push_back({r.task.kind, r.response});
  return out;
}

// The validator's label, or nullopt when the response carries none usable.
std::optional<std::string> human_label(const StoredResponse& r) {
  const std::string model = r.task.payload.value("model", "");
  if (r.response.verdict == Verdict::kAgree || r.response.verdict == Verdict::kSomewhatAgree) return model;
  if (!is_disagreement(r.response.verdict) || !r.response.corrected_label) return std::nullopt;
  const Json& c = *r.response.corrected_label;
  switch (r.task.kind) {
    case TaskKind::kArticleLean:
      return std::to_string(c.at("lean").get<int>());
    case TaskKind::kArticleTone:
      return std::to_string(c.at("tone").get<int>());
    case TaskKind::kArticleType:
      return c.at("news_type").get<std::string>();
    case TaskKind::kTopic:
      if (c.contains("proposed_topic")) return std::nullopt;
      return c.at("topic").get<std::string>();
    default:
      return std::nullopt;
  }
}

std::optional<std::string> optional_event(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return std::nullopt;
}

}  // namespace

const std::vector<TaskKind>& article_task_kinds() {
  static const std::vector<TaskKind> kinds{TaskKind::kTopic, TaskKind::kArticleLean, TaskKind::kArticleTone,
                                           TaskKind::kArticleType, TaskKind::kSentence};
  return kinds;
}

std::string make_task_id(std::string_view batch_id, TaskKind kind, std::string_view item_id, int round) {
  return "t" + short_digest(fmt::format("task\n{}\n{}\n{}\n{}", batch_id, to_string(kind), item_id, round));
}

Json task_payload(TaskKind kind, const AnalyzedArticle& a) {
  if (!a.model_labels) throw InvalidArgument(fmt::format("article '{}' has no labels to validate", a.article.article_id));
  const LabelSet& l = *a.model_labels;
  Json p = article_header(a);
  switch (kind) {
    case TaskKind::kTopic:
      p["category"] = l.category;
      p["topic"] = l.topic;
      p["subtopic"] = l.subtopic;
      p["model"] = l.topic;
      break;
    case TaskKind::kArticleLean:
      p["lean"] = l.lean.score.value();
      p["reason"] = l.lean.reason;
      p["model"] = std::to_string(l.lean.score.value());
      break;
    case TaskKind::kArticleTone:
      p["tone"] = l.tone.score.value();
      p["reason"] = l.tone.reason;
      p["model"] = std::to_string(l.tone.score.value());
      break;
    case TaskKind::kArticleType:
      p["news_type"] = to_string(l.news_type);
      p["justification"] = l.news_type_justification;
      p["model"] = to_string(l.news_type);
      break;
    case TaskKind::kSentence: {
      Json s = Json::array();
      for (const SentenceRecord& r : a.sentences) {
        s.push_back({{"sentence", r.index}, {"text", r.text}, {"type", to_string(r.type)}, {"tone", to_string(r.tone)},
                     {"focus", to_string(r.focus)}});
      }
      p["sentences"] = std::move(s);
      break;
    }
    case TaskKind::kEventMembership:
      p["event_id"] = a.event_id ? Json(*a.event_id) : Json(nullptr);
      p["model"] = a.event_id.value_or("none");
      break;
  }
  return p;
}

TaskBatch sample_validation_batch(Store& store, const Corpus& corpus, const StratificationSpec& spec, std::uint64_t seed,
                                  const std::vector<TaskKind>& kinds, int rounds) {
  if (rounds < 1) throw InvalidArgument("rounds must be at least 1");
  if (kinds.empty()) throw InvalidArgument("no task kinds requested");
  std::vector<SampleCandidate> candidates;
  std::map<std::string, const AnalyzedArticle*> by_id;
  for (const AnalyzedArticle& a : corpus.articles) {
    if (!a.model_labels) continue;
    candidates.push_back({a.article.article_id, a.model_labels->lean.score.value(), a.model_labels->tone.score.value()});
    by_id[a.article.article_id] = &a;
  }
  if (candidates.empty()) throw InvalidArgument("no labeled articles to sample");
  TaskBatch batch;
  batch.batch_id = fmt::format("seed-{}", seed);
  batch.sample = sample_stratified(std::move(candidates), spec, seed);
  for (const SampledItem& item : batch.sample.items) {
    const AnalyzedArticle& a = *by_id.at(item.candidate.article_id);
    for (TaskKind kind : kinds) {
      if (kind == TaskKind::kSentence && a.sentences.empty()) continue;
      Json payload = task_payload(kind, a);
      payload["cell"] = {item.lean_bucket, item.tone_bucket};
      for (int round = 0; round < rounds; ++round) {
        StoredTask t;
        t.task = {make_task_id(batch.batch_id, kind, a.article.article_id, round), kind, a.article.article_id, payload, ""};
        t.batch_id = batch.batch_id;
        t.round = round;
        batch.tasks.push_back(t);
      }
    }
  }
  store.transaction([&] {
    for (const StoredTask& t : batch.tasks) store.add_task(t);
  });
  return batch;
}

TaskBatch event_membership_tasks(Store& store, const Corpus& corpus, CivilDate date, int rounds) {
  if (rounds < 1) throw InvalidArgument("rounds must be at least 1");
  std::map<std::string, const EventCluster*> events;
  for (const EventCluster& e : corpus.events) events[e.event_id] = &e;
  TaskBatch batch;
  batch.batch_id = "events-" + format_date(date);
  for (const AnalyzedArticle& a : corpus.articles) {
    if (a.day() != date || !a.model_labels) continue;
    Json payload = task_payload(TaskKind::kEventMembership, a);
    if (a.event_id) {
      const EventCluster* e = events.at(*a.event_id);
      payload["theme"] = e->theme;
      payload["theme_short"] = e->theme_short;
    }
    for (int round = 0; round < rounds; ++round) {
      StoredTask t;
      t.task = {make_task_id(batch.batch_id, TaskKind::kEventMembership, a.article.article_id, round),
                TaskKind::kEventMembership, a.article.article_id, payload, ""};
      t.batch_id = batch.batch_id;
      t.round = round;
      batch.tasks.push_back(std::move(t));
    }
  }
  if (batch.tasks.empty()) throw InvalidArgument(fmt::format("no labeled articles on {}", format_date(date)));
  store.transaction([&] {
    for (const StoredTask& t : batch.tasks) store.add_task(t);
  });
  return batch;
}

SubmitResult submit_response(Store& store, const TopicHierarchy& hierarchy, std::string_view task_id, const Json& body) {
  std::optional<StoredTask> t = store.task(task_id);
  if (!t) throw NotFound(fmt::format("unknown task '{}'", task_id));
  if (!body.is_object()) throw SchemaError("body", "wrong-type");
  Json doc = body;
  if (doc.contains("task_id") && doc["task_id"] != task_id) throw SchemaError("task_id", "mismatch");
  doc["task_id"] = task_id;
  doc.erase("submitted_at");
  SubmitResult out;
  out.response = response_from_document(doc);
  out.response.submitted_at = store.now();
  check_response(t->task, out.response, hierarchy);
  store.transaction([&] {
    store.complete_task(task_id, out.response.annotator_id);
    Json stored = to_document(out.response);
    stored["kind"] = to_string(t->task.kind);
    stored["item_id"] = t->task.item_id;
    store.put(kinds::kResponse, task_id, stored);
    ValidationTask task = t->task;
    task.annotator_id = out.response.annotator_id;
    out.changes = plan_corrections({{task, out.response}}, load_overlays(store, task.item_id), load_proposals(store));
    for (const Overlay& o : out.changes.overlays) store.put(kinds::kOverlay, overlay_key(o), to_document(o));
    for (const TopicProposal& p : out.changes.proposals) store.put(kinds::kProposal, p.proposal_id, to_document(p));
  });
  return out;
}

std::vector<StoredResponse> load_responses(const Store& store) {
  std::vector<StoredResponse> out;
  for (const StoredRecord& r : store.all_latest(kinds::kResponse)) {
    std::optional<StoredTask> t = store.task(r.id);
    if (!t) throw CorruptRecord(fmt::format("response for missing task '{}'", r.id));
    out.push_back({t->task, response_from_document(r.body)});
  }
  return out;
}

std::optional<AgreementReport> agreement_from_store(const Store& store, TaskKind kind) {
  std::vector<KindedResponse> responses = kinded(load_responses(store));
  bool any = std::any_of(responses.begin(), responses.end(), [&](const KindedResponse& r) { return r.kind == kind; });
  if (!any) return std::nullopt;
  return agreement_report(responses, kind);
}

std::vector<std::string> label_space(TaskKind kind, const TopicHierarchy& hierarchy) {
  std::vector<std::string> out;
  switch (kind) {
    case TaskKind::kTopic:
      return hierarchy.topics();
    case TaskKind::kArticleLean:
    case TaskKind::kArticleTone:
      for (int v = LikertScore::kMin; v <= LikertScore::kMax; ++v) out.push_back(std::to_string(v));
      return out;
    case TaskKind::kArticleType:
      for (const auto& [v, name] : EnumNames<NewsType>::kValues) out.emplace_back(name);
      return out;
    default:
      throw InvalidArgument(fmt::format("no confusion matrix for {}", to_string(kind)));
  }
}

std::optional<ConfusionMatrix> confusion_from_store(const Store& store, TaskKind kind, const TopicHierarchy& hierarchy) {
  std::vector<std::string> space = label_space(kind, hierarchy);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const StoredResponse& r : load_responses(store)) {
    if (r.task.kind != kind) continue;
    std::optional<std::string> human = human_label(r);
    if (!human) continue;
    pairs.emplace_back(r.task.payload.value("model", ""), *human);
  }
  if (pairs.empty()) return std::nullopt;
  return confusion_matrix(pairs, space);
}

ClusterPrf cluster_prf_from_store(const Store& store, CivilDate date) {
  std::optional<ClusterDayIndex> idx = load_cluster_day(store, date);
  if (!idx) throw NotFound(fmt::format("no clustering for {}", format_date(date)));
  std::set<std::string> events(idx->event_ids.begin(), idx->event_ids.end());
  std::map<std::string, std::string> assignments;
  std::map<std::string, std::map<std::optional<std::string>, int>> tallies;
  for (const StoredResponse& r : load_responses(store)) {
    if (r.task.kind != TaskKind::kEventMembership || r.task.payload.value("date", "") != format_date(date)) continue;
    std::optional<std::string> assigned = optional_event(r.task.payload.value("event_id", Json(nullptr)));
    if (assigned) assignments[r.task.item_id] = *assigned;
    std::optional<std::string> verdict =
        is_disagreement(r.response.verdict) ? optional_event(r.response.corrected_label->at("event_id")) : assigned;
    ++tallies[r.task.item_id][verdict];
  }
  std::map<std::string, std::optional<std::string>> verdicts;
  for (const auto& [item, counts] : tallies) {
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    verdicts[item] = best->first;
  }
  return cluster_prf(assignments, verdicts, events);
}

}  // namespace biaslens

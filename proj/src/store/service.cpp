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

#include "biaslens/store/service.hpp"

#include <fmt/format.h>
#include <httplib.h>

#include <algorithm>
#include <set>

#include "biaslens/analytics/aggregate.hpp"
#include "biaslens/analytics/reports.hpp"
#include "biaslens/store/queries.hpp"
#include "biaslens/store/validation_store.hpp"
#include "biaslens/util/files.hpp"
#include "biaslens/util/strings.hpp"

namespace biaslens {
namespace {

HttpResponse json_response(int status, const Json& doc) { return {status, "application/json", doc.dump()}; }

HttpResponse error_response(int status, const std::string& message, const std::string& field = {},
                            const std::string& reason = {}) {
  Json err{{"status", status}, {"message", message}};
  if (!field.empty()) err["field"] = field;
  if (!reason.empty()) err["reason"] = reason;
  return json_response(status, Json{{"error", err}});
}

std::vector<std::string> segments(std::string_view path) {
  std::vector<std::string> out;
  for (std::string& s : text::split(path, '/')) {
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

std::optional<std::string> param(const HttpRequest& r, const char* name) {
  auto it = r.query.find(name);
  if (it == r.query.end() || it->second.empty()) return std::nullopt;
  return it->second;
}

std::string required_param(const HttpRequest& r, const char* name) {
  std::optional<std::string> v = param(r, name);
  if (!v) throw SchemaError(name, "missing", fmt::format("query parameter '{}' is required", name));
  return *v;
}

CivilDate date_param(const HttpRequest& r, const char* name) {
  try {
    return parse_date(required_param(r, name));
  } catch (const InvalidArgument& e) {
    throw SchemaError(name, "malformed", e.what());
  }
}

bool bool_param(const HttpRequest& r, const char* name, bool fallback) {
  std::optional<std::string> v = param(r, name);
  if (!v) return fallback;
  if (*v == "true" || *v == "1") return true;
  if (*v == "false" || *v == "0") return false;
  throw SchemaError(name, "malformed", "expected true or false");
}

Json list_param(const std::string& v) {
  Json out = Json::array();
  for (const std::string& s : text::split(v, ',')) {
    if (!s.empty()) out.push_back(s);
  }
  return out;
}

Json task_document(const StoredTask& t) {
  Json doc = to_document(t.task);
  doc["batch_id"] = t.batch_id;
  doc["round"] = t.round;
  doc["claimed_at"] = t.claimed_at ? Json(format_timestamp(*t.claimed_at)) : Json(nullptr);
  return doc;
}

const char* mime_type(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  if (ext == ".html") return "text/html; charset=utf-8";
  if (ext == ".js") return "text/javascript";
  if (ext == ".css") return "text/css";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".json") return "application/json";
  if (ext == ".png") return "image/png";
  return "application/octet-stream";
}

// Article counts per score value of each row of a count table.
Json colored_rows(const AggregateQuery& q, const Corpus& corpus, const AggregateTable& counts, bool by_lean) {
  std::map<std::vector<std::string>, Json> segments;
  for (int v = LikertScore::kMin; v <= LikertScore::kMax; ++v) {
    Corpus slice;
    slice.events = corpus.events;
    for (const AnalyzedArticle& a : corpus.articles) {
      const LabelSet* l = a.labels(q.use_overlays);
      if (l && (by_lean ? l->lean : l->tone).score.value() == v) slice.articles.push_back(a);
    }
    AggregateQuery plain = q;
    plain.measure = Measure::kCount;
    plain.weight_by_rank = false;
    for (const AggregateRow& r : aggregate(plain, slice).rows) segments[r.key][std::to_string(v)] = r.n;
  }
  Json rows = to_document(counts)["rows"];
  for (Json& row : rows) {
    auto it = segments.find(row["key"].get<std::vector<std::string>>());
    row["segments"] = it == segments.end() ? Json::object() : it->second;
  }
  return rows;
}

}  // namespace

ApiService::ApiService(Store& store, TopicHierarchy hierarchy, ServiceOptions options)
    : store_(store), hierarchy_(std::move(hierarchy)), options_(std::move(options)) {}

HttpResponse ApiService::handle(const HttpRequest& request) {
  std::lock_guard lock(mu_);
  try {
    return route(request);
  } catch (const NotFound& e) {
    return error_response(404, e.what());
  } catch (const SchemaError& e) {
    return error_response(400, e.what(), e.field(), e.reason());
  } catch (const InvalidArgument& e) {
    return error_response(400, e.what());
  } catch (const ClaimConflict& e) {
    return error_response(409, e.what());
  } catch (const Json::exception& e) {
    return error_response(400, e.what());
  } catch (const std::exception& e) {
    return error_response(500, e.what());
  }
}

HttpResponse ApiService::route(const HttpRequest& req) {
  std::vector<std::string> seg = segments(req.path);
  static const std::set<std::string> kApiRoots{"schema", "coverage", "events", "articles", "tasks", "reports"};
  if (seg.empty() || !kApiRoots.count(seg[0])) {
    if (req.method != "GET") return error_response(405, "method not allowed");
    return serve_static(req.path);
  }
  if (options_.api_token) {
    auto it = req.headers.find("authorization");
    if (it == req.headers.end() || it->second != "Bearer " + *options_.api_token) {
      return error_response(401, "missing or invalid bearer token");
    }
  }
  const std::string& root = seg[0];

  if (req.method == "POST") {
    if (root == "tasks" && seg.size() == 3 && seg[2] == "response") {
      Json body;
      try {
        body = Json::parse(req.body);
      } catch (const Json::exception& e) {
        throw SchemaError("body", "malformed", e.what());
      }
      SubmitResult r = submit_response(store_, hierarchy_, seg[1], body);
      Json overlays = Json::array(), proposals = Json::array(), conflicts = Json::array();
      for (const Overlay& o : r.changes.overlays) overlays.push_back(to_document(o));
      for (const TopicProposal& p : r.changes.proposals) proposals.push_back(to_document(p));
      for (const CorrectionConflict& c : r.changes.conflicts) {
        conflicts.push_back({{"article_id", c.article_id}, {"kind", to_string(c.kind)}, {"overlay_ids", c.overlay_ids}});
      }
      return json_response(200, Json{{"response", to_document(r.response)},
                                     {"overlays", overlays},
                                     {"proposals", proposals},
                                     {"conflicts", conflicts}});
    }
    return error_response(seg.size() <= 3 && root == "tasks" ? 404 : 405, "no such endpoint");
  }
  if (req.method != "GET") return error_response(405, "method not allowed");

  if (root == "tasks") {
    if (seg.size() != 2 || seg[1] != "next") return error_response(404, "no such endpoint");
    std::string annotator = required_param(req, "annotator");
    std::optional<TaskKind> kind;
    if (auto k = param(req, "kind")) kind = parse_task_kind(*k);
    std::optional<StoredTask> t = store_.claim_next(annotator, kind, options_.claim_lease);
    return json_response(200, Json{{"task", t ? task_document(*t) : Json(nullptr)}});
  }

  HttpResponse out;
  store_.read_transaction([&] {
    if (root == "schema") {
      out = json_response(200, schema());
    } else if (root == "coverage" && seg.size() == 1) {
      Json q{{"group_by", list_param(param(req, "group_by").value_or("topic"))},
             {"measure", param(req, "measure").value_or("count")},
             {"use_overlays", bool_param(req, "use_overlays", true)},
             {"weight_by_rank", bool_param(req, "weight_by_rank", false)}};
      if (auto v = param(req, "from")) q["from"] = *v;
      if (auto v = param(req, "to")) q["to"] = *v;
      if (auto v = param(req, "publisher")) q["publishers"] = list_param(*v);
      if (auto v = param(req, "category")) q["categories"] = list_param(*v);
      if (auto v = param(req, "topic")) q["topics"] = list_param(*v);
      AggregateQuery query = aggregate_query_from_json(q);
      std::optional<std::string> color = param(req, "color_by");
      if (color && *color != "lean" && *color != "tone") throw SchemaError("color_by", "unknown-value", *color);
      Corpus corpus = load_corpus(store_, hierarchy_, query.from, query.to);
      AggregateTable table = aggregate(query, corpus);
      Json doc = to_document(table);
      if (color) {
        if (query.measure != Measure::kCount) throw SchemaError("color_by", "needs-count");
        doc["color_by"] = *color;
        doc["rows"] = colored_rows(query, corpus, table, *color == "lean");
      }
      doc["query"] = to_document(query);
      out = json_response(200, doc);
    } else if (root == "events" && seg.size() == 1) {
      CivilDate date = date_param(req, "date");
      std::optional<ClusterDayIndex> idx = load_cluster_day(store_, date);
      std::vector<EventCluster> events = load_events(store_, date, date);
      std::stable_sort(events.begin(), events.end(), [](const EventCluster& a, const EventCluster& b) {
        return a.article_count() != b.article_count() ? a.article_count() > b.article_count() : a.event_id < b.event_id;
      });
      Json list = Json::array();
      long long listed = 0;
      for (const EventCluster& e : events) {
        Json doc = to_document(e);
        doc["article_count"] = e.article_count();
        std::map<std::string, int> per_publisher;
        for (const std::string& m : e.member_article_ids) {
          if (std::optional<Article> a = load_article(store_, m)) ++per_publisher[a->publisher_id];
        }
        doc["publishers"] = per_publisher;
        listed += e.article_count();
        list.push_back(std::move(doc));
      }
      Json doc{{"date", format_date(date)}, {"events", list}, {"articles_in_events", listed}};
      doc["reported_total"] = idx && idx->reported_total ? Json(*idx->reported_total) : Json(nullptr);
      doc["unclustered"] = idx ? Json(idx->unclustered) : Json::array();
      out = json_response(200, doc);
    } else if (root == "events" && (seg.size() == 2 || (seg.size() == 3 && seg[2] == "facts"))) {
      std::optional<StoredRecord> e = store_.latest(kinds::kEvent, seg[1]);
      if (!e) throw NotFound(fmt::format("unknown event '{}'", seg[1]));
      EventCluster event = event_from_document(e->body);
      if (seg.size() == 2) {
        Json doc = to_document(event);
        doc["article_count"] = event.article_count();
        Json members = Json::array();
        for (const std::string& m : event.member_article_ids) {
          if (std::optional<Article> a = load_article(store_, m)) {
            members.push_back({{"article_id", m}, {"publisher_id", a->publisher_id}, {"title", a->title},
                               {"url", a->canonical_url}, {"best_rank", a->best_rank}});
          }
        }
        doc["members"] = members;
        out = json_response(200, doc);
        return;
      }
      std::map<std::string, std::vector<SentenceRecord>> sentences;
      std::map<std::string, Article> articles;
      Json facts = Json::array();
      for (const FactCluster& f : load_facts(store_, event.event_id)) {
        Json sources = Json::array();
        for (const SentenceKey& k : f.member_sentences) {
          if (!articles.count(k.article_id)) {
            std::optional<Article> a = load_article(store_, k.article_id);
            if (!a) throw CorruptRecord(fmt::format("fact {} cites missing article '{}'", f.fact_id, k.article_id));
            articles.emplace(k.article_id, std::move(*a));
            sentences[k.article_id] = load_sentences(store_, k.article_id);
          }
          const Article& a = articles.at(k.article_id);
          const auto& s = sentences.at(k.article_id);
          std::string text = k.index >= 1 && static_cast<std::size_t>(k.index) <= s.size() ? s[k.index - 1].text : "";
          sources.push_back({{"article_id", k.article_id}, {"sentence", k.index}, {"text", text},
                             {"publisher_id", a.publisher_id}, {"title", a.title}, {"url", a.canonical_url}});
        }
        Json doc = to_document(f);
        doc["size"] = f.member_sentences.size();
        doc["sources"] = std::move(sources);
        facts.push_back(std::move(doc));
      }
      out = json_response(200, Json{{"event_id", event.event_id}, {"theme", event.theme}, {"facts", facts}});
    } else if (root == "articles" && seg.size() == 2) {
      std::optional<Article> a = load_article(store_, seg[1]);
      if (!a) throw NotFound(fmt::format("unknown article '{}'", seg[1]));
      std::optional<LabelSet> labels = load_labels(store_, a->article_id, hierarchy_);
      std::vector<Overlay> overlays = load_overlays(store_, a->article_id);
      std::vector<SentenceRecord> sents = load_sentences(store_, a->article_id);
      Json doc{{"article", to_document(*a)}};
      doc["labels"] = labels ? to_document(*labels) : Json(nullptr);
      doc["label_versions"] = store_.history(kinds::kLabels, a->article_id).size();
      std::vector<Overlay> label_overlays, sentence_overlays;
      Json overlay_docs = Json::array();
      for (const Overlay& o : overlays) {
        overlay_docs.push_back(to_document(o));
        if (o.kind == TaskKind::kSentence) {
          sentence_overlays.push_back(o);
        } else if (o.kind != TaskKind::kEventMembership) {
          label_overlays.push_back(o);
        }
      }
      doc["overlays"] = overlay_docs;
      std::optional<LabelSet> corrected;
      if (labels && !label_overlays.empty()) corrected = apply_label_overlays(*labels, label_overlays, hierarchy_);
      doc["corrected_labels"] = corrected ? to_document(*corrected) : Json(nullptr);
      Json s = Json::array();
      for (const SentenceRecord& r : sents) s.push_back(to_document(r));
      doc["sentences"] = s;
      if (!sents.empty() && !sentence_overlays.empty()) {
        Json c = Json::array();
        for (const SentenceRecord& r : apply_sentence_overlays(sents, sentence_overlays)) c.push_back(to_document(r));
        doc["corrected_sentences"] = c;
      } else {
        doc["corrected_sentences"] = nullptr;
      }
      Json q = Json::array();
      for (const QuoteRecord& r : load_quotes(store_, a->article_id)) q.push_back(to_document(r));
      doc["quotes"] = q;
      doc["event_id"] = nullptr;
      for (const EventCluster& e : load_events(store_, a->first_seen_snapshot.date, a->first_seen_snapshot.date)) {
        if (e.member_article_ids.count(a->article_id)) doc["event_id"] = e.event_id;
      }
      out = json_response(200, doc);
    } else if (root == "reports" && seg.size() == 2 && seg[1] == "agreement") {
      std::vector<TaskKind> wanted;
      if (auto k = param(req, "kind")) {
        wanted.push_back(parse_task_kind(*k));
      } else {
        wanted = {TaskKind::kTopic,    TaskKind::kArticleLean, TaskKind::kArticleTone, TaskKind::kArticleType,
                  TaskKind::kSentence, TaskKind::kEventMembership};
      }
      Json reports = Json::array();
      for (TaskKind k : wanted) {
        std::optional<AgreementReport> r = agreement_from_store(store_, k);
        reports.push_back(r ? to_document(*r) : Json{{"dimension", to_string(k)}, {"n", 0}, {"levels", Json::array()}});
      }
      out = json_response(200, param(req, "kind") ? reports[0] : Json{{"reports", reports}});
    } else if (root == "reports" && seg.size() == 2 && seg[1] == "confusion") {
      TaskKind kind = parse_task_kind(param(req, "kind").value_or("topic"));
      std::optional<ConfusionMatrix> m = confusion_from_store(store_, kind, hierarchy_);
      Json doc = m ? to_document(*m) : Json{{"labels", label_space(kind, hierarchy_)}, {"counts", Json::array()},
                                            {"total", 0}, {"accuracy", nullptr}};
      doc["dimension"] = to_string(kind);
      out = json_response(200, doc);
    } else if (root == "reports" && seg.size() == 2 && seg[1] == "cluster-prf") {
      CivilDate date = date_param(req, "date");
      Json doc = to_document(cluster_prf_from_store(store_, date));
      doc["date"] = format_date(date);
      out = json_response(200, doc);
    } else {
      out = error_response(404, "no such endpoint");
    }
  });
  return out;
}

HttpResponse ApiService::serve_static(const std::string& path) const {
  if (options_.static_dir.empty()) return error_response(404, "no such endpoint");
  std::string rel = path.empty() || path == "/" ? "index.html" : path.substr(path.find_first_not_of('/'));
  std::filesystem::path p = std::filesystem::path(rel).lexically_normal();
  if (p.is_absolute() || (!p.empty() && *p.begin() == "..")) return error_response(404, "no such file");
  std::filesystem::path full = options_.static_dir / p;
  if (!std::filesystem::is_regular_file(full)) return error_response(404, "no such file");
  return {200, mime_type(full), read_file(full)};
}

Json ApiService::schema() {
  auto endpoint = [](const char* method, const char* path, Json params, const char* returns) {
    return Json{{"method", method}, {"path", path}, {"query", std::move(params)}, {"returns", returns}};
  };
  Json endpoints = Json::array({
      endpoint("GET", "/schema", Json::object(), "this document"),
      endpoint("GET", "/coverage",
               {{"from", "date"}, {"to", "date"}, {"publisher", "comma list"}, {"category", "comma list"},
                {"topic", "comma list"}, {"group_by", "comma list of publisher|category|topic|subtopic|event"},
                {"measure", "count|mean_lean|mean_tone|mean_headline_lean|mean_headline_tone|mean_focus"},
                {"color_by", "lean|tone (count only)"}, {"use_overlays", "bool"}, {"weight_by_rank", "bool"}},
               "AggregateTable {group_by, measure, rows[{key, value, n, label?, segments?}], query}"),
      endpoint("GET", "/events", {{"date", "date, required"}},
               "{date, events[EventCluster + article_count, publishers{id: count}], articles_in_events, "
               "reported_total, unclustered}"),
      endpoint("GET", "/events/{id}", Json::object(), "EventCluster + members[]"),
      endpoint("GET", "/events/{id}/facts", Json::object(),
               "{event_id, theme, facts[FactCluster + size, sources[{article_id, sentence, text, publisher_id, title, "
               "url}]]}"),
      endpoint("GET", "/articles/{id}", Json::object(),
               "{article, labels, corrected_labels, overlays, label_versions, sentences, corrected_sentences, quotes, "
               "event_id}"),
      endpoint("GET", "/tasks/next", {{"annotator", "string, required"}, {"kind", "task kind"}},
               "{task: ValidationTask + batch_id, round, claimed_at | null}"),
      endpoint("POST", "/tasks/{id}/response", Json::object(),
               "body ValidationResponse {annotator_id, verdict, corrected_label?}; returns {response, overlays, "
               "proposals, conflicts}; 400 invalid, 404 unknown task, 409 not claimed by annotator or already answered"),
      endpoint("GET", "/reports/agreement", {{"kind", "task kind"}}, "AgreementReport, or {reports[]} for all kinds"),
      endpoint("GET", "/reports/confusion", {{"kind", "topic|article_lean|article_tone|article_type"}},
               "ConfusionMatrix {labels, counts, total, accuracy, dimension}"),
      endpoint("GET", "/reports/cluster-prf", {{"date", "date, required"}},
               "{precision, recall, f1, clustered, confirmed, true_members, date}"),
  });
  Json enums{{"task_kind", Json::array({"topic", "article_lean", "article_tone", "article_type", "sentence",
                                        "event_membership"})},
             {"verdict", Json::array({"Agree", "Somewhat Agree", "Neither Agree nor Disagree", "Somewhat Disagree",
                                      "Disagree"})}};
  auto names = [](const auto& table) {
    Json out = Json::array();
    for (const auto& [v, n] : table) out.push_back(n);
    return out;
  };
  enums["news_type"] = names(EnumNames<NewsType>::kValues);
  enums["sentence_type"] = names(EnumNames<SentenceType>::kValues);
  enums["sentence_tone"] = names(EnumNames<SentenceTone>::kValues);
  enums["focus"] = names(EnumNames<Focus>::kValues);
  enums["person_domain"] = names(EnumNames<PersonDomain>::kValues);
  enums["person_capacity"] = names(EnumNames<PersonCapacity>::kValues);
  Json corrections{
      {"article_lean", "{lean: -5..5}"},
      {"article_tone", "{tone: -5..5}"},
      {"article_type", "{news_type}"},
      {"topic", "{topic, subtopic} | {topic, proposed_subtopic} | {category, proposed_topic}"},
      {"sentence", "{corrections: [{sentence: 1-based index, type?, tone?, focus?}]}"},
      {"event_membership", "{event_id: string | null}"},
  };
  return Json{{"version", 1},
              {"errors", "{error: {status, message, field?, reason?}}"},
              {"auth", "Authorization: Bearer <token> when the server has a token"},
              {"endpoints", endpoints},
              {"enums", enums},
              {"corrected_label", corrections}};
}

void serve_http(ApiService& service, const std::string& host, int port) {
  httplib::Server server;
  auto adapt = [&service](const httplib::Request& in, httplib::Response& out) {
    HttpRequest req;
    req.method = in.method;
    req.path = in.path;
    for (const auto& [k, v] : in.params) req.query[k] = v;
    for (const auto& [k, v] : in.headers) req.headers[text::to_lower(k)] = v;
    req.body = in.body;
    HttpResponse r = service.handle(req);
    out.status = r.status;
    out.set_content(r.body, r.content_type);
  };
  server.Get(".*", adapt);
  server.Post(".*", adapt);
  if (!server.listen(host, port)) throw Error(fmt::format("cannot listen on {}:{}", host, port));
}

}  // namespace biaslens

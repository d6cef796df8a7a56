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

#include "biaslens/core/schema.hpp"

#include <fmt/format.h>

#include "biaslens/util/strings.hpp"

namespace biaslens {
namespace {

std::string message(const std::string& field, const std::string& reason, const std::string& detail) {
  std::string m = fmt::format("schema error in '{}': {}", field, reason);
  if (!detail.empty()) m += " (" + detail + ")";
  return m;
}

const Json& require_object(const Json& doc, const char* field) {
  const Json& v = require_field(doc, field);
  if (!v.is_object()) throw SchemaError(field, "wrong-type", "expected object");
  return v;
}

LikertScore require_likert(const Json& doc, const char* key, const std::string& field) {
  auto it = doc.find(key);
  if (it == doc.end()) throw SchemaError(field, "missing");
  const Json& v = *it;
  long long value = 0;
  if (v.is_number_integer()) {
    value = v.get<long long>();
  } else if (v.is_number_float() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>()))) {
    value = static_cast<long long>(v.get<double>());
  } else {
    throw SchemaError(field, "wrong-type", "expected integer");
  }
  if (!LikertScore::in_range(value)) {
    throw SchemaError(field, "out-of-range", fmt::format("{} not in [-5, 5]", value));
  }
  return LikertScore(static_cast<int>(value));
}

std::string require_reason(const Json& obj, const std::string& field) {
  auto it = obj.find("reason");
  if (it == obj.end()) throw SchemaError(field, "missing");
  if (!it->is_string()) throw SchemaError(field, "wrong-type", "expected string");
  if (it->get<std::string>().empty()) throw SchemaError(field, "empty");
  return it->get<std::string>();
}

ScoredReason scored(const Json& raw, const char* task, const char* score_key,
                    const std::string& field) {
  auto it = raw.find(task);
  if (it == raw.end()) throw SchemaError(field, "missing");
  if (!it->is_object()) throw SchemaError(field, "wrong-type", "expected object");
  ScoredReason out;
  out.score = require_likert(*it, score_key, field);
  out.reason = require_reason(*it, field + "_reason");
  return out;
}

template <typename E>
E require_enum(const Json& doc, const char* field) {
  std::string s = require_string(doc, field);
  E out{};
  if (!try_parse(s, out)) throw SchemaError(field, "unknown-value", s);
  return out;
}

}  // namespace

SchemaError::SchemaError(std::string field, std::string reason, std::string detail)
    : Error(message(field, reason, detail)), field_(std::move(field)), reason_(std::move(reason)) {}

const Json& require_field(const Json& doc, const char* field) {
  if (!doc.is_object()) throw SchemaError(field, "wrong-type", "document is not an object");
  auto it = doc.find(field);
  if (it == doc.end() || it->is_null()) throw SchemaError(field, "missing");
  return *it;
}

std::string require_string(const Json& doc, const char* field, bool allow_empty) {
  const Json& v = require_field(doc, field);
  if (!v.is_string()) throw SchemaError(field, "wrong-type", "expected string");
  std::string s = v.get<std::string>();
  if (!allow_empty && s.empty()) throw SchemaError(field, "empty");
  return s;
}

long long require_integer(const Json& doc, const char* field) {
  const Json& v = require_field(doc, field);
  if (!v.is_number_integer()) throw SchemaError(field, "wrong-type", "expected integer");
  return v.get<long long>();
}

Json to_document(const LabelSet& l) {
  return Json{
      {"article_id", l.article_id},
      {"category", l.category},
      {"topic", l.topic},
      {"subtopic", l.subtopic},
      {"takeaways", l.takeaways},
      {"article_type", {{"news_type", to_string(l.news_type)}, {"justification", l.news_type_justification}}},
      {"article_lean", {{"reason", l.lean.reason}, {"lean", l.lean.score.value()}}},
      {"article_tone", {{"reason", l.tone.reason}, {"tone", l.tone.score.value()}}},
      {"headline_lean", {{"reason", l.headline_lean.reason}, {"lean", l.headline_lean.score.value()}}},
      {"headline_tone", {{"reason", l.headline_tone.reason}, {"tone", l.headline_tone.score.value()}}},
      {"model_id", l.model_id},
      {"labeled_at", format_timestamp(l.labeled_at)},
      {"hierarchy_version", l.hierarchy_version},
      {"truncated", l.truncated},
  };
}

LabelSet validate_label_set(const Json& raw, const TopicHierarchy& hierarchy) {
  if (!raw.is_object()) throw SchemaError("$", "wrong-type", "expected object");
  LabelSet out;
  out.article_id = require_string(raw, "article_id", false);

  out.topic = require_string(raw, "topic", false);
  if (!hierarchy.has_topic(out.topic)) throw SchemaError("topic", "unknown-topic", out.topic);
  out.subtopic = require_string(raw, "subtopic", false);
  if (!hierarchy.subtopic_allowed(out.topic, out.subtopic)) {
    throw SchemaError("subtopic", "not-under-topic",
                      fmt::format("'{}' is not listed under '{}'", out.subtopic, out.topic));
  }
  out.category = require_string(raw, "category", false);
  if (out.category != hierarchy.category_of(out.topic)) {
    throw SchemaError("category", "category-mismatch",
                      fmt::format("topic '{}' maps to '{}'", out.topic, hierarchy.category_of(out.topic)));
  }
  out.takeaways = require_string(raw, "takeaways", false);

  const Json& type = require_object(raw, "article_type");
  out.news_type = require_enum<NewsType>(type, "news_type");
  auto just = type.find("justification");
  if (just == type.end()) throw SchemaError("news_type_justification", "missing");
  if (!just->is_string() || just->get<std::string>().empty()) {
    throw SchemaError("news_type_justification", "empty");
  }
  out.news_type_justification = just->get<std::string>();

  out.lean = scored(raw, "article_lean", "lean", "lean");
  out.tone = scored(raw, "article_tone", "tone", "tone");
  out.headline_lean = scored(raw, "headline_lean", "lean", "headline_lean");
  out.headline_tone = scored(raw, "headline_tone", "tone", "headline_tone");

  out.model_id = require_string(raw, "model_id", false);
  try {
    out.labeled_at = parse_timestamp(require_string(raw, "labeled_at", false));
  } catch (const InvalidArgument& e) {
    throw SchemaError("labeled_at", "malformed", e.what());
  }
  long long version = require_integer(raw, "hierarchy_version");
  if (version < 1) throw SchemaError("hierarchy_version", "out-of-range");
  out.hierarchy_version = static_cast<int>(version);
  if (auto it = raw.find("truncated"); it != raw.end()) {
    if (!it->is_boolean()) throw SchemaError("truncated", "wrong-type", "expected boolean");
    out.truncated = it->get<bool>();
  }
  return out;
}

Json to_document(const SnapshotRef& r) {
  return Json{{"publisher_id", r.publisher_id},
              {"captured_at", format_timestamp(r.captured_at)},
              {"date", format_date(r.date)}};
}

SnapshotRef snapshot_ref_from_document(const Json& doc) {
  SnapshotRef r;
  r.publisher_id = require_string(doc, "publisher_id", false);
  try {
    r.captured_at = parse_timestamp(require_string(doc, "captured_at"));
    r.date = parse_date(require_string(doc, "date"));
  } catch (const InvalidArgument& e) {
    throw SchemaError("first_seen_snapshot", "malformed", e.what());
  }
  return r;
}

Json to_document(const Article& a) {
  Json doc{{"article_id", a.article_id},
           {"publisher_id", a.publisher_id},
           {"url", a.canonical_url},
           {"title", a.title},
           {"body", a.body},
           {"published_at", a.published_at ? Json(format_timestamp(*a.published_at)) : Json(nullptr)},
           {"first_seen_snapshot", to_document(a.first_seen_snapshot)},
           {"best_rank", a.best_rank}};
  return doc;
}

Article article_from_document(const Json& doc) {
  Article a;
  a.article_id = require_string(doc, "article_id", false);
  a.publisher_id = require_string(doc, "publisher_id", false);
  a.canonical_url = require_string(doc, "url", false);
  a.title = require_string(doc, "title");
  a.body = require_string(doc, "body", false);
  if (auto it = doc.find("published_at"); it != doc.end() && !it->is_null()) {
    try {
      a.published_at = parse_timestamp(it->get<std::string>());
    } catch (const std::exception& e) {
      throw SchemaError("published_at", "malformed", e.what());
    }
  }
  a.first_seen_snapshot = snapshot_ref_from_document(require_field(doc, "first_seen_snapshot"));
  long long rank = require_integer(doc, "best_rank");
  if (rank < 1) throw SchemaError("best_rank", "out-of-range");
  a.best_rank = static_cast<int>(rank);
  return a;
}

Json to_document(const SentenceRecord& r) {
  return Json{{"article_id", r.article_id}, {"sentence", r.index},
              {"text", r.text},             {"type", to_string(r.type)},
              {"tone", to_string(r.tone)},  {"focus", to_string(r.focus)}};
}

SentenceRecord sentence_from_document(const Json& doc) {
  SentenceRecord r;
  r.article_id = require_string(doc, "article_id", false);
  long long idx = require_integer(doc, "sentence");
  if (idx < 1) throw SchemaError("sentence", "out-of-range");
  r.index = static_cast<int>(idx);
  r.text = require_string(doc, "text");
  r.type = require_enum<SentenceType>(doc, "type");
  r.tone = require_enum<SentenceTone>(doc, "tone");
  r.focus = require_enum<Focus>(doc, "focus");
  return r;
}

void check_sentence_sequence(const std::vector<SentenceRecord>& records) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].index != static_cast<int>(i + 1)) {
      throw SchemaError("sentence", "non-contiguous",
                        fmt::format("position {} holds index {}", i + 1, records[i].index));
    }
    if (records[i].article_id != records.front().article_id) {
      throw SchemaError("article_id", "mixed-articles");
    }
  }
}

Json to_document(const QuoteRecord& q) {
  return Json{{"article_id", q.article_id},
              {"quote", q.quote_text},
              {"person_name", q.person_name},
              {"person_occupation", q.person_occupation},
              {"person_affiliation", q.person_affiliation},
              {"person_domain", to_string(q.person_domain)},
              {"person_capacity", to_string(q.person_capacity)}};
}

QuoteRecord quote_from_document(const Json& doc) {
  QuoteRecord q;
  q.article_id = require_string(doc, "article_id", false);
  q.quote_text = require_string(doc, "quote", false);
  q.person_name = require_string(doc, "person_name");
  q.person_occupation = require_string(doc, "person_occupation");
  q.person_affiliation = require_string(doc, "person_affiliation");
  q.person_domain = require_enum<PersonDomain>(doc, "person_domain");
  q.person_capacity = require_enum<PersonCapacity>(doc, "person_capacity");
  return q;
}

Json to_document(const EventCluster& e) {
  Json doc{{"event_id", e.event_id},
           {"day", format_date(e.day)},
           {"theme", e.theme},
           {"theme_short", e.theme_short},
           {"theme_short_truncated", e.theme_short_truncated},
           {"member_article_ids", e.member_article_ids},
           {"article_count", e.article_count()}};
  if (e.reported_count) doc["reported_count"] = *e.reported_count;
  return doc;
}

EventCluster event_from_document(const Json& doc) {
  EventCluster e;
  e.event_id = require_string(doc, "event_id", false);
  try {
    e.day = parse_date(require_string(doc, "day"));
  } catch (const InvalidArgument& ex) {
    throw SchemaError("day", "malformed", ex.what());
  }
  e.theme = require_string(doc, "theme");
  e.theme_short = require_string(doc, "theme_short");
  if (text::word_count(e.theme_short) > 5) throw SchemaError("theme_short", "too-long");
  if (auto it = doc.find("theme_short_truncated"); it != doc.end()) e.theme_short_truncated = it->get<bool>();
  const Json& members = require_field(doc, "member_article_ids");
  if (!members.is_array()) throw SchemaError("member_article_ids", "wrong-type");
  for (const Json& m : members) e.member_article_ids.insert(m.get<std::string>());
  if (auto it = doc.find("reported_count"); it != doc.end()) e.reported_count = it->get<int>();
  return e;
}

Json to_document(const FactCluster& f) {
  Json members = Json::array();
  for (const SentenceKey& k : f.member_sentences) {
    members.push_back({{"article_id", k.article_id}, {"sentence", k.index}});
  }
  return Json{{"event_id", f.event_id},
              {"fact_id", f.fact_id},
              {"synthetic_sentence", f.synthetic_sentence},
              {"truncated", f.truncated},
              {"member_sentences", members}};
}

FactCluster fact_from_document(const Json& doc) {
  FactCluster f;
  f.event_id = require_string(doc, "event_id", false);
  f.fact_id = require_string(doc, "fact_id", false);
  f.synthetic_sentence = require_string(doc, "synthetic_sentence");
  if (text::word_count(f.synthetic_sentence) > 25) throw SchemaError("synthetic_sentence", "too-long");
  if (auto it = doc.find("truncated"); it != doc.end()) f.truncated = it->get<bool>();
  const Json& members = require_field(doc, "member_sentences");
  if (!members.is_array()) throw SchemaError("member_sentences", "wrong-type");
  for (const Json& m : members) {
    f.member_sentences.insert({require_string(m, "article_id", false),
                               static_cast<int>(require_integer(m, "sentence"))});
  }
  return f;
}

Json to_document(const Publisher& p) {
  return Json{{"id", p.id}, {"display_name", p.display_name}, {"homepage_url", p.homepage_url},
              {"enabled", p.enabled}};
}

Publisher publisher_from_document(const Json& doc) {
  Publisher p;
  p.id = require_string(doc, "id", false);
  p.display_name = require_string(doc, "display_name", false);
  p.homepage_url = require_string(doc, "homepage_url", false);
  if (p.homepage_url.rfind("http://", 0) != 0 && p.homepage_url.rfind("https://", 0) != 0) {
    throw SchemaError("homepage_url", "not-absolute", p.homepage_url);
  }
  if (auto it = doc.find("enabled"); it != doc.end()) p.enabled = it->get<bool>();
  return p;
}

Json canonical_record(const Article& article, const LabelSet* labels,
                      const std::vector<SentenceRecord>& sentences,
                      const std::vector<QuoteRecord>& quotes) {
  Json doc = to_document(article);
  if (labels) {
    Json l = to_document(*labels);
    l.erase("article_id");
    doc["labels"] = std::move(l);
  }
  Json s = Json::array();
  for (const auto& r : sentences) {
    Json d = to_document(r);
    d.erase("article_id");
    s.push_back(std::move(d));
  }
  doc["sentences"] = std::move(s);
  Json q = Json::array();
  for (const auto& r : quotes) {
    Json d = to_document(r);
    d.erase("article_id");
    q.push_back(std::move(d));
  }
  doc["quotes"] = std::move(q);
  return doc;
}

}  // namespace biaslens

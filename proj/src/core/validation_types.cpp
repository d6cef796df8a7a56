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

#include "biaslens/core/validation_types.hpp"

#include <fmt/format.h>

#include <array>
#include <utility>

namespace biaslens {
namespace {

constexpr std::array<std::pair<TaskKind, std::string_view>, 6> kKinds{{
    {TaskKind::kTopic, "topic"},
    {TaskKind::kArticleLean, "article_lean"},
    {TaskKind::kArticleTone, "article_tone"},
    {TaskKind::kArticleType, "article_type"},
    {TaskKind::kSentence, "sentence"},
    {TaskKind::kEventMembership, "event_membership"},
}};

constexpr std::array<std::pair<Verdict, std::string_view>, 5> kVerdicts{{
    {Verdict::kAgree, "Agree"},
    {Verdict::kSomewhatAgree, "Somewhat Agree"},
    {Verdict::kNeither, "Neither Agree nor Disagree"},
    {Verdict::kSomewhatDisagree, "Somewhat Disagree"},
    {Verdict::kDisagree, "Disagree"},
}};

void check_likert_correction(const Json& c, const char* key) {
  if (!c.is_object() || c.size() != 1) throw SchemaError("corrected_label", "wrong-shape", key);
  long long v = require_integer(c, key);
  if (!LikertScore::in_range(v)) throw SchemaError("corrected_label", "out-of-range");
}

void check_topic_correction(const Json& c, const TopicHierarchy& h) {
  if (!c.is_object()) throw SchemaError("corrected_label", "wrong-type");
  if (c.contains("proposed_topic")) {
    std::string category = require_string(c, "category", false);
    if (!h.has_category(category)) throw SchemaError("category", "unknown-value", category);
    require_string(c, "proposed_topic", false);
    return;
  }
  std::string topic = require_string(c, "topic", false);
  if (!h.has_topic(topic)) throw SchemaError("topic", "unknown-topic", topic);
  if (c.contains("proposed_subtopic")) {
    require_string(c, "proposed_subtopic", false);
    return;
  }
  std::string subtopic = require_string(c, "subtopic", false);
  if (!h.subtopic_allowed(topic, subtopic)) throw SchemaError("subtopic", "not-under-topic", subtopic);
}

void check_sentence_correction(const Json& c, const ValidationTask& task) {
  const Json& list = require_field(c, "corrections");
  if (!list.is_array() || list.empty()) throw SchemaError("corrections", "empty");
  std::size_t n_sentences = task.payload.contains("sentences") ? task.payload["sentences"].size() : 0;
  for (const Json& item : list) {
    long long idx = require_integer(item, "sentence");
    if (idx < 1 || (n_sentences && static_cast<std::size_t>(idx) > n_sentences)) {
      throw SchemaError("sentence", "out-of-range");
    }
    bool any = false;
    if (item.contains("type")) {
      SentenceType t;
      if (!try_parse(require_string(item, "type"), t)) throw SchemaError("type", "unknown-value");
      any = true;
    }
    if (item.contains("tone")) {
      SentenceTone t;
      if (!try_parse(require_string(item, "tone"), t)) throw SchemaError("tone", "unknown-value");
      any = true;
    }
    if (item.contains("focus")) {
      Focus f;
      if (!try_parse(require_string(item, "focus"), f)) throw SchemaError("focus", "unknown-value");
      any = true;
    }
    if (!any) throw SchemaError("corrections", "empty-correction");
  }
}

}  // namespace

std::string_view to_string(TaskKind kind) {
  for (const auto& [k, n] : kKinds) {
    if (k == kind) return n;
  }
  return {};
}

TaskKind parse_task_kind(std::string_view s) {
  for (const auto& [k, n] : kKinds) {
    if (n == s) return k;
  }
  throw InvalidArgument(fmt::format("unknown validation dimension '{}'", s));
}

std::string_view to_string(Verdict verdict) {
  for (const auto& [v, n] : kVerdicts) {
    if (v == verdict) return n;
  }
  return {};
}

Verdict parse_verdict(std::string_view s) {
  for (const auto& [v, n] : kVerdicts) {
    if (n == s) return v;
  }
  throw SchemaError("verdict", "unknown-value", std::string(s));
}

bool uses_five_point_scale(TaskKind kind) {
  return kind == TaskKind::kArticleLean || kind == TaskKind::kArticleTone;
}

bool verdict_allowed(TaskKind kind, Verdict verdict) {
  return uses_five_point_scale(kind) || verdict == Verdict::kAgree || verdict == Verdict::kDisagree;
}

bool is_disagreement(Verdict verdict) {
  return verdict == Verdict::kSomewhatDisagree || verdict == Verdict::kDisagree;
}

Json to_document(const ValidationTask& t) {
  return Json{{"task_id", t.task_id},
              {"kind", to_string(t.kind)},
              {"item_id", t.item_id},
              {"payload", t.payload},
              {"annotator_id", t.annotator_id}};
}

ValidationTask task_from_document(const Json& doc) {
  ValidationTask t;
  t.task_id = require_string(doc, "task_id", false);
  try {
    t.kind = parse_task_kind(require_string(doc, "kind"));
  } catch (const InvalidArgument& e) {
    throw SchemaError("kind", "unknown-value", e.what());
  }
  t.item_id = require_string(doc, "item_id", false);
  t.payload = doc.value("payload", Json::object());
  t.annotator_id = doc.value("annotator_id", "");
  return t;
}

Json to_document(const ValidationResponse& r) {
  Json doc{{"task_id", r.task_id},
           {"annotator_id", r.annotator_id},
           {"verdict", to_string(r.verdict)},
           {"submitted_at", format_timestamp(r.submitted_at)}};
  doc["corrected_label"] = r.corrected_label ? *r.corrected_label : Json(nullptr);
  return doc;
}

ValidationResponse response_from_document(const Json& doc) {
  ValidationResponse r;
  r.task_id = require_string(doc, "task_id", false);
  r.annotator_id = require_string(doc, "annotator_id", false);
  r.verdict = parse_verdict(require_string(doc, "verdict"));
  if (auto it = doc.find("corrected_label"); it != doc.end() && !it->is_null()) r.corrected_label = *it;
  if (auto it = doc.find("submitted_at"); it != doc.end() && it->is_string()) {
    try {
      r.submitted_at = parse_timestamp(it->get<std::string>());
    } catch (const InvalidArgument& e) {
      throw SchemaError("submitted_at", "malformed", e.what());
    }
  }
  return r;
}

void check_response(const ValidationTask& task, const ValidationResponse& r,
                    const TopicHierarchy& hierarchy) {
  if (r.task_id != task.task_id) throw SchemaError("task_id", "mismatch");
  if (!verdict_allowed(task.kind, r.verdict)) {
    throw SchemaError("verdict", "not-allowed",
                      fmt::format("'{}' for {}", to_string(r.verdict), to_string(task.kind)));
  }
  bool disagree = is_disagreement(r.verdict);
  if (disagree != r.corrected_label.has_value()) {
    throw SchemaError("corrected_label", disagree ? "missing" : "unexpected");
  }
  if (!disagree) return;
  const Json& c = *r.corrected_label;
  switch (task.kind) {
    case TaskKind::kArticleLean:
      check_likert_correction(c, "lean");
      break;
    case TaskKind::kArticleTone:
      check_likert_correction(c, "tone");
      break;
    case TaskKind::kArticleType: {
      NewsType t;
      if (!try_parse(require_string(c, "news_type"), t)) throw SchemaError("news_type", "unknown-value");
      break;
    }
    case TaskKind::kTopic:
      check_topic_correction(c, hierarchy);
      break;
    case TaskKind::kSentence:
      check_sentence_correction(c, task);
      break;
    case TaskKind::kEventMembership: {
      // A null event_id means "belongs to no event".
      if (!c.is_object() || !c.contains("event_id")) throw SchemaError("event_id", "missing");
      if (!c["event_id"].is_string() && !c["event_id"].is_null()) {
        throw SchemaError("event_id", "wrong-type");
      }
      break;
    }
  }
}

}  // namespace biaslens

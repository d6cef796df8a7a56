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

#include "biaslens/label/labeler.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

#include "biaslens/core/enums.hpp"
#include "biaslens/label/response.hpp"
#include "biaslens/util/strings.hpp"

namespace biaslens {
namespace {

Json scored_part(const Json& doc, const char* score_key) {
  std::string reason = require_string(doc, "reason", false);
  long long score = require_integer(doc, score_key);
  if (!LikertScore::in_range(score)) throw SchemaError(score_key, "out-of-range", std::to_string(score));
  return Json{{"reason", reason}, {score_key, score}};
}

std::string takeaways_text(const Json& doc) {
  const Json& v = require_field(doc, "takeaways");
  if (v.is_string() && !v.get<std::string>().empty()) return v.get<std::string>();
  if (v.is_array() && !v.empty()) {
    std::vector<std::string> parts;
    for (const Json& p : v) {
      if (!p.is_string()) throw SchemaError("takeaways", "wrong-type", "expected strings");
      parts.push_back(p.get<std::string>());
    }
    return text::join(parts, " ");
  }
  throw SchemaError("takeaways", "empty");
}

std::string optional_string(const Json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) return {};
  if (!it->is_string()) throw SchemaError(key, "wrong-type", "expected string");
  return it->get<std::string>();
}

template <typename E>
E enum_field(const Json& doc, const char* key) {
  std::string s = require_string(doc, key, false);
  E out{};
  if (!try_parse(s, out)) throw SchemaError(key, "unknown-value", s);
  return out;
}

}  // namespace

bool has_quotation_marks(std::string_view text) {
  return text.find('"') != std::string_view::npos || text.find("\xE2\x80\x9C") != std::string_view::npos ||
         text.find("\xE2\x80\x9D") != std::string_view::npos;
}

std::string article_prompt_text(const Article& article, std::size_t max_tokens, bool* truncated) {
  std::size_t budget = max_tokens > estimate_tokens(article.title) ? max_tokens - estimate_tokens(article.title) : 1;
  return article.title + "\n\n" + truncate_to_tokens(article.body, budget, truncated);
}

Labeler::Labeler(LlmProvider& provider, TopicHierarchy hierarchy, LabelerConfig config, Clock clock)
    : runner_(provider, config.runner, std::move(clock)), hierarchy_(std::move(hierarchy)), config_(std::move(config)) {}

std::size_t Labeler::body_budget() const {
  std::size_t limit = runner_.max_input_tokens();
  return limit > config_.prompt_overhead_tokens ? limit - config_.prompt_overhead_tokens : 1;
}

LabelSet Labeler::label_article(const Article& article) const {
  if (text::trim(article.body).empty()) throw InvalidArgument(fmt::format("article {} has an empty body", article.article_id));
  bool truncated = false;
  std::string text = article_prompt_text(article, body_budget(), &truncated);
  const std::string& id = article.article_id;

  std::string topic = runner_.ask<std::string>(PromptName::kTopic, {{"article", text}, {"topic_list", quoted_list(hierarchy_.topics())}},
                                       id, [&](const std::string& raw) {
                                         std::string t = require_string(extract_json(raw), "topic", false);
                                         if (!hierarchy_.has_topic(t)) throw SchemaError("topic", "unknown-topic", t);
                                         return t;
                                       });
  std::string subtopic = runner_.ask<std::string>(
      PromptName::kSubtopic,
      {{"predicted_topic", topic}, {"article", text}, {"subtopic_list_under_the_topic", quoted_list(hierarchy_.subtopics_of(topic))}},
      id, [&](const std::string& raw) {
        std::string s = require_string(extract_json(raw), "subtopic", false);
        if (!hierarchy_.subtopic_allowed(topic, s)) throw SchemaError("subtopic", "not-under-topic", s);
        return s;
      });
  std::string category = hierarchy_.category_of(topic);
  std::string takeaways = runner_.ask<std::string>(PromptName::kTakeaways, {{"article", text}}, id,
                                           [](const std::string& raw) { return takeaways_text(extract_json(raw)); });
  Json type = runner_.ask<Json>(PromptName::kArticleType, {{"article", text}}, id, [](const std::string& raw) {
    Json doc = extract_json(raw);
    NewsType t = enum_field<NewsType>(doc, "news_type");
    return Json{{"news_type", to_string(t)}, {"justification", require_string(doc, "justification", false)}};
  });
  auto scored = [&](PromptName name, const char* key, const PromptBindings& bindings) {
    return runner_.ask<Json>(name, bindings, id, [key](const std::string& raw) { return scored_part(extract_json(raw), key); });
  };
  Json lean = scored(PromptName::kArticleLean, "lean", {{"article", text}});
  Json tone = scored(PromptName::kArticleTone, "tone", {{"article", text}});
  PromptBindings headline = {{"topic", topic}, {"subtopic", subtopic}, {"category", category}, {"article", article.title}};
  Json headline_lean = scored(PromptName::kHeadlineLean, "lean", headline);
  Json headline_tone = scored(PromptName::kHeadlineTone, "tone", headline);

  std::vector<std::string> models;
  for (PromptName n : {PromptName::kTopic, PromptName::kSubtopic, PromptName::kTakeaways, PromptName::kArticleType,
                       PromptName::kArticleLean, PromptName::kArticleTone, PromptName::kHeadlineLean,
                       PromptName::kHeadlineTone}) {
    if (std::find(models.begin(), models.end(), runner_.model_for(n)) == models.end()) models.push_back(runner_.model_for(n));
  }
  Json doc = {{"article_id", id},
              {"category", category},
              {"topic", topic},
              {"subtopic", subtopic},
              {"takeaways", takeaways},
              {"article_type", type},
              {"article_lean", lean},
              {"article_tone", tone},
              {"headline_lean", headline_lean},
              {"headline_tone", headline_tone},
              {"model_id", text::join(models, ",")},
              {"labeled_at", format_timestamp(runner_.now())},
              {"hierarchy_version", hierarchy_.version()},
              {"truncated", truncated}};
  return validate_label_set(doc, hierarchy_);
}

std::vector<SentenceRecord> Labeler::label_sentences(const Article& article, const SentenceSplit& split) const {
  if (split.sentences.empty()) throw InvalidArgument(fmt::format("article {} has no sentences", article.article_id));
  const std::size_t n = split.sentences.size();
  return runner_.ask<std::vector<SentenceRecord>>(
      PromptName::kSentence, {{"sentences", numbered_list(split.sentences)}}, article.article_id,
      [&](const std::string& raw) {
        Json list = extract_json_array(raw);
        std::vector<SentenceRecord> out(n);
        std::vector<bool> seen(n, false);
        for (const Json& item : list) {
          long long idx = require_integer(item, "sentence");
          if (idx < 1 || static_cast<std::size_t>(idx) > n) {
            throw ResponseError(fmt::format("sentence index {} outside 1..{}", idx, n));
          }
          if (seen[idx - 1]) throw ResponseError(fmt::format("sentence index {} repeated", idx));
          seen[idx - 1] = true;
          out[idx - 1] = {article.article_id,
                          static_cast<int>(idx),
                          split.sentences[idx - 1],
                          enum_field<SentenceType>(item, "type"),
                          enum_field<SentenceTone>(item, "tone"),
                          enum_field<Focus>(item, "focus")};
        }
        auto missing = std::find(seen.begin(), seen.end(), false);
        if (missing != seen.end()) {
          throw ResponseError(fmt::format("sentence {} missing from response", missing - seen.begin() + 1));
        }
        return out;
      });
}

std::vector<QuoteRecord> Labeler::extract_quotes(const Article& article) const {
  if (!has_quotation_marks(article.body)) return {};
  std::string text = article_prompt_text(article, body_budget(), nullptr);
  std::vector<QuoteRecord> records = runner_.ask<std::vector<QuoteRecord>>(
      PromptName::kQuote, {{"article", text}}, article.article_id, [&](const std::string& raw) {
        std::vector<QuoteRecord> out;
        for (const Json& item : extract_json_array(raw)) {
          QuoteRecord q;
          q.article_id = article.article_id;
          q.quote_text = require_string(item, "quote", false);
          q.person_name = optional_string(item, "person_name");
          q.person_occupation = optional_string(item, "person_occupation");
          q.person_affiliation = optional_string(item, "person_affiliation");
          q.person_domain = enum_field<PersonDomain>(item, "person_domain");
          q.person_capacity = enum_field<PersonCapacity>(item, "person_capacity");
          out.push_back(std::move(q));
        }
        return out;
      });
  // Drop quotes contained in a longer quote from the same speaker.
  std::vector<QuoteRecord> kept;
  for (std::size_t i = 0; i < records.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < records.size() && !redundant; ++j) {
      if (i == j || records[i].person_name != records[j].person_name) continue;
      const std::string& a = records[i].quote_text;
      const std::string& b = records[j].quote_text;
      redundant = (a == b && j < i) || (a != b && b.find(a) != std::string::npos);
    }
    if (!redundant) kept.push_back(records[i]);
  }
  return kept;
}

}  // namespace biaslens

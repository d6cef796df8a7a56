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

#include "biaslens/cluster/facts.hpp"

#include <algorithm>
#include <map>

#include "biaslens/util/digest.hpp"
#include "biaslens/util/strings.hpp"

namespace biaslens {

std::string sentence_embedding_id(const SentenceRecord& record) {
  return SentenceKey{record.article_id, record.index}.str();
}

namespace {

struct Summary {
  std::string text;
  bool truncated = false;
};

Summary parse_summary(const std::string& raw) {
  Json doc = extract_json(raw);
  if (!doc.is_object()) throw ResponseError("expected a JSON object");
  std::string sentence = text::normalize_whitespace(require_string(doc, "synthetic_sentence", false));
  if (sentence.empty()) throw SchemaError("synthetic_sentence", "empty", "");
  Summary s;
  s.text = text::truncate_words(sentence, kSyntheticSentenceMaxWords, &s.truncated);
  return s;
}

}  // namespace

std::vector<FactCluster> cluster_facts(const EventCluster& event, const std::vector<SentenceRecord>& sentences,
                                       EmbeddingProvider& embedder, const PromptRunner& runner,
                                       const ClusterConfig& config, const EmbedOptions& embed_options) {
  config.check();
  std::map<std::string, const SentenceRecord*> facts;
  for (const SentenceRecord& s : sentences) {
    if (s.type != SentenceType::kFact || !event.member_article_ids.count(s.article_id)) continue;
    facts[sentence_embedding_id(s)] = &s;
  }
  if (facts.empty()) return {};

  std::vector<EmbeddingInput> inputs;
  for (const auto& [id, record] : facts) inputs.push_back({id, record->text});
  EmbedResult embedded = embed(inputs, embedder, embed_options);
  Partition partition =
      threshold_components(build_similarity_graph(embedded.vectors), config.fact_threshold, config.min_cluster_size);

  std::vector<FactCluster> out;
  for (const std::vector<std::string>& cluster : partition.clusters) {
    std::vector<const SentenceRecord*> members;
    for (const std::string& id : cluster) members.push_back(facts.at(id));
    std::sort(members.begin(), members.end(), [](const SentenceRecord* a, const SentenceRecord* b) {
      return SentenceKey{a->article_id, a->index} < SentenceKey{b->article_id, b->index};
    });
    FactCluster fact;
    fact.event_id = event.event_id;
    std::vector<std::string> texts;
    std::vector<std::string> keys;
    for (const SentenceRecord* m : members) {
      texts.push_back(m->text);
      keys.push_back(sentence_embedding_id(*m));
      fact.member_sentences.insert({m->article_id, m->index});
    }
    fact.fact_id = short_digest("fact\n" + event.event_id + "\n" + text::join(keys, "\n"));
    Summary summary = runner.ask<Summary>(PromptName::kFactSummary, {{"sentence_list", numbered_list(texts)}},
                                          fact.fact_id, parse_summary);
    fact.synthetic_sentence = std::move(summary.text);
    fact.truncated = summary.truncated;
    out.push_back(std::move(fact));
  }
  std::sort(out.begin(), out.end(), [](const FactCluster& a, const FactCluster& b) {
    if (a.member_sentences.size() != b.member_sentences.size()) {
      return a.member_sentences.size() > b.member_sentences.size();
    }
    return a.fact_id < b.fact_id;
  });
  return out;
}

}  // namespace biaslens

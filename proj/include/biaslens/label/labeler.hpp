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

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "biaslens/core/hierarchy.hpp"
#include "biaslens/core/schema.hpp"
#include "biaslens/core/types.hpp"
#include "biaslens/label/prompts.hpp"
#include "biaslens/label/provider.hpp"
#include "biaslens/label/runner.hpp"
#include "biaslens/label/sentences.hpp"
#include "biaslens/util/time.hpp"

namespace biaslens {

struct LabelerConfig {
  RunnerConfig runner;
  std::size_t prompt_overhead_tokens = 2000;  // reserved for template text
};

class Labeler {
 public:
  Labeler(LlmProvider& provider, TopicHierarchy hierarchy, LabelerConfig config, Clock clock);

  // topic -> subtopic -> takeaways -> type -> lean -> tone -> headline lean ->
  // headline tone. Throws InvalidArgument for an empty body (no provider
  // call), DeadLetterError, ProviderError or MissingFixtureError.
  LabelSet label_article(const Article& article) const;

  // One prompt with the whole numbered article. Throws InvalidArgument when
  // the split is empty.
  std::vector<SentenceRecord> label_sentences(const Article& article, const SentenceSplit& split) const;

  // Empty without a provider call when the body has no quotation marks.
  std::vector<QuoteRecord> extract_quotes(const Article& article) const;

  const TopicHierarchy& hierarchy() const { return hierarchy_; }

 private:
  std::size_t body_budget() const;

  PromptRunner runner_;
  TopicHierarchy hierarchy_;
  LabelerConfig config_;
};

// Article text as bound to {article} in body-level prompts.
std::string article_prompt_text(const Article& article, std::size_t max_tokens, bool* truncated);

bool has_quotation_marks(std::string_view text);

}  // namespace biaslens

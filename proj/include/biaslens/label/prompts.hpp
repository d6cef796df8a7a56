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

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace biaslens {

enum class PromptName {
  kTopic,
  kSubtopic,
  kTakeaways,
  kArticleType,
  kArticleLean,
  kArticleTone,
  kHeadlineLean,
  kHeadlineTone,
  kSentence,
  kQuote,
  kEventTitle,
  kClusterRecall,
  kClusterPrecision,
  kFactSummary,
};

std::string_view to_string(PromptName name);
PromptName parse_prompt_name(std::string_view s);  // throws InvalidArgument
const std::vector<PromptName>& all_prompt_names();

using PromptBindings = std::map<std::string, std::string, std::less<>>;

struct PromptTemplate {
  PromptName name;
  std::string_view body;  // placeholders are {lower_snake_case}
  std::vector<std::string_view> expected_keys;  // empty for bare-integer responses

  // Placeholder names in order of first appearance.
  std::vector<std::string> placeholders() const;
};

const PromptTemplate& prompt_template(PromptName name);

// Substitutes every placeholder in one pass; bound values are inserted
// verbatim and never rescanned. Throws InvalidArgument when a placeholder is
// unbound or a binding names no placeholder.
std::string render_prompt(const PromptTemplate& tmpl, const PromptBindings& bindings);

// List formats used for bindings.
std::string quoted_list(const std::vector<std::string>& items);    // "A", "B"
std::string numbered_list(const std::vector<std::string>& items);  // 1. A\n2. B

}  // namespace biaslens

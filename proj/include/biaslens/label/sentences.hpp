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

#include <string>
#include <string_view>
#include <vector>

namespace biaslens {

struct SentenceSplit {
  std::string article_id;
  std::vector<std::string> sentences;  // whitespace-collapsed, trimmed
};

// Rule-based segmenter. Boundaries: line breaks, and ., ! or ? (plus any
// closing quotes or brackets) followed by whitespace and an uppercase letter,
// digit or opening quote. Known abbreviations ("Gov.", "U.S.", ...) and
// single-letter initials never end a sentence. Joining the result with
// single spaces equals the input with all whitespace runs collapsed.
std::vector<std::string> split_sentences(std::string_view body);

SentenceSplit split_article(std::string article_id, std::string_view body);

// Keeps whole sentences from the front of `body` while the estimated token
// count stays within `max_tokens`; at least one sentence survives. Sets
// *truncated when anything was dropped. Estimate: ceil(chars / 4).
std::string truncate_to_tokens(std::string_view body, std::size_t max_tokens, bool* truncated);

std::size_t estimate_tokens(std::string_view text);

}  // namespace biaslens

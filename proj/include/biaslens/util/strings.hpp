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

namespace biaslens::text {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Collapses runs of ASCII whitespace inside each line to one space, trims every
// line, and squeezes blank-line runs to a single blank line.
std::string normalize_whitespace(std::string_view s);

// Whitespace-delimited words.
std::vector<std::string> words(std::string_view s);
std::size_t word_count(std::string_view s);

// Keeps the first `max_words` words, joined by single spaces. Sets *truncated
// when anything was dropped.
std::string truncate_words(std::string_view s, std::size_t max_words,
                           bool* truncated = nullptr);

}  // namespace biaslens::text

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

#include <filesystem>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

namespace biaslens {

// Boilerplate phrases stripped from article text. File format: UTF-8, one
// phrase per line; lines prefixed with "re:" are ECMAScript regular
// expressions, everything else is matched literally.
class CleaningDictionary {
 public:
  struct Phrase {
    std::string text;
    bool is_pattern = false;
  };

  CleaningDictionary() = default;
  CleaningDictionary(std::vector<Phrase> phrases, int version);

  static CleaningDictionary parse(std::string_view file_text, int version = 1);
  static CleaningDictionary load(const std::filesystem::path& path, int version = 1);

  const std::vector<Phrase>& phrases() const { return phrases_; }
  int version() const { return version_; }

  // Removes every phrase until none remains, then normalizes whitespace.
  // clean(clean(x)) == clean(x).
  std::string clean(std::string_view text) const;
  bool matches_any(std::string_view text) const;

 private:
  std::string remove_once(std::string_view text) const;

  std::vector<Phrase> phrases_;
  std::vector<std::regex> patterns_;  // parallel to phrases_; unused for literals
  int version_ = 1;
};

}  // namespace biaslens

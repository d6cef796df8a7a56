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

#include "biaslens/ingest/cleaning.hpp"

#include <fmt/format.h>

#include "biaslens/util/error.hpp"
#include "biaslens/util/files.hpp"
#include "biaslens/util/strings.hpp"

namespace biaslens {
namespace {
constexpr std::string_view kPatternPrefix = "re:";
constexpr int kMaxPasses = 64;
}  // namespace

CleaningDictionary::CleaningDictionary(std::vector<Phrase> phrases, int version)
    : phrases_(std::move(phrases)), version_(version) {
  patterns_.reserve(phrases_.size());
  for (const Phrase& p : phrases_) {
    if (p.text.empty()) throw InvalidArgument("empty cleaning phrase");
    if (p.is_pattern) {
      try {
        patterns_.emplace_back(p.text, std::regex::ECMAScript);
      } catch (const std::regex_error& e) {
        throw InvalidArgument(fmt::format("bad cleaning pattern '{}': {}", p.text, e.what()));
      }
    } else {
      patterns_.emplace_back();
    }
  }
}

CleaningDictionary CleaningDictionary::parse(std::string_view file_text, int version) {
  std::vector<Phrase> phrases;
  for (const std::string& raw : text::split(file_text, '\n')) {
    std::string_view line = raw;
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (text::trim(line).empty()) continue;
    if (line.starts_with(kPatternPrefix)) {
      phrases.push_back({std::string(line.substr(kPatternPrefix.size())), true});
    } else {
      phrases.push_back({std::string(text::trim(line)), false});
    }
  }
  return CleaningDictionary(std::move(phrases), version);
}

CleaningDictionary CleaningDictionary::load(const std::filesystem::path& path, int version) {
  return parse(read_file(path), version);
}

std::string CleaningDictionary::remove_once(std::string_view input) const {
  std::string text(input);
  for (std::size_t i = 0; i < phrases_.size(); ++i) {
    if (phrases_[i].is_pattern) {
      text = std::regex_replace(text, patterns_[i], "");
      continue;
    }
    const std::string& needle = phrases_[i].text;
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) text.erase(pos, needle.size());
  }
  return text;
}

std::string CleaningDictionary::clean(std::string_view input) const {
  std::string current = text::normalize_whitespace(input);
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    std::string next = text::normalize_whitespace(remove_once(current));
    if (next == current) return current;
    current = std::move(next);
  }
  throw Error("cleaning dictionary did not reach a fixpoint");
}

bool CleaningDictionary::matches_any(std::string_view input) const {
  std::string text(input);
  for (std::size_t i = 0; i < phrases_.size(); ++i) {
    if (phrases_[i].is_pattern ? std::regex_search(text, patterns_[i])
                               : text.find(phrases_[i].text) != std::string::npos) {
      return true;
    }
  }
  return false;
}

}  // namespace biaslens

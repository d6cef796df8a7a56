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

#include "biaslens/label/sentences.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "biaslens/util/strings.hpp"

namespace biaslens {
namespace {

constexpr std::array<std::string_view, 44> kAbbreviations = {
    "mr",   "mrs",  "ms",   "dr",   "prof", "gov",  "sen",  "rep",  "gen",  "lt",   "col",
    "sgt",  "capt", "cmdr", "adm",  "maj",  "st",   "jr",   "sr",   "inc",  "co",   "corp",
    "ltd",  "vs",   "jan",  "feb",  "mar",  "apr",  "aug",  "sept", "sep",  "oct",  "nov",
    "dec",  "no",   "mt",   "ft",   "pres", "rev",  "gov't", "dept", "univ", "approx", "est"};

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_closer(std::string_view s, std::size_t i, std::size_t* len) {
  static constexpr std::array<std::string_view, 5> kClosers = {"\"", "'", ")", "\xE2\x80\x9D", "\xE2\x80\x99"};
  for (std::string_view c : kClosers) {
    if (s.substr(i, c.size()) == c) {
      *len = c.size();
      return true;
    }
  }
  return false;
}

bool starts_sentence(std::string_view s, std::size_t i) {
  if (i >= s.size()) return false;
  unsigned char c = static_cast<unsigned char>(s[i]);
  if (std::isupper(c) || std::isdigit(c) || c == '"' || c == '\'' || c == '(') return true;
  return s.substr(i, 3) == "\xE2\x80\x9C" || s.substr(i, 3) == "\xE2\x80\x98";
}

// The word ending at the '.' located at `dot`.
std::string_view word_before(std::string_view s, std::size_t dot) {
  std::size_t start = dot;
  while (start > 0 && !is_space(s[start - 1]) && s[start - 1] != '(' && s[start - 1] != '"') --start;
  return s.substr(start, dot - start);
}

bool is_abbreviation(std::string_view word) {
  if (word.empty()) return false;
  // Initials and dotted acronyms: "J", "U.S", "D.C".
  if (word.size() == 1 && std::isalpha(static_cast<unsigned char>(word[0]))) return true;
  if (word.find('.') != std::string_view::npos) {
    bool dotted = true;
    for (std::size_t i = 0; i < word.size(); ++i) {
      bool letter = std::isalpha(static_cast<unsigned char>(word[i])) != 0;
      if (i % 2 == 0 ? !letter : word[i] != '.') dotted = false;
    }
    if (dotted) return true;
  }
  std::string lower = text::to_lower(word);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) != kAbbreviations.end();
}

std::string collapse(std::string_view s) {
  std::string out;
  for (const std::string& w : text::words(s)) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view body) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    std::string s = collapse(body.substr(start, end - start));
    if (!s.empty()) out.push_back(std::move(s));
    start = end;
  };
  for (std::size_t i = 0; i < body.size(); ++i) {
    char c = body[i];
    if (c == '\n') {
      emit(i);
      continue;
    }
    if (c != '.' && c != '!' && c != '?') continue;
    std::size_t end = i + 1;
    while (end < body.size() && (body[end] == '.' || body[end] == '!' || body[end] == '?')) ++end;
    std::size_t len = 0;
    while (end < body.size() && is_closer(body, end, &len)) end += len;
    if (end < body.size() && !is_space(body[end])) continue;
    std::size_t next = end;
    while (next < body.size() && is_space(body[next]) && body[next] != '\n') ++next;
    if (next < body.size() && body[next] != '\n' && !starts_sentence(body, next)) continue;
    if (c == '.' && end == i + 1 && is_abbreviation(word_before(body, i))) continue;
    emit(end);
    i = end - 1;
  }
  emit(body.size());
  return out;
}

SentenceSplit split_article(std::string article_id, std::string_view body) {
  return {std::move(article_id), split_sentences(body)};
}

std::size_t estimate_tokens(std::string_view text) { return (text.size() + 3) / 4; }

std::string truncate_to_tokens(std::string_view body, std::size_t max_tokens, bool* truncated) {
  if (truncated) *truncated = false;
  if (estimate_tokens(body) <= max_tokens) return std::string(body);
  std::vector<std::string> sentences = split_sentences(body);
  std::string out;
  for (const std::string& s : sentences) {
    std::string candidate = out.empty() ? s : out + " " + s;
    if (!out.empty() && estimate_tokens(candidate) > max_tokens) break;
    out = std::move(candidate);
  }
  if (truncated) *truncated = true;
  return out;
}

}  // namespace biaslens

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

#include "biaslens/label/response.hpp"

#include <fmt/format.h>

#include <charconv>

#include "biaslens/util/strings.hpp"

namespace biaslens {
namespace {

std::string_view strip_fences(std::string_view s) {
  s = text::trim(s);
  if (!s.starts_with("```")) return s;
  std::size_t nl = s.find('\n');
  if (nl == std::string_view::npos) return s;
  s.remove_prefix(nl + 1);
  std::size_t close = s.rfind("```");
  if (close != std::string_view::npos) s = s.substr(0, close);
  return text::trim(s);
}

}  // namespace

nlohmann::json extract_json(std::string_view raw) {
  std::string_view s = strip_fences(raw);
  std::size_t open = s.find_first_of("{[");
  if (open == std::string_view::npos) throw ResponseError("response contains no JSON document");
  char close_char = s[open] == '{' ? '}' : ']';
  std::size_t close = s.rfind(close_char);
  if (close == std::string_view::npos || close < open) throw ResponseError("response JSON is not closed");
  try {
    return nlohmann::json::parse(s.substr(open, close - open + 1));
  } catch (const nlohmann::json::parse_error& e) {
    throw ResponseError(fmt::format("response is not valid JSON: {}", e.what()));
  }
}

nlohmann::json extract_json_array(std::string_view raw) {
  nlohmann::json doc = extract_json(raw);
  if (doc.is_array()) return doc;
  if (doc.is_object()) {
    if (doc.size() == 1 && doc.begin()->is_array()) return *doc.begin();
    return nlohmann::json::array({doc});
  }
  throw ResponseError("expected a JSON list");
}

long long parse_integer_response(std::string_view raw) {
  std::string_view s = text::trim(strip_fences(raw));
  if (!s.empty() && s.back() == '.') s.remove_suffix(1);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ResponseError(fmt::format("expected an integer, got '{}'", s));
  }
  return value;
}

std::vector<long long> parse_integer_list(std::string_view raw) {
  std::string_view s = strip_fences(raw);
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  std::vector<long long> out;
  for (const std::string& part : text::split(s, ',')) out.push_back(parse_integer_response(part));
  return out;
}

}  // namespace biaslens

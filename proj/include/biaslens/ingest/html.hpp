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

#include <optional>
#include <string>
#include <string_view>

#include "biaslens/util/time.hpp"

namespace biaslens {

struct ExtractedPage {
  std::string title;
  std::string body;  // paragraphs separated by blank lines
  std::optional<Timestamp> published_at;
  std::string og_type;
  std::string canonical_url;
  bool paywall_marker = false;
  bool has_article_element = false;
};

// Decodes named (common subset) and numeric character references.
std::string decode_entities(std::string_view s);

// Readability-style extraction: title from og:title/<h1>/<title>, body from
// <p> and heading text inside <article> (or the whole page), skipping script,
// style, nav, header, footer, aside, form, figure and elements whose class or
// id marks them as ads, promos, newsletters or related-link rails.
ExtractedPage extract_article(std::string_view html);

}  // namespace biaslens

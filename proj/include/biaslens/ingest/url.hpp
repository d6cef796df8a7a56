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

namespace biaslens {

// Lowercases scheme and host, drops the fragment, default ports and tracking
// query parameters (utm_*, fbclid, gclid, ...). Other parameters keep their
// order. Throws InvalidArgument for non-http(s) or relative URLs.
std::string canonicalize_url(std::string_view url);

bool is_absolute_http_url(std::string_view url);

// Stable article identity: digest of (publisher_id, canonical_url).
std::string make_article_id(std::string_view publisher_id, std::string_view canonical_url);

// Resolves `href` against `base` (absolute, root-relative and path-relative).
std::string resolve_url(std::string_view base, std::string_view href);

}  // namespace biaslens

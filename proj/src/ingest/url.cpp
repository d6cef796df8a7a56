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

#include "biaslens/ingest/url.hpp"

#include <fmt/format.h>

#include <array>

#include "biaslens/util/digest.hpp"
#include "biaslens/util/error.hpp"
#include "biaslens/util/strings.hpp"

namespace biaslens {
namespace {

constexpr std::array<std::string_view, 12> kTrackingParams = {
    "fbclid", "gclid", "dclid", "msclkid", "mc_cid", "mc_eid",
    "cmpid",  "smid",  "smtyp", "ocid",    "taid",   "ito"};

bool is_tracking_param(std::string_view name) {
  std::string lower = text::to_lower(name);
  if (lower.rfind("utm_", 0) == 0) return true;
  for (std::string_view p : kTrackingParams) {
    if (lower == p) return true;
  }
  return false;
}

struct UrlParts {
  std::string scheme;
  std::string authority;
  std::string path;
  std::string query;
};

UrlParts split_url(std::string_view url) {
  std::size_t colon = url.find("://");
  if (colon == std::string_view::npos) throw InvalidArgument(fmt::format("not an absolute URL: {}", url));
  UrlParts parts;
  parts.scheme = text::to_lower(url.substr(0, colon));
  if (parts.scheme != "http" && parts.scheme != "https") {
    throw InvalidArgument(fmt::format("unsupported URL scheme: {}", url));
  }
  std::string_view rest = url.substr(colon + 3);
  if (std::size_t hash = rest.find('#'); hash != std::string_view::npos) rest = rest.substr(0, hash);
  std::size_t slash = rest.find_first_of("/?");
  parts.authority = std::string(rest.substr(0, slash));
  if (parts.authority.empty()) throw InvalidArgument(fmt::format("URL without host: {}", url));
  if (slash == std::string_view::npos) return parts;
  rest = rest.substr(slash);
  std::size_t q = rest.find('?');
  parts.path = std::string(rest.substr(0, q));
  if (q != std::string_view::npos) parts.query = std::string(rest.substr(q + 1));
  return parts;
}

}  // namespace

bool is_absolute_http_url(std::string_view url) {
  try {
    split_url(url);
    return true;
  } catch (const InvalidArgument&) {
    return false;
  }
}

std::string canonicalize_url(std::string_view url) {
  UrlParts parts = split_url(text::trim(url));
  std::string host = text::to_lower(parts.authority);
  if (std::size_t at = host.rfind('@'); at != std::string::npos) host = host.substr(at + 1);
  if (parts.scheme == "http" && host.size() > 3 && host.ends_with(":80")) host.resize(host.size() - 3);
  if (parts.scheme == "https" && host.size() > 4 && host.ends_with(":443")) host.resize(host.size() - 4);

  std::vector<std::string> kept;
  for (const std::string& param : text::split(parts.query, '&')) {
    if (param.empty()) continue;
    std::string_view name = std::string_view(param).substr(0, param.find('='));
    if (!is_tracking_param(name)) kept.push_back(param);
  }
  std::string out = parts.scheme + "://" + host + (parts.path.empty() ? "/" : parts.path);
  if (!kept.empty()) out += "?" + text::join(kept, "&");
  return out;
}

std::string make_article_id(std::string_view publisher_id, std::string_view canonical_url) {
  std::string key;
  key.reserve(publisher_id.size() + canonical_url.size() + 1);
  key.append(publisher_id).append("\n").append(canonical_url);
  return short_digest(key);
}

std::string resolve_url(std::string_view base, std::string_view href) {
  href = text::trim(href);
  if (is_absolute_http_url(href)) return std::string(href);
  UrlParts b = split_url(base);
  if (href.starts_with("//")) return b.scheme + ":" + std::string(href);
  std::string origin = b.scheme + "://" + b.authority;
  if (href.starts_with("/")) return origin + std::string(href);
  std::string dir = b.path.empty() ? "/" : b.path.substr(0, b.path.rfind('/') + 1);
  return origin + dir + std::string(href);
}

}  // namespace biaslens

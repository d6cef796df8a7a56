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

#include "biaslens/ingest/fetch.hpp"

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include <array>

#include "biaslens/ingest/html.hpp"
#include "biaslens/ingest/url.hpp"
#include "biaslens/util/files.hpp"
#include "biaslens/util/strings.hpp"

namespace biaslens {
namespace {

constexpr std::array<std::string_view, 8> kNonArticleSegments = {
    "/video/", "/videos/", "/podcast/", "/podcasts/", "/gallery/", "/galleries/", "/live-tv/", "/audio/"};
constexpr int kMaxRedirects = 5;

}  // namespace

std::string_view to_string(FetchErrorKind kind) {
  switch (kind) {
    case FetchErrorKind::kPaywall:
      return "paywall";
    case FetchErrorKind::kBrokenLink:
      return "broken_link";
    case FetchErrorKind::kNonArticle:
      return "non_article";
    case FetchErrorKind::kTimeout:
      return "timeout";
  }
  return "unknown";
}

FetchError::FetchError(FetchErrorKind kind, std::string url, std::string detail)
    : Error(fmt::format("{}: {}{}{}", to_string(kind), url, detail.empty() ? "" : ": ", detail)),
      kind_(kind),
      url_(std::move(url)) {}

FixturePageSource::FixturePageSource(std::filesystem::path dir) : dir_(std::move(dir)) {
  nlohmann::json index = nlohmann::json::parse(read_file(dir_ / "index.json"));
  for (auto it = index.begin(); it != index.end(); ++it) index_[it.key()] = it.value().get<std::string>();
}

FetchedPage FixturePageSource::get(const std::string& url) {
  auto it = index_.find(url);
  if (it == index_.end()) it = index_.find(canonicalize_url(url));
  if (it == index_.end()) return {404, {}};
  if (it->second == "@timeout") throw FetchError(FetchErrorKind::kTimeout, url);
  if (it->second.rfind("@status:", 0) == 0) return {std::stoi(it->second.substr(8)), {}};
  return {200, read_file(dir_ / it->second)};
}

HttpPageSource::HttpPageSource(std::chrono::seconds timeout, std::string user_agent)
    : timeout_(timeout), user_agent_(std::move(user_agent)) {}

FetchedPage HttpPageSource::get(const std::string& url) {
  std::string target = url;
  for (int hop = 0; hop <= kMaxRedirects; ++hop) {
    std::size_t scheme_end = target.find("://");
    std::size_t path_start = target.find('/', scheme_end + 3);
    std::string origin = target.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/" : target.substr(path_start);
    httplib::Client client(origin);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    httplib::Headers headers = {{"User-Agent", user_agent_}};
    httplib::Result res = client.Get(path, headers);
    if (!res) {
      if (res.error() == httplib::Error::Read || res.error() == httplib::Error::Connection) {
        throw FetchError(FetchErrorKind::kTimeout, url, httplib::to_string(res.error()));
      }
      throw FetchError(FetchErrorKind::kBrokenLink, url, httplib::to_string(res.error()));
    }
    if (res->status >= 300 && res->status < 400 && res->has_header("Location")) {
      target = resolve_url(target, res->get_header_value("Location"));
      continue;
    }
    return {res->status, res->body};
  }
  throw FetchError(FetchErrorKind::kBrokenLink, url, "too many redirects");
}

bool is_non_article_url(std::string_view url) {
  std::string lower = text::to_lower(url);
  for (std::string_view seg : kNonArticleSegments) {
    if (lower.find(seg) != std::string::npos) return true;
  }
  return false;
}

CleanedArticle fetch_and_clean(const std::string& url, const CleaningDictionary& dictionary, PageSource& source) {
  if (is_non_article_url(url)) throw FetchError(FetchErrorKind::kNonArticle, url);
  FetchedPage fetched = source.get(url);
  if (fetched.status == 401 || fetched.status == 402 || fetched.status == 403) {
    throw FetchError(FetchErrorKind::kPaywall, url, fmt::format("HTTP {}", fetched.status));
  }
  if (fetched.status != 200) {
    throw FetchError(FetchErrorKind::kBrokenLink, url, fmt::format("HTTP {}", fetched.status));
  }
  ExtractedPage page = extract_article(fetched.html);
  if (page.og_type.starts_with("video") || page.og_type.starts_with("music")) {
    throw FetchError(FetchErrorKind::kNonArticle, url, "og:type " + page.og_type);
  }
  CleanedArticle out;
  out.title = dictionary.clean(page.title);
  out.body = dictionary.clean(page.body);
  out.published_at = page.published_at;
  if (page.paywall_marker && text::word_count(out.body) < kPaywallMinWords) {
    throw FetchError(FetchErrorKind::kPaywall, url, "truncated body behind paywall");
  }
  if (out.body.empty()) throw FetchError(FetchErrorKind::kNonArticle, url, "no article text");
  return out;
}

}  // namespace biaslens

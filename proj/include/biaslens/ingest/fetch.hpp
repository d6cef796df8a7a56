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

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "biaslens/ingest/cleaning.hpp"
#include "biaslens/util/error.hpp"
#include "biaslens/util/time.hpp"

namespace biaslens {

enum class FetchErrorKind { kPaywall, kBrokenLink, kNonArticle, kTimeout };

std::string_view to_string(FetchErrorKind kind);

// Recoverable per-article failure; recorded by the pipeline, never fatal.
class FetchError : public Error {
 public:
  FetchError(FetchErrorKind kind, std::string url, std::string detail = {});

  FetchErrorKind kind() const { return kind_; }
  const std::string& url() const { return url_; }

 private:
  FetchErrorKind kind_;
  std::string url_;
};

struct FetchedPage {
  int status = 200;
  std::string html;
};

class PageSource {
 public:
  virtual ~PageSource() = default;
  // Returns the HTTP status and body. Throws FetchError(kTimeout) when the
  // host does not answer.
  virtual FetchedPage get(const std::string& url) = 0;
};

// Recorded pages: <dir>/index.json maps URL -> file name relative to <dir>.
// Unknown URLs answer 404.
class FixturePageSource : public PageSource {
 public:
  explicit FixturePageSource(std::filesystem::path dir);
  FetchedPage get(const std::string& url) override;

 private:
  std::filesystem::path dir_;
  std::map<std::string, std::string> index_;
};

class HttpPageSource : public PageSource {
 public:
  explicit HttpPageSource(std::chrono::seconds timeout = std::chrono::seconds(20),
                          std::string user_agent = "biaslens/1.0");
  FetchedPage get(const std::string& url) override;

 private:
  std::chrono::seconds timeout_;
  std::string user_agent_;
};

struct CleanedArticle {
  std::string title;
  std::string body;
  std::optional<Timestamp> published_at;
};

// Minimum words for a body to count as an article once a paywall marker is
// present.
inline constexpr std::size_t kPaywallMinWords = 80;

// True for video, podcast, gallery and similar non-article URLs.
bool is_non_article_url(std::string_view url);

// Fetches, extracts and cleans one article. Throws FetchError.
CleanedArticle fetch_and_clean(const std::string& url, const CleaningDictionary& dictionary,
                               PageSource& source);

}  // namespace biaslens

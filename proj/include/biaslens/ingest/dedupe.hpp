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

#include <span>
#include <string>
#include <vector>

#include "biaslens/ingest/prominence.hpp"

namespace biaslens {

// A unique article of one publisher-day, before its page is fetched.
struct ArticleCandidate {
  std::string article_id;
  std::string publisher_id;
  std::string canonical_url;
  std::string title;  // headline text from the earliest snapshot
  int best_rank = 0;  // minimum rank over all appearances
  SnapshotRef first_seen;
  int appearances = 0;

  friend bool operator==(const ArticleCandidate&, const ArticleCandidate&) = default;
};

// Merges all snapshots of one publisher-day into one candidate per article
// identity. Throws InvalidArgument when snapshots span publishers or days.
// Result is ordered by (best_rank, article_id).
std::vector<ArticleCandidate> dedupe_and_merge(std::span<const HomepageSnapshot> snapshots);

}  // namespace biaslens

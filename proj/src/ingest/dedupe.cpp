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

#include "biaslens/ingest/dedupe.hpp"

#include <algorithm>
#include <map>

#include "biaslens/ingest/url.hpp"
#include "biaslens/util/error.hpp"

namespace biaslens {

std::vector<ArticleCandidate> dedupe_and_merge(std::span<const HomepageSnapshot> snapshots) {
  std::map<std::string, ArticleCandidate> by_id;
  for (const HomepageSnapshot& snap : snapshots) {
    const SnapshotRef& ref = snap.ref;
    if (ref.publisher_id != snapshots.front().ref.publisher_id || ref.date != snapshots.front().ref.date) {
      throw InvalidArgument("dedupe_and_merge expects snapshots of a single publisher-day");
    }
    for (const SnapshotItem& item : snap.items) {
      std::string url = canonicalize_url(item.url);
      std::string id = make_article_id(ref.publisher_id, url);
      auto [it, inserted] = by_id.try_emplace(id);
      ArticleCandidate& c = it->second;
      if (inserted) {
        c = {id, ref.publisher_id, url, item.title, item.rank, ref, 1};
        continue;
      }
      ++c.appearances;
      c.best_rank = std::min(c.best_rank, item.rank);
      if (ref.captured_at < c.first_seen.captured_at) {
        c.first_seen = ref;
        c.title = item.title;
      }
    }
  }
  std::vector<ArticleCandidate> out;
  out.reserve(by_id.size());
  for (auto& [id, c] : by_id) out.push_back(std::move(c));
  std::stable_sort(out.begin(), out.end(), [](const ArticleCandidate& a, const ArticleCandidate& b) {
    return a.best_rank < b.best_rank;
  });
  return out;
}

}  // namespace biaslens

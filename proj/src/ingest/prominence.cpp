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

#include "biaslens/ingest/prominence.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "biaslens/util/error.hpp"

namespace biaslens {

void ProminenceWeights::check() const {
  if (position < 0 || font < 0 || image < 0) throw InvalidArgument("prominence weights must be non-negative");
}

void check_snapshot_item(const SnapshotItem& item) {
  if (item.url.empty()) throw InvalidArgument("snapshot item without URL");
  if (!std::isfinite(item.y_offset) || item.y_offset < 0) {
    throw InvalidArgument(fmt::format("negative y_offset for {}", item.url));
  }
  if (!std::isfinite(item.font_size) || item.font_size <= 0) {
    throw InvalidArgument(fmt::format("non-positive font_size for {}", item.url));
  }
  if (!std::isfinite(item.image_area) || item.image_area < 0) {
    throw InvalidArgument(fmt::format("negative image_area for {}", item.url));
  }
}

double ProminenceScorer::Range::norm(double v) const {
  if (hi <= lo) return 1.0;
  return (v - lo) / (hi - lo);
}

ProminenceScorer::ProminenceScorer(std::span<const SnapshotItem> snapshot, ProminenceWeights weights)
    : weights_(weights) {
  weights_.check();
  if (snapshot.empty()) throw InvalidArgument("empty snapshot");
  auto range_of = [&](auto field) {
    auto [lo, hi] = std::minmax_element(snapshot.begin(), snapshot.end(),
                                        [&](const SnapshotItem& a, const SnapshotItem& b) { return field(a) < field(b); });
    return Range{field(*lo), field(*hi)};
  };
  y_ = range_of([](const SnapshotItem& i) { return i.y_offset; });
  font_ = range_of([](const SnapshotItem& i) { return i.font_size; });
  image_ = range_of([](const SnapshotItem& i) { return i.image_area; });
}

double ProminenceScorer::score(const SnapshotItem& item) const {
  return -weights_.position * y_.norm(item.y_offset) + weights_.font * font_.norm(item.font_size) +
         weights_.image * image_.norm(item.image_area);
}

HomepageSnapshot rank_snapshot(SnapshotRef ref, std::vector<SnapshotItem> raw, const SnapshotSpec& spec,
                               const ProminenceWeights& weights) {
  for (const SnapshotItem& item : raw) check_snapshot_item(item);
  HomepageSnapshot out{std::move(ref), {}};
  if (raw.empty()) return out;

  ProminenceScorer scorer(raw, weights);
  std::vector<std::pair<double, SnapshotItem>> scored;
  scored.reserve(raw.size());
  for (SnapshotItem& item : raw) {
    double s = scorer.score(item);
    scored.emplace_back(s, std::move(item));
  }
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    if (a.second.y_offset != b.second.y_offset) return a.second.y_offset < b.second.y_offset;
    return a.second.url < b.second.url;
  });
  int rank = 1;
  for (std::size_t i = 0; i < scored.size(); ++i) {
    if (i > 0 && scored[i].first < scored[i - 1].first) rank = static_cast<int>(i) + 1;
    scored[i].second.rank = rank;
  }
  std::size_t keep = std::min<std::size_t>(scored.size(), static_cast<std::size_t>(spec.top_k_scraped));
  for (std::size_t i = 0; i < keep; ++i) out.items.push_back(std::move(scored[i].second));
  return out;
}

}  // namespace biaslens

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

#include "biaslens/core/registry.hpp"
#include "biaslens/core/types.hpp"

namespace biaslens {

// One headline slot on a rendered homepage.
struct SnapshotItem {
  std::string url;
  std::string title;
  double y_offset = 0;    // pixels from page top
  double font_size = 0;   // points
  double image_area = 0;  // square pixels, 0 if no image
  int rank = 0;           // 1 + number of items with strictly greater prominence

  friend bool operator==(const SnapshotItem&, const SnapshotItem&) = default;
};

struct HomepageSnapshot {
  SnapshotRef ref;
  std::vector<SnapshotItem> items;  // descending prominence
};

struct ProminenceWeights {
  double position = 0.6;
  double font = 0.25;
  double image = 0.15;

  void check() const;  // all weights >= 0
};

// score = -w_pos*norm(y) + w_font*norm(font) + w_img*norm(image), each signal
// min-max normalized over the snapshot. When a signal has no spread (for
// example a single-item snapshot) its normalized value is 1.
class ProminenceScorer {
 public:
  ProminenceScorer(std::span<const SnapshotItem> snapshot, ProminenceWeights weights);

  double score(const SnapshotItem& item) const;

 private:
  struct Range {
    double lo = 0, hi = 0;
    double norm(double v) const;
  };
  Range y_, font_, image_;
  ProminenceWeights weights_;
};

// Throws InvalidArgument on negative offsets/areas or non-positive font size.
void check_snapshot_item(const SnapshotItem& item);

// Scores every item, assigns ranks, orders by score descending (ties: smaller
// y_offset, then URL), and keeps the first spec.top_k_scraped.
HomepageSnapshot rank_snapshot(SnapshotRef ref, std::vector<SnapshotItem> raw,
                               const SnapshotSpec& spec, const ProminenceWeights& weights = {});

}  // namespace biaslens

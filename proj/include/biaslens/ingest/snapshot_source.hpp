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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "biaslens/core/types.hpp"
#include "biaslens/ingest/prominence.hpp"

namespace biaslens {

// Parses the snapshot fixture format: one JSON document per line with
// {url, title, y_offset, font_size, image_area}.
std::vector<SnapshotItem> parse_snapshot_items(std::string_view ndjson);
std::string format_snapshot_items(const std::vector<SnapshotItem>& items);

class SnapshotSource {
 public:
  virtual ~SnapshotSource() = default;
  // Raw, unranked items of one homepage capture.
  virtual std::vector<SnapshotItem> capture(const Publisher& publisher, const SnapshotRef& ref) = 0;
};

// Recorded captures at <dir>/snapshots/<publisher>/<YYYY-MM-DD>_<HHMM>.ndjson
// where HHMM is the local schedule time. Missing files throw NotFound.
class FixtureSnapshotSource : public SnapshotSource {
 public:
  FixtureSnapshotSource(std::filesystem::path dir, std::string timezone_rule);
  std::vector<SnapshotItem> capture(const Publisher& publisher, const SnapshotRef& ref) override;

  static std::filesystem::path path_for(const std::filesystem::path& dir, std::string_view publisher_id,
                                        CivilDate date, int minutes_local);

 private:
  std::filesystem::path dir_;
  std::string timezone_rule_;
};

// Live capture through an external page renderer: runs `command <homepage_url>`
// and reads the fixture format from its stdout. Geometry requires a real
// browser layout, which this library does not embed.
class CommandSnapshotSource : public SnapshotSource {
 public:
  explicit CommandSnapshotSource(std::string command);
  std::vector<SnapshotItem> capture(const Publisher& publisher, const SnapshotRef& ref) override;

 private:
  std::string command_;
};

}  // namespace biaslens

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

#include "biaslens/core/schema.hpp"
#include "biaslens/core/types.hpp"

namespace biaslens {

// Publishers are data: loaded from a JSON array of
// {"id", "display_name", "homepage_url", "enabled"} objects.
class PublisherRegistry {
 public:
  PublisherRegistry() = default;
  explicit PublisherRegistry(std::vector<Publisher> publishers);

  static PublisherRegistry from_json(const Json& doc);
  static PublisherRegistry load(const std::filesystem::path& path);

  const std::vector<Publisher>& all() const { return publishers_; }
  std::vector<Publisher> enabled() const;
  const Publisher& get(std::string_view id) const;  // throws NotFound
  bool contains(std::string_view id) const;

 private:
  std::vector<Publisher> publishers_;
};

// Daily capture schedule. Times are minutes after local midnight.
struct SnapshotSpec {
  std::vector<int> times_local{6 * 60, 10 * 60, 14 * 60, 18 * 60, 22 * 60};
  std::string timezone_rule = "EST5EDT,M3.2.0,M11.1.0";
  int top_k_scraped = 30;
  int top_k_labeled = 20;

  // Throws InvalidArgument when times are not strictly increasing within a day
  // or top_k_labeled > top_k_scraped.
  void check() const;
};

SnapshotSpec snapshot_spec_from_json(const Json& doc);
Json to_document(const SnapshotSpec& spec);

// "06:00" <-> 360
int parse_clock_time(std::string_view hhmm);
std::string format_clock_time(int minutes);

}  // namespace biaslens

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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biaslens/util/error.hpp"

namespace biaslens {

enum class HierarchyLevel { kCategory, kTopic, kSubtopic };

std::string_view to_string(HierarchyLevel level);
HierarchyLevel parse_hierarchy_level(std::string_view s);

// One row of the versioned flat table: (name, level, parent, version).
struct HierarchyEntry {
  std::string name;
  HierarchyLevel level = HierarchyLevel::kTopic;
  std::string parent;  // empty for categories
  int version = 1;     // hierarchy version that introduced the entry

  friend bool operator==(const HierarchyEntry&, const HierarchyEntry&) = default;
};

class HierarchyError : public Error {
 public:
  using Error::Error;
};

// The category > topic > subtopic label space. Immutable: additions return a
// new value with version + 1 and the same table grown by one row, so any
// earlier version stays reconstructible via at_version().
class TopicHierarchy {
 public:
  // The catch-all subtopic every topic accepts.
  static constexpr std::string_view kOtherSubtopic = "Other";

  static TopicHierarchy from_entries(std::vector<HierarchyEntry> entries);
  static TopicHierarchy parse_csv(std::string_view csv);
  static TopicHierarchy load_csv(const std::filesystem::path& path);
  std::string to_csv() const;

  int version() const { return version_; }
  const std::vector<HierarchyEntry>& entries() const { return *entries_; }

  TopicHierarchy at_version(int version) const;

  // hierarchy_add: new topic under a category, or new subtopic under a topic.
  TopicHierarchy add(HierarchyLevel level, std::string name, std::string parent) const;

  bool has_category(std::string_view name) const;
  bool has_topic(std::string_view name) const;
  bool has_subtopic(std::string_view name) const;

  std::vector<std::string> categories() const;
  std::vector<std::string> topics() const;
  std::vector<std::string> subtopics_of(std::string_view topic) const;
  std::size_t subtopic_count() const;

  // Throws NotFound for unknown topics.
  const std::string& category_of(std::string_view topic) const;
  std::optional<std::string> topic_of_subtopic(std::string_view subtopic) const;
  // True when `subtopic` is listed under `topic` or is the literal "Other".
  bool subtopic_allowed(std::string_view topic, std::string_view subtopic) const;

 private:
  struct Index;
  TopicHierarchy(std::shared_ptr<const std::vector<HierarchyEntry>> entries, int version);

  std::shared_ptr<const std::vector<HierarchyEntry>> entries_;
  std::shared_ptr<const Index> index_;
  int version_ = 0;
};

}  // namespace biaslens

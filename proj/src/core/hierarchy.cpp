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

#include "biaslens/core/hierarchy.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "biaslens/util/csv.hpp"
#include "biaslens/util/strings.hpp"

namespace biaslens {

std::string_view to_string(HierarchyLevel level) {
  switch (level) {
    case HierarchyLevel::kCategory:
      return "category";
    case HierarchyLevel::kTopic:
      return "topic";
    case HierarchyLevel::kSubtopic:
      return "subtopic";
  }
  return {};
}

HierarchyLevel parse_hierarchy_level(std::string_view s) {
  if (s == "category") return HierarchyLevel::kCategory;
  if (s == "topic") return HierarchyLevel::kTopic;
  if (s == "subtopic") return HierarchyLevel::kSubtopic;
  throw HierarchyError(fmt::format("unknown hierarchy level '{}'", s));
}

struct TopicHierarchy::Index {
  std::vector<std::string> categories;
  std::vector<std::string> topics;
  std::unordered_map<std::string, std::string> topic_category;
  std::unordered_map<std::string, std::string> subtopic_topic;
  std::unordered_map<std::string, std::vector<std::string>> topic_subtopics;
};

TopicHierarchy::TopicHierarchy(std::shared_ptr<const std::vector<HierarchyEntry>> entries,
                               int version)
    : entries_(std::move(entries)), version_(version) {
  auto index = std::make_shared<Index>();
  for (const HierarchyEntry& e : *entries_) {
    if (e.version > version_) continue;
    switch (e.level) {
      case HierarchyLevel::kCategory:
        index->categories.push_back(e.name);
        break;
      case HierarchyLevel::kTopic:
        index->topics.push_back(e.name);
        index->topic_category.emplace(e.name, e.parent);
        break;
      case HierarchyLevel::kSubtopic:
        index->subtopic_topic.emplace(e.name, e.parent);
        index->topic_subtopics[e.parent].push_back(e.name);
        break;
    }
  }
  index_ = std::move(index);
}

TopicHierarchy TopicHierarchy::from_entries(std::vector<HierarchyEntry> entries) {
  // Parents must precede children and exist at the level above.
  std::unordered_map<std::string, int> seen[3];
  int max_version = 1;
  for (const HierarchyEntry& e : entries) {
    if (e.name.empty()) throw HierarchyError("hierarchy entry with empty name");
    if (e.version < 1) throw HierarchyError(fmt::format("entry '{}' has version < 1", e.name));
    auto level = static_cast<int>(e.level);
    if (seen[level].count(e.name)) {
      throw HierarchyError(fmt::format("duplicate {} '{}'", to_string(e.level), e.name));
    }
    if (e.level == HierarchyLevel::kSubtopic && e.name == kOtherSubtopic) {
      throw HierarchyError("'Other' is implicit under every topic");
    }
    if (e.level == HierarchyLevel::kCategory) {
      if (!e.parent.empty()) throw HierarchyError(fmt::format("category '{}' has a parent", e.name));
    } else {
      auto it = seen[level - 1].find(e.parent);
      if (it == seen[level - 1].end()) {
        throw HierarchyError(fmt::format("unknown parent '{}' for {} '{}'", e.parent,
                                         to_string(e.level), e.name));
      }
      if (it->second > e.version) {
        throw HierarchyError(fmt::format("'{}' predates its parent '{}'", e.name, e.parent));
      }
    }
    seen[level].emplace(e.name, e.version);
    max_version = std::max(max_version, e.version);
  }
  return TopicHierarchy(std::make_shared<const std::vector<HierarchyEntry>>(std::move(entries)),
                        max_version);
}

TopicHierarchy TopicHierarchy::parse_csv(std::string_view doc) {
  auto rows = csv::parse(doc);
  if (rows.empty() || rows.front() != std::vector<std::string>{"name", "level", "parent", "version"}) {
    throw HierarchyError("hierarchy csv must start with header name,level,parent,version");
  }
  std::vector<HierarchyEntry> entries;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 4) throw HierarchyError(fmt::format("hierarchy csv row {} has {} fields", i + 1, r.size()));
    int version = 0;
    try {
      version = std::stoi(r[3]);
    } catch (const std::exception&) {
      throw HierarchyError(fmt::format("hierarchy csv row {}: bad version '{}'", i + 1, r[3]));
    }
    entries.push_back({r[0], parse_hierarchy_level(r[1]), r[2], version});
  }
  return from_entries(std::move(entries));
}

TopicHierarchy TopicHierarchy::load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFound(fmt::format("cannot open hierarchy file {}", path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

std::string TopicHierarchy::to_csv() const {
  std::string out = "name,level,parent,version\n";
  for (const HierarchyEntry& e : *entries_) {
    if (e.version > version_) continue;
    out += csv::format_row({e.name, std::string(to_string(e.level)), e.parent,
                            std::to_string(e.version)});
    out += '\n';
  }
  return out;
}

TopicHierarchy TopicHierarchy::at_version(int version) const {
  if (version < 1 || version > version_) {
    throw NotFound(fmt::format("hierarchy version {} not available (current {})", version, version_));
  }
  return TopicHierarchy(entries_, version);
}

TopicHierarchy TopicHierarchy::add(HierarchyLevel level, std::string name, std::string parent) const {
  if (level == HierarchyLevel::kCategory) throw HierarchyError("categories are fixed seed data");
  name = std::string(text::trim(name));
  if (name.empty()) throw HierarchyError("empty name");
  bool exists = level == HierarchyLevel::kTopic ? has_topic(name) : has_subtopic(name);
  if (exists || (level == HierarchyLevel::kSubtopic && name == kOtherSubtopic)) {
    throw HierarchyError(fmt::format("duplicate {} '{}'", to_string(level), name));
  }
  bool parent_ok = level == HierarchyLevel::kTopic ? has_category(parent) : has_topic(parent);
  if (!parent_ok) {
    throw HierarchyError(fmt::format("unknown parent '{}' for {} '{}'", parent, to_string(level), name));
  }
  // Copy-on-write: only rows visible at this version carry over, so adding to
  // an old view forks rather than clobbering newer rows.
  auto grown = std::make_shared<std::vector<HierarchyEntry>>();
  for (const HierarchyEntry& e : *entries_) {
    if (e.version <= version_) grown->push_back(e);
  }
  grown->push_back({std::move(name), level, std::move(parent), version_ + 1});
  return TopicHierarchy(std::move(grown), version_ + 1);
}

bool TopicHierarchy::has_category(std::string_view name) const {
  const auto& c = index_->categories;
  return std::find(c.begin(), c.end(), name) != c.end();
}

bool TopicHierarchy::has_topic(std::string_view name) const {
  return index_->topic_category.count(std::string(name)) > 0;
}

bool TopicHierarchy::has_subtopic(std::string_view name) const {
  return index_->subtopic_topic.count(std::string(name)) > 0;
}

std::vector<std::string> TopicHierarchy::categories() const { return index_->categories; }
std::vector<std::string> TopicHierarchy::topics() const { return index_->topics; }

std::vector<std::string> TopicHierarchy::subtopics_of(std::string_view topic) const {
  auto it = index_->topic_subtopics.find(std::string(topic));
  if (it == index_->topic_subtopics.end()) return {};
  return it->second;
}

std::size_t TopicHierarchy::subtopic_count() const { return index_->subtopic_topic.size(); }

const std::string& TopicHierarchy::category_of(std::string_view topic) const {
  auto it = index_->topic_category.find(std::string(topic));
  if (it == index_->topic_category.end()) throw NotFound(fmt::format("unknown topic '{}'", topic));
  return it->second;
}

std::optional<std::string> TopicHierarchy::topic_of_subtopic(std::string_view subtopic) const {
  auto it = index_->subtopic_topic.find(std::string(subtopic));
  if (it == index_->subtopic_topic.end()) return std::nullopt;
  return it->second;
}

bool TopicHierarchy::subtopic_allowed(std::string_view topic, std::string_view subtopic) const {
  if (!has_topic(topic)) return false;
  if (subtopic == kOtherSubtopic) return true;
  auto parent = topic_of_subtopic(subtopic);
  return parent && *parent == topic;
}

}  // namespace biaslens

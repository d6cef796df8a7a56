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

#include "biaslens/core/registry.hpp"

#include <fmt/format.h>

#include <fstream>
#include <set>

namespace biaslens {

PublisherRegistry::PublisherRegistry(std::vector<Publisher> publishers)
    : publishers_(std::move(publishers)) {
  std::set<std::string> ids;
  for (const Publisher& p : publishers_) {
    if (!ids.insert(p.id).second) throw SchemaError("id", "duplicate", p.id);
    if (p.homepage_url.rfind("http://", 0) != 0 && p.homepage_url.rfind("https://", 0) != 0) {
      throw SchemaError("homepage_url", "not-absolute", p.homepage_url);
    }
  }
}

PublisherRegistry PublisherRegistry::from_json(const Json& doc) {
  if (!doc.is_array()) throw SchemaError("publishers", "wrong-type", "expected array");
  std::vector<Publisher> out;
  for (const Json& item : doc) out.push_back(publisher_from_document(item));
  return PublisherRegistry(std::move(out));
}

PublisherRegistry PublisherRegistry::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFound(fmt::format("cannot open publisher registry {}", path.string()));
  return from_json(Json::parse(in));
}

std::vector<Publisher> PublisherRegistry::enabled() const {
  std::vector<Publisher> out;
  for (const Publisher& p : publishers_) {
    if (p.enabled) out.push_back(p);
  }
  return out;
}

const Publisher& PublisherRegistry::get(std::string_view id) const {
  for (const Publisher& p : publishers_) {
    if (p.id == id) return p;
  }
  throw NotFound(fmt::format("unknown publisher '{}'", id));
}

bool PublisherRegistry::contains(std::string_view id) const {
  for (const Publisher& p : publishers_) {
    if (p.id == id) return true;
  }
  return false;
}

void SnapshotSpec::check() const {
  if (times_local.empty()) throw InvalidArgument("snapshot schedule is empty");
  for (std::size_t i = 0; i < times_local.size(); ++i) {
    if (times_local[i] < 0 || times_local[i] >= 24 * 60) {
      throw InvalidArgument(fmt::format("snapshot time {} outside the day", times_local[i]));
    }
    if (i && times_local[i] <= times_local[i - 1]) {
      throw InvalidArgument("snapshot times must be strictly increasing");
    }
  }
  if (top_k_scraped < 1 || top_k_labeled < 1) throw InvalidArgument("top_k values must be positive");
  if (top_k_labeled > top_k_scraped) throw InvalidArgument("top_k_labeled exceeds top_k_scraped");
}

int parse_clock_time(std::string_view s) {
  if (s.size() != 5 || s[2] != ':') throw InvalidArgument(fmt::format("bad clock time '{}'", s));
  auto digit = [&](char c) {
    if (c < '0' || c > '9') throw InvalidArgument(fmt::format("bad clock time '{}'", s));
    return c - '0';
  };
  int h = digit(s[0]) * 10 + digit(s[1]);
  int m = digit(s[3]) * 10 + digit(s[4]);
  if (h > 23 || m > 59) throw InvalidArgument(fmt::format("bad clock time '{}'", s));
  return h * 60 + m;
}

std::string format_clock_time(int minutes) {
  return fmt::format("{:02d}:{:02d}", minutes / 60, minutes % 60);
}

SnapshotSpec snapshot_spec_from_json(const Json& doc) {
  SnapshotSpec spec;
  if (auto it = doc.find("times_local"); it != doc.end()) {
    spec.times_local.clear();
    for (const Json& t : *it) spec.times_local.push_back(parse_clock_time(t.get<std::string>()));
  }
  spec.timezone_rule = doc.value("timezone_rule", spec.timezone_rule);
  spec.top_k_scraped = doc.value("top_k_scraped", spec.top_k_scraped);
  spec.top_k_labeled = doc.value("top_k_labeled", spec.top_k_labeled);
  spec.check();
  return spec;
}

Json to_document(const SnapshotSpec& spec) {
  Json times = Json::array();
  for (int t : spec.times_local) times.push_back(format_clock_time(t));
  return Json{{"times_local", times},
              {"timezone_rule", spec.timezone_rule},
              {"top_k_scraped", spec.top_k_scraped},
              {"top_k_labeled", spec.top_k_labeled}};
}

}  // namespace biaslens

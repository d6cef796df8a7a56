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

#include "biaslens/ingest/snapshot_source.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <array>
#include <cstdio>
#include <memory>

#include "biaslens/core/schema.hpp"
#include "biaslens/util/error.hpp"
#include "biaslens/util/files.hpp"

namespace biaslens {
namespace {

double number_field(const Json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number()) throw SchemaError(key, "wrong-type", "expected number");
  return doc[key].get<double>();
}

std::string shell_quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

std::vector<SnapshotItem> parse_snapshot_items(std::string_view ndjson) {
  std::vector<SnapshotItem> items;
  for (std::string_view line : ndjson_lines(ndjson)) {
    Json doc = Json::parse(line);
    SnapshotItem item;
    item.url = require_string(doc, "url");
    item.title = doc.value("title", std::string());
    item.y_offset = number_field(doc, "y_offset", 0);
    item.font_size = number_field(doc, "font_size", 0);
    item.image_area = number_field(doc, "image_area", 0);
    items.push_back(std::move(item));
  }
  return items;
}

std::string format_snapshot_items(const std::vector<SnapshotItem>& items) {
  std::string out;
  for (const SnapshotItem& item : items) {
    Json doc = {{"url", item.url},
                {"title", item.title},
                {"y_offset", item.y_offset},
                {"font_size", item.font_size},
                {"image_area", item.image_area}};
    out += doc.dump() + "\n";
  }
  return out;
}

FixtureSnapshotSource::FixtureSnapshotSource(std::filesystem::path dir, std::string timezone_rule)
    : dir_(std::move(dir)), timezone_rule_(std::move(timezone_rule)) {}

std::filesystem::path FixtureSnapshotSource::path_for(const std::filesystem::path& dir, std::string_view publisher_id,
                                                      CivilDate date, int minutes_local) {
  return dir / "snapshots" / std::string(publisher_id) /
         fmt::format("{}_{:02d}{:02d}.ndjson", format_date(date), minutes_local / 60, minutes_local % 60);
}

std::vector<SnapshotItem> FixtureSnapshotSource::capture(const Publisher& publisher, const SnapshotRef& ref) {
  TimeZone zone(timezone_rule_);
  auto midnight = zone.to_utc(ref.date, 0);
  int minutes = static_cast<int>(std::chrono::duration_cast<std::chrono::minutes>(ref.captured_at - midnight).count());
  // Local midnight may sit an hour off on DST transition days; the schedule
  // never captures within an hour of midnight.
  std::filesystem::path path = path_for(dir_, publisher.id, ref.date, minutes);
  if (!std::filesystem::exists(path)) {
    throw NotFound(fmt::format("no recorded snapshot {}", path.string()));
  }
  return parse_snapshot_items(read_file(path));
}

CommandSnapshotSource::CommandSnapshotSource(std::string command) : command_(std::move(command)) {}

std::vector<SnapshotItem> CommandSnapshotSource::capture(const Publisher& publisher, const SnapshotRef&) {
  std::string cmd = command_ + " " + shell_quote(publisher.homepage_url);
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  if (!pipe) throw Error(fmt::format("cannot run snapshot renderer: {}", command_));
  std::string output;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe.get())) output.append(buf.data(), n);
  int status = pclose(pipe.release());
  if (status != 0) throw Error(fmt::format("snapshot renderer exited with status {}", status));
  return parse_snapshot_items(output);
}

}  // namespace biaslens

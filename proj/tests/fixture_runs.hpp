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
#include <memory>
#include <set>
#include <string>

#include "biaslens/store/config.hpp"
#include "biaslens/store/queries.hpp"
#include "biaslens/util/files.hpp"
#include "test_support.hpp"

namespace biaslens::testing {

// A committed fixture config with its store moved to a scratch file.
struct FixtureRun {
  AppConfig config;
  std::unique_ptr<Providers> providers;
  std::unique_ptr<PipelineDeps> deps;
  std::unique_ptr<Store> store;
};

inline FixtureRun open_fixture(const std::string& config_rel, const std::string& scratch_name) {
  FixtureRun run;
  run.config = AppConfig::load(source_path(config_rel));
  run.config.store = scratch_dir(scratch_name) / "store.db";
  run.providers = std::make_unique<Providers>(make_providers(run.config.provider, run.config.snapshot));
  run.deps = std::make_unique<PipelineDeps>(make_pipeline_deps(run.config, *run.providers));
  run.store = std::make_unique<Store>(Store::open(run.config.store, run.providers->clock));
  return run;
}

inline CivilDate fixture_day_date() { return parse_date("2024-10-01"); }

inline Json fixture_day_golden() { return Json::parse(read_file(source_path("fixtures/fixture_day/golden.json"))); }

inline std::set<CivilDate> text_s1_dates() {
  std::set<CivilDate> dates;
  const std::string text = read_file(source_path("fixtures/text_s1/articles.ndjson"));
  for (std::string_view line : ndjson_lines(text)) {
    dates.insert(article_from_document(Json::parse(line)).first_seen_snapshot.date);
  }
  return dates;
}

// Imports the Text S1 articles and labels and clusters each of their days.
inline FixtureRun text_s1_store(const std::string& scratch_name) {
  FixtureRun run = open_fixture("fixtures/text_s1/config.json", scratch_name);
  import_articles(*run.store, read_file(source_path("fixtures/text_s1/articles.ndjson")));
  RunDayOptions options;
  options.stages = {StageName::kLabel, StageName::kCluster};
  for (CivilDate d : text_s1_dates()) {
    DayReport report = run_day(*run.store, *run.deps, d, options);
    if (!report.ok()) throw Error("text s1 run failed: " + to_document(report).dump());
  }
  return run;
}

}  // namespace biaslens::testing

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

#include <gtest/gtest.h>

#include "biaslens/store/service.hpp"
#include "biaslens/store/validation_store.hpp"
#include "fixture_runs.hpp"

namespace biaslens {
namespace {

using testing::FixtureRun;

HttpResponse get(ApiService& api, std::string path, std::map<std::string, std::string> query = {}) {
  HttpRequest r;
  r.path = std::move(path);
  r.query = std::move(query);
  return api.handle(r);
}

HttpResponse post(ApiService& api, std::string path, const Json& body) {
  HttpRequest r;
  r.method = "POST";
  r.path = std::move(path);
  r.body = body.dump();
  return api.handle(r);
}

TEST(Service, EventsListTheImportedTableBySize) {
  FixtureRun run = testing::open_fixture("fixtures/text_s1/config.json", "service_table");
  import_event_table(*run.store, Json::parse(read_file(testing::source_path("fixtures/table_s1/events.json"))));
  ApiService api(*run.store, run.deps->hierarchy);
  HttpResponse r = get(api, "/events", {{"date", "2024-10-01"}});
  ASSERT_EQ(r.status, 200) << r.body;
  Json doc = r.json();
  ASSERT_EQ(doc["events"].size(), 22u);
  EXPECT_EQ(doc["events"][0]["article_count"], 75);
  EXPECT_EQ(doc["events"][0]["theme"], "Escalation of Conflict: Israel and Iran's Military Engagements in Lebanon");
  for (std::size_t i = 1; i < doc["events"].size(); ++i) {
    EXPECT_GE(doc["events"][i - 1]["article_count"].get<int>(), doc["events"][i]["article_count"].get<int>());
  }
  EXPECT_EQ(doc["reported_total"], 791);
  EXPECT_EQ(doc["articles_in_events"], 361);

  Json empty = get(api, "/events", {{"date", "2024-10-02"}}).json();
  EXPECT_TRUE(empty["events"].empty());
  EXPECT_TRUE(empty["reported_total"].is_null());
}

TEST(Service, ErrorStatuses) {
  FixtureRun run = testing::open_fixture("fixtures/text_s1/config.json", "service_errors");
  ApiService api(*run.store, run.deps->hierarchy);
  EXPECT_EQ(get(api, "/articles/nope").status, 404);
  EXPECT_EQ(get(api, "/events/nope").status, 404);
  EXPECT_EQ(get(api, "/events", {{"date", "2024-13-01"}}).status, 400);
  EXPECT_EQ(get(api, "/events").status, 400);
  EXPECT_EQ(get(api, "/coverage", {{"measure", "median_vibe"}}).status, 400);
  EXPECT_EQ(get(api, "/coverage", {{"color_by", "size"}}).status, 400);
  EXPECT_EQ(get(api, "/tasks/next").status, 400);
  EXPECT_EQ(get(api, "/reports/nothing").status, 404);
  EXPECT_EQ(post(api, "/tasks/nope/response", Json{{"verdict", "Agree"}}).status, 404);
  HttpRequest del;
  del.method = "DELETE";
  del.path = "/events";
  EXPECT_EQ(api.handle(del).status, 405);
  Json err = get(api, "/events", {{"date", "yesterday"}}).json();
  EXPECT_TRUE(err.contains("error"));

  ServiceOptions with_token;
  with_token.api_token = "s3cret";
  ApiService locked(*run.store, run.deps->hierarchy, with_token);
  EXPECT_EQ(get(locked, "/schema").status, 401);
  HttpRequest authed;
  authed.path = "/schema";
  authed.headers["authorization"] = "Bearer s3cret";
  EXPECT_EQ(locked.handle(authed).status, 200);
}

TEST(Service, SchemaListsEveryEndpoint) {
  Json s = ApiService::schema();
  std::set<std::string> paths;
  for (const Json& e : s.at("endpoints")) paths.insert(e.at("method").get<std::string>() + " " + e.at("path").get<std::string>());
  for (const char* p : {"GET /coverage", "GET /events", "GET /events/{id}", "GET /events/{id}/facts", "GET /articles/{id}",
                        "GET /tasks/next", "POST /tasks/{id}/response", "GET /reports/agreement",
                        "GET /reports/confusion", "GET /reports/cluster-prf"}) {
    EXPECT_TRUE(paths.count(p)) << p;
  }
}

TEST(Service, CoverageOverTextS1) {
  FixtureRun run = testing::text_s1_store("service_coverage");
  ApiService api(*run.store, run.deps->hierarchy);
  HttpResponse r = get(api, "/coverage", {{"group_by", "publisher"}, {"measure", "mean_tone"}});
  ASSERT_EQ(r.status, 200) << r.body;
  bool found = false;
  const Json table = r.json();
  for (const Json& row : table["rows"]) {
    if (row["key"] == Json::array({"usa_today"})) {
      found = true;
      EXPECT_EQ(row["n"], 3);
    }
  }
  EXPECT_TRUE(found) << r.body;

  HttpResponse none = get(api, "/coverage", {{"from", "2023-01-01"}, {"to", "2023-01-31"}});
  ASSERT_EQ(none.status, 200) << none.body;
  EXPECT_TRUE(none.json()["rows"].empty());

  Json colored = get(api, "/coverage", {{"group_by", "publisher"}, {"color_by", "lean"}}).json();
  for (const Json& row : colored["rows"]) {
    int total = 0;
    for (const auto& [score, n] : row["segments"].items()) total += n.get<int>();
    EXPECT_EQ(total, row["n"].get<int>()) << row.dump();
  }
}

TEST(Service, FixtureDayEventsArticlesAndFacts) {
  FixtureRun run = testing::open_fixture("fixtures/fixture_day/config.json", "service_day");
  ASSERT_TRUE(run_day(*run.store, *run.deps, testing::fixture_day_date()).ok());
  ApiService api(*run.store, run.deps->hierarchy);
  Json events = get(api, "/events", {{"date", "2024-10-01"}}).json();
  ASSERT_EQ(events["events"].size(), 5u);
  EXPECT_EQ(events["events"][0]["article_count"], 8);
  EXPECT_EQ(events["unclustered"].size(), 5u);

  std::string top = events["events"][0]["event_id"];
  Json event = get(api, "/events/" + top).json();
  EXPECT_EQ(event["members"].size(), 8u);
  Json facts = get(api, "/events/" + top + "/facts").json();
  ASSERT_FALSE(facts["facts"].empty());
  for (const Json& f : facts["facts"]) {
    EXPECT_EQ(f["size"].get<std::size_t>(), f["sources"].size());
    for (const Json& s : f["sources"]) EXPECT_FALSE(s["text"].get<std::string>().empty());
  }

  std::string member = event["members"][0]["article_id"];
  Json article = get(api, "/articles/" + member).json();
  EXPECT_EQ(article["event_id"], top);
  EXPECT_FALSE(article["labels"].is_null());
  EXPECT_TRUE(article["corrected_labels"].is_null());
  EXPECT_FALSE(article["sentences"].empty());
}

TEST(Service, CorrectionFlowKeepsModelLabels) {
  FixtureRun run = testing::text_s1_store("service_overlay");
  Corpus corpus = load_corpus(*run.store, run.deps->hierarchy);
  TaskBatch batch = sample_validation_batch(*run.store, corpus, StratificationSpec{}, 3, {TaskKind::kArticleLean}, 1);
  ASSERT_FALSE(batch.tasks.empty());
  ApiService api(*run.store, run.deps->hierarchy);

  Json next = get(api, "/tasks/next", {{"annotator", "ann1"}, {"kind", "article_lean"}}).json();
  ASSERT_FALSE(next["task"].is_null());
  std::string task_id = next["task"]["task_id"];
  std::string article_id = next["task"]["item_id"];
  Json before = get(api, "/articles/" + article_id).json();
  int model_lean = before["labels"]["article_lean"]["lean"];
  int corrected = model_lean == 5 ? 4 : model_lean + 1;

  Json bad = post(api, "/tasks/" + task_id + "/response",
                  Json{{"annotator_id", "ann1"}, {"verdict", "Disagree"}}).json();
  EXPECT_EQ(bad["error"]["field"], "corrected_label");
  HttpResponse ok = post(api, "/tasks/" + task_id + "/response",
                         Json{{"annotator_id", "ann1"}, {"verdict", "Disagree"}, {"corrected_label", {{"lean", corrected}}}});
  ASSERT_EQ(ok.status, 200) << ok.body;
  EXPECT_EQ(ok.json()["overlays"].size(), 1u);
  EXPECT_EQ(post(api, "/tasks/" + task_id + "/response",
                 Json{{"annotator_id", "ann1"}, {"verdict", "Agree"}}).status, 409);

  Json after = get(api, "/articles/" + article_id).json();
  EXPECT_EQ(after["labels"], before["labels"]);
  EXPECT_EQ(after["label_versions"], before["label_versions"]);
  ASSERT_EQ(after["overlays"].size(), 1u);
  EXPECT_EQ(after["corrected_labels"]["article_lean"]["lean"], corrected);

  Json agreement = get(api, "/reports/agreement", {{"kind", "article_lean"}}).json();
  EXPECT_EQ(agreement["n"], 1);
  Json confusion = get(api, "/reports/confusion", {{"kind", "article_lean"}}).json();
  EXPECT_EQ(confusion["total"], 1);
  EXPECT_EQ(confusion["accuracy"], 0.0);
}

TEST(Service, StaticBundleAndUnknownPaths) {
  FixtureRun run = testing::open_fixture("fixtures/text_s1/config.json", "service_static");
  std::filesystem::path dir = testing::scratch_dir("service_static_ui");
  write_file_atomic(dir / "index.html", "<html>ui</html>");
  ServiceOptions with_ui;
  with_ui.static_dir = dir;
  ApiService api(*run.store, run.deps->hierarchy, with_ui);
  HttpResponse index = get(api, "/");
  EXPECT_EQ(index.status, 200);
  EXPECT_EQ(index.body, "<html>ui</html>");
  EXPECT_EQ(index.content_type, "text/html; charset=utf-8");
  EXPECT_EQ(get(api, "/../etc/passwd").status, 404);
}

}  // namespace
}  // namespace biaslens

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

#include <map>

#include "biaslens/core/schema.hpp"
#include "biaslens/ingest/url.hpp"
#include "biaslens/util/csv.hpp"
#include "biaslens/store/queries.hpp"
#include "fixture_runs.hpp"

namespace biaslens {
namespace {

using testing::fixture_day_date;
using testing::FixtureRun;
using testing::open_fixture;

// Returns unparseable text for the topic prompt of one article.
class CorruptTopic : public LlmProvider {
 public:
  CorruptTopic(LlmProvider& inner, std::string title) : inner_(inner), title_(std::move(title)) {}
  std::string complete(const LlmRequest& request) override {
    if (request.prompt == PromptName::kTopic && request.text.find(title_ + "\n\n") != std::string::npos) {
      return "I cannot decide.";
    }
    return inner_.complete(request);
  }

 private:
  LlmProvider& inner_;
  std::string title_;
};

TEST(FixtureDay, MatchesGoldenAndRerunIsIdempotent) {
  FixtureRun run = open_fixture("fixtures/fixture_day/config.json", "pipeline_golden");
  DayReport first = run_day(*run.store, *run.deps, fixture_day_date());
  ASSERT_TRUE(first.ok()) << to_document(first).dump();
  EXPECT_EQ(first.articles, 30u);
  EXPECT_EQ(first.labeled, 30u);
  EXPECT_EQ(first.events, 5u);
  EXPECT_EQ(first.facts, 5u);
  EXPECT_EQ(day_output_document(*run.store, run.deps->hierarchy, fixture_day_date()), testing::fixture_day_golden());

  std::string digest = run.store->state_digest();
  DayReport second = run_day(*run.store, *run.deps, fixture_day_date());
  ASSERT_TRUE(second.ok());
  EXPECT_EQ(run.store->state_digest(), digest);
  for (const StageReport& s : second.stages) {
    if (s.stage != StageName::kIngest) {
      EXPECT_EQ(s.counters.items_out, 0u) << to_string(s.stage);
    }
  }
}

TEST(FixtureDay, IngestRecordsEachFetchFailureKind) {
  FixtureRun run = open_fixture("fixtures/fixture_day/config.json", "pipeline_failures");
  RunDayOptions o;
  o.stages = {StageName::kIngest};
  DayReport r = run_day(*run.store, *run.deps, fixture_day_date(), o);
  ASSERT_TRUE(r.ok());
  std::map<std::string, int> by_kind;
  for (const StoredRecord& f : run.store->all_latest(kinds::kFetchFailure)) ++by_kind[f.body.at("kind")];
  EXPECT_EQ(by_kind["paywall"], 1);
  EXPECT_EQ(by_kind["non_article"], 1);
  EXPECT_GE(by_kind["broken_link"], 1);
  EXPECT_EQ(r.stages[0].counters.dead_lettered,
            static_cast<std::size_t>(by_kind["paywall"] + by_kind["non_article"] + by_kind["broken_link"]));
  // The tracking-parameter variant of a lead story dedupes into one article.
  EXPECT_EQ(day_article_ids(*run.store, fixture_day_date()).size(), 30u);
}

TEST(FixtureDay, StoppingAfterLabelThenRerunningMatchesUninterrupted) {
  FixtureRun whole = open_fixture("fixtures/fixture_day/config.json", "pipeline_whole");
  ASSERT_TRUE(run_day(*whole.store, *whole.deps, fixture_day_date()).ok());

  FixtureRun split = open_fixture("fixtures/fixture_day/config.json", "pipeline_split");
  RunDayOptions partial;
  partial.stages = {StageName::kIngest, StageName::kLabel};
  ASSERT_TRUE(run_day(*split.store, *split.deps, fixture_day_date(), partial).ok());
  EXPECT_NE(split.store->state_digest(), whole.store->state_digest());
  ASSERT_TRUE(run_day(*split.store, *split.deps, fixture_day_date()).ok());
  EXPECT_EQ(split.store->state_digest(), whole.store->state_digest());
}

TEST(FixtureDay, MissingFixtureFailsTheLabelStageAndStopsTheDay) {
  FixtureRun run = open_fixture("fixtures/fixture_day/config.json", "pipeline_missing");
  FixtureLlmProvider empty;
  run.deps->llm = &empty;
  DayReport r = run_day(*run.store, *run.deps, fixture_day_date());
  EXPECT_FALSE(r.ok());
  ASSERT_EQ(r.stages.size(), 2u);
  EXPECT_EQ(r.stages[0].status, RunStatus::kDone);
  EXPECT_EQ(r.stages[1].status, RunStatus::kFailed);
  EXPECT_NE(r.stages[1].error.find("fixture"), std::string::npos) << r.stages[1].error;
  std::vector<PipelineRun> runs = run.store->runs(fixture_day_date());
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[1].status, RunStatus::kFailed);
}

TEST(FixtureDay, DeadLetteredArticleIsRetriedLater) {
  FixtureRun run = open_fixture("fixtures/fixture_day/config.json", "pipeline_deadletter");
  const std::string title = "Pete Rose, baseball's hit king, dies at 83";
  CorruptTopic corrupt(*run.deps->llm, title);
  LlmProvider* good = run.deps->llm;
  run.deps->llm = &corrupt;
  RunDayOptions o;
  o.stages = {StageName::kIngest, StageName::kLabel};
  DayReport r = run_day(*run.store, *run.deps, fixture_day_date(), o);
  ASSERT_TRUE(r.ok()) << to_document(r).dump();
  EXPECT_EQ(r.labeled, 29u);
  EXPECT_EQ(r.stages[1].counters.dead_lettered, 1u);
  std::vector<StoredRecord> letters = run.store->all_latest(kinds::kDeadLetter);
  ASSERT_EQ(letters.size(), 1u);
  EXPECT_FALSE(letters[0].body.at("resolved").get<bool>());

  run.deps->llm = good;
  StageReport retry = retry_dead_letters(*run.store, *run.deps);
  EXPECT_EQ(retry.status, RunStatus::kDone);
  EXPECT_EQ(retry.counters.items_out, 1u);
  letters = run.store->all_latest(kinds::kDeadLetter);
  ASSERT_EQ(letters.size(), 1u);
  EXPECT_TRUE(letters[0].body.at("resolved").get<bool>());
  EXPECT_EQ(run.store->history(kinds::kDeadLetter, letters[0].id).size(), 2u);
  std::optional<LabelSet> labels = load_labels(*run.store, letters[0].body.at("item_id").get<std::string>(),
                                               run.deps->hierarchy);
  ASSERT_TRUE(labels);
  EXPECT_EQ(labels->topic, "Baseball");
}

TEST(FixtureDay, RelabelWithUnchangedAnswersWritesNothing) {
  FixtureRun run = open_fixture("fixtures/fixture_day/config.json", "pipeline_relabel");
  ASSERT_TRUE(run_day(*run.store, *run.deps, fixture_day_date()).ok());
  std::string digest = run.store->state_digest();
  run.deps->clock = fixed_clock(parse_timestamp("2025-01-01T00:00:00Z"));
  RunDayOptions o;
  o.relabel = true;
  o.stages = {StageName::kLabel, StageName::kCluster};
  ASSERT_TRUE(run_day(*run.store, *run.deps, fixture_day_date(), o).ok());
  EXPECT_EQ(run.store->state_digest(), digest);
}

TEST(FixtureDay, ClusterRerunWithNewThresholdReplacesTheDay) {
  FixtureRun run = open_fixture("fixtures/fixture_day/config.json", "pipeline_threshold");
  ASSERT_TRUE(run_day(*run.store, *run.deps, fixture_day_date()).ok());
  RunDayOptions o;
  o.stages = {StageName::kCluster};
  const double configured = run.deps->clustering.article_threshold;
  // Same-group articles sit near cosine 0.94, so nothing links at 0.99.
  run.deps->clustering.article_threshold = 0.99;
  ASSERT_TRUE(run_day(*run.store, *run.deps, fixture_day_date(), o).ok());
  std::optional<ClusterDayIndex> day = load_cluster_day(*run.store, fixture_day_date());
  ASSERT_TRUE(day);
  EXPECT_TRUE(day->event_ids.empty());
  EXPECT_EQ(day->unclustered.size(), 30u);
  EXPECT_TRUE(load_events(*run.store, fixture_day_date(), fixture_day_date()).empty());

  run.deps->clustering.article_threshold = configured;
  ASSERT_TRUE(run_day(*run.store, *run.deps, fixture_day_date(), o).ok());
  EXPECT_EQ(day_output_document(*run.store, run.deps->hierarchy, fixture_day_date()), testing::fixture_day_golden());
}

TEST(TextS1, ReplayReproducesEveryItemsLabels) {
  FixtureRun run = testing::text_s1_store("pipeline_text_s1");
  Json design = Json::parse(read_file(testing::source_path("fixtures/text_s1/design.json")));
  ASSERT_EQ(design.at("articles").size(), 10u);
  for (const Json& item : design.at("articles")) {
    std::string id = make_article_id(item.at("publisher_id").get<std::string>(),
                                     canonicalize_url(item.at("url").get<std::string>()));
    std::optional<LabelSet> l = load_labels(*run.store, id, run.deps->hierarchy);
    ASSERT_TRUE(l) << item.at("item");
    const Json& a = item.at("answers");
    EXPECT_EQ(l->category, a.at("category"));
    EXPECT_EQ(l->topic, a.at("topic"));
    EXPECT_EQ(l->subtopic, a.at("subtopic"));
    EXPECT_EQ(to_string(l->news_type), a.at("news_type").get<std::string>());
    EXPECT_EQ(l->lean.score.value(), a.at("lean").get<int>());
    EXPECT_EQ(l->tone.score.value(), a.at("tone").get<int>());
    EXPECT_EQ(l->headline_lean.score.value(), a.at("headline_lean").get<int>());
    EXPECT_EQ(l->headline_tone.score.value(), a.at("headline_tone").get<int>());
    EXPECT_EQ(l->takeaways, a.at("takeaways"));
  }
}

TEST(Queries, ExportRoundTripsCanonicalRecords) {
  FixtureRun run = testing::text_s1_store("queries_export");
  Corpus corpus = load_corpus(*run.store, run.deps->hierarchy);
  ASSERT_EQ(corpus.articles.size(), 10u);
  AggregateQuery all;
  std::string ndjson = export_records(*run.store, corpus, all, ExportFormat::kNdjson);
  EXPECT_EQ(ndjson_lines(ndjson).size(), 10u);
  std::string csv = export_records(*run.store, corpus, all, ExportFormat::kCsv);
  EXPECT_EQ(csv::parse(csv).size(), 11u);

  AggregateQuery usa;
  usa.publishers = {"usa_today"};
  EXPECT_EQ(ndjson_lines(export_records(*run.store, corpus, usa, ExportFormat::kNdjson)).size(), 3u);
  EXPECT_THROW(parse_export_format("xml"), InvalidArgument);
}

TEST(Queries, EventTableImportKeepsReportedCounts) {
  FixtureRun run = open_fixture("fixtures/text_s1/config.json", "queries_table");
  Json table = Json::parse(read_file(testing::source_path("fixtures/table_s1/events.json")));
  EXPECT_EQ(import_event_table(*run.store, table), 22u);
  std::string digest = run.store->state_digest();
  EXPECT_EQ(import_event_table(*run.store, table), 22u);
  EXPECT_EQ(run.store->state_digest(), digest);
  std::vector<EventCluster> events = load_events(*run.store, parse_date("2024-10-01"), parse_date("2024-10-01"));
  ASSERT_EQ(events.size(), 22u);
  EXPECT_EQ(events[0].article_count(), 75);
  EXPECT_EQ(events[0].theme, "Escalation of Conflict: Israel and Iran's Military Engagements in Lebanon");
  for (std::size_t i = 1; i < events.size(); ++i) EXPECT_GE(events[i - 1].article_count(), events[i].article_count());
  EXPECT_EQ(load_cluster_day(*run.store, parse_date("2024-10-01"))->reported_total, 791);
}

}  // namespace
}  // namespace biaslens

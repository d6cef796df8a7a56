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

#include <fmt/format.h>

#include <random>

#include "biaslens/analytics/aggregate.hpp"
#include "biaslens/analytics/reports.hpp"
#include "biaslens/util/files.hpp"
#include "test_support.hpp"

namespace biaslens {
namespace {

SentenceRecord with_focus(Focus f, int index = 1) {
  SentenceRecord r;
  r.article_id = "a";
  r.index = index;
  r.focus = f;
  return r;
}

TEST(ArticleFocus, Examples) {
  EXPECT_EQ(article_focus({with_focus(Focus::kRepublican), with_focus(Focus::kDemocrat), with_focus(Focus::kNeither),
                           with_focus(Focus::kBoth)}),
            0.0);
  EXPECT_EQ(article_focus({with_focus(Focus::kRepublican), with_focus(Focus::kRepublican)}), 1.0);
  // R, R, D, N, B, R, D -> (3 - 2) / 7
  std::vector<SentenceRecord> seven;
  for (Focus f : {Focus::kRepublican, Focus::kRepublican, Focus::kDemocrat, Focus::kNeither, Focus::kBoth,
                  Focus::kRepublican, Focus::kDemocrat}) {
    seven.push_back(with_focus(f));
  }
  EXPECT_NEAR(article_focus(seven), 1.0 / 7.0, 1e-12);
  EXPECT_THROW(article_focus({}), InvalidArgument);
}

AnalyzedArticle make(const std::string& id, const std::string& pub, const std::string& day, const std::string& topic,
                     int lean, int tone, int hlean, int htone) {
  AnalyzedArticle a;
  a.article.article_id = id;
  a.article.publisher_id = pub;
  a.article.first_seen_snapshot.date = parse_date(day);
  a.article.best_rank = 1;
  LabelSet l;
  l.article_id = id;
  l.topic = topic;
  l.category = testing::seed_hierarchy().category_of(topic);
  l.subtopic = topic == "Elections" ? "Presidential Horse Race" : "Other";
  l.lean.score = LikertScore(lean);
  l.tone.score = LikertScore(tone);
  l.headline_lean.score = LikertScore(hlean);
  l.headline_tone.score = LikertScore(htone);
  a.model_labels = l;
  return a;
}

AggregateQuery by(std::vector<GroupKey> keys, Measure m) {
  AggregateQuery q;
  q.group_by = std::move(keys);
  q.measure = m;
  return q;
}

TEST(Aggregate, MeanToneByPublisher) {
  Corpus c;
  c.articles = {make("1", "usa_today", "2024-10-01", "Elections", -1, -2, 0, 4),
                make("2", "usa_today", "2024-10-01", "Elections", 0, 1, 0, 1),
                make("3", "fox", "2024-10-01", "Immigration", 2, -3, 2, -3)};
  AggregateTable t = aggregate(by({GroupKey::kPublisher}, Measure::kMeanTone), c);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[1].key, std::vector<std::string>{"usa_today"});
  EXPECT_NEAR(t.rows[1].value, -0.5, 1e-12);
  EXPECT_EQ(t.rows[1].n, 2u);
}

TEST(Aggregate, EmptyRangeIsEmptyTableAndInvertedRangeIsError) {
  Corpus c;
  c.articles = {make("1", "p", "2024-10-01", "Elections", 0, 0, 0, 0)};
  AggregateQuery q = by({GroupKey::kTopic}, Measure::kCount);
  q.from = parse_date("2024-11-01");
  EXPECT_TRUE(aggregate(q, c).rows.empty());
  q.to = parse_date("2024-10-01");
  EXPECT_THROW(aggregate(q, c), InvalidArgument);
}

TEST(Aggregate, InvalidGroupBy) {
  Corpus c;
  EXPECT_THROW(aggregate(by({}, Measure::kCount), c), InvalidArgument);
  EXPECT_THROW(aggregate(by({GroupKey::kTopic, GroupKey::kTopic}, Measure::kCount), c), InvalidArgument);
  AggregateQuery q = by({GroupKey::kTopic}, Measure::kCount);
  q.weight_by_rank = true;
  EXPECT_THROW(aggregate(q, c), InvalidArgument);
  EXPECT_THROW(parse_group_key("color"), InvalidArgument);
  EXPECT_THROW(parse_measure("median_lean"), InvalidArgument);
}

TEST(Aggregate, RankWeighting) {
  Corpus c;
  c.articles = {make("1", "p", "2024-10-01", "Elections", 4, 0, 0, 0), make("2", "p", "2024-10-01", "Elections", -2, 0, 0, 0)};
  c.articles[1].article.best_rank = 2;
  AggregateQuery q = by({GroupKey::kPublisher}, Measure::kMeanLean);
  EXPECT_NEAR(aggregate(q, c).rows[0].value, 1.0, 1e-12);
  q.weight_by_rank = true;
  EXPECT_NEAR(aggregate(q, c).rows[0].value, (4.0 - 1.0) / 1.5, 1e-12);
}

TEST(Aggregate, OverlaysToggleWithoutTouchingModelLabels) {
  Corpus c;
  c.articles = {make("1", "p", "2024-10-01", "Foreign Policy", 0, -4, 0, -3)};
  LabelSet corrected = *c.articles[0].model_labels;
  corrected.topic = "War and International Conflict";
  corrected.category = "Politics";
  c.articles[0].corrected_labels = corrected;
  AggregateQuery q = by({GroupKey::kTopic}, Measure::kCount);
  EXPECT_EQ(aggregate(q, c).rows[0].key[0], "War and International Conflict");
  q.use_overlays = false;
  EXPECT_EQ(aggregate(q, c).rows[0].key[0], "Foreign Policy");
}

TEST(Aggregate, ReportedEventCountsAndThemes) {
  Corpus c;
  EventCluster big;
  big.event_id = "e1";
  big.day = parse_date("2024-10-01");
  big.theme = "Conflict";
  big.reported_count = 75;
  EventCluster member_based;
  member_based.event_id = "e2";
  member_based.day = big.day;
  member_based.theme = "Debate";
  member_based.member_article_ids = {"1"};
  c.events = {big, member_based};
  c.articles = {make("1", "p", "2024-10-01", "Elections", 0, 0, 0, 0)};
  c.articles[0].event_id = "e2";
  AggregateTable t = aggregate(by({GroupKey::kEvent}, Measure::kCount), c);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].value, 75);
  EXPECT_EQ(t.rows[0].label, "Conflict");
  EXPECT_EQ(t.rows[1].value, 1);
  AggregateQuery filtered = by({GroupKey::kEvent}, Measure::kCount);
  filtered.publishers = {"p"};
  EXPECT_EQ(aggregate(filtered, c).rows.size(), 1u);
}

// Brute force: recompute a cell from scratch for every produced key.
TEST(Aggregate, MatchesBruteForceAndCountsPartition) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> pubs{"a", "b", "c"};
  const std::vector<std::string> topics{"Elections", "Immigration", "Foreign Policy", "Economic Indicators"};
  std::uniform_int_distribution<int> score(-5, 5), day(1, 4), pick(0, 100);
  for (int trial = 0; trial < 100; ++trial) {
    Corpus c;
    int n = pick(rng) % 40;
    for (int i = 0; i < n; ++i) {
      AnalyzedArticle a =
          make(std::to_string(i), pubs[static_cast<std::size_t>(pick(rng)) % 3], fmt::format("2024-10-0{}", day(rng)),
               topics[static_cast<std::size_t>(pick(rng)) % 4], score(rng), score(rng), score(rng), score(rng));
      a.article.best_rank = 1 + pick(rng) % 20;
      if (pick(rng) < 10) a.model_labels.reset();
      for (int s = 0; s < pick(rng) % 5; ++s) a.sentences.push_back(with_focus(static_cast<Focus>(pick(rng) % 4), s + 1));
      c.articles.push_back(a);
    }
    AggregateQuery q;
    q.group_by = {GroupKey::kPublisher, GroupKey::kTopic};
    q.measure = static_cast<Measure>(pick(rng) % 6);
    q.weight_by_rank = q.measure != Measure::kCount && pick(rng) < 30;
    if (pick(rng) < 50) q.from = parse_date("2024-10-02");
    if (pick(rng) < 50) q.publishers = {"a", "c"};
    AggregateTable t = aggregate(q, c);
    std::size_t total = 0;
    for (const AggregateRow& row : t.rows) {
      double sum = 0, weight = 0;
      std::size_t count = 0;
      for (const AnalyzedArticle& a : c.articles) {
        if (!a.model_labels || a.article.publisher_id != row.key[0] || a.model_labels->topic != row.key[1]) continue;
        if (q.from && a.day() < *q.from) continue;
        if (!q.publishers.empty() && !q.publishers.count(a.article.publisher_id)) continue;
        double v = 1;
        const LabelSet& l = *a.model_labels;
        switch (q.measure) {
          case Measure::kCount:
            break;
          case Measure::kMeanLean:
            v = l.lean.score.value();
            break;
          case Measure::kMeanTone:
            v = l.tone.score.value();
            break;
          case Measure::kMeanHeadlineLean:
            v = l.headline_lean.score.value();
            break;
          case Measure::kMeanHeadlineTone:
            v = l.headline_tone.score.value();
            break;
          case Measure::kMeanFocus: {
            if (a.sentences.empty()) continue;
            double f = 0;
            for (const auto& s : a.sentences) f += s.focus == Focus::kRepublican ? 1 : s.focus == Focus::kDemocrat ? -1 : 0;
            v = f / static_cast<double>(a.sentences.size());
            break;
          }
        }
        double w = q.weight_by_rank ? 1.0 / a.article.best_rank : 1.0;
        sum += w * v;
        weight += w;
        ++count;
      }
      ASSERT_EQ(row.n, count);
      ASSERT_GT(count, 0u);
      EXPECT_NEAR(row.value, q.measure == Measure::kCount ? static_cast<double>(count) : sum / weight, 1e-12);
      if (q.measure != Measure::kCount) {
        EXPECT_LE(std::abs(row.value), q.measure == Measure::kMeanFocus ? 1.0 : 5.0);
      }
      total += row.n;
    }
    if (q.measure == Measure::kCount) {
      std::size_t ungrouped = 0;
      for (const auto& a : c.articles) ungrouped += matches(q, a);
      EXPECT_EQ(total, ungrouped);
      AggregateQuery coarse = q;
      coarse.group_by = {GroupKey::kCategory};
      std::size_t coarse_total = 0;
      for (const auto& row : aggregate(coarse, c).rows) coarse_total += row.n;
      EXPECT_EQ(coarse_total, ungrouped);
    }
  }
}

TEST(Aggregate, AddingArticleAtTheMeanKeepsTheMean) {
  Corpus c;
  c.articles = {make("1", "p", "2024-10-01", "Elections", 2, 0, 0, 0), make("2", "p", "2024-10-01", "Elections", -4, 0, 0, 0)};
  AggregateQuery q = by({GroupKey::kPublisher}, Measure::kMeanLean);
  double before = aggregate(q, c).rows[0].value;
  c.articles.push_back(make("3", "p", "2024-10-01", "Elections", -1, 0, 0, 0));
  EXPECT_EQ(aggregate(q, c).rows[0].value, before);
}

TEST(Aggregate, QueryJsonRoundTrip) {
  Json doc = Json::parse(R"({"from": "2024-10-01", "to": "2024-10-07", "publishers": ["cnn"],
                             "group_by": ["publisher", "topic"], "measure": "mean_lean", "weight_by_rank": true})");
  AggregateQuery q = aggregate_query_from_json(doc);
  EXPECT_EQ(q.group_by.size(), 2u);
  EXPECT_EQ(to_document(aggregate_query_from_json(to_document(q))), to_document(q));
  EXPECT_THROW(aggregate_query_from_json(Json::parse(R"({"measure": "count"})")), SchemaError);
}

TEST(HeadlineDelta, TextS1ItemFourAndIdentityLine) {
  Corpus c;
  c.articles = {make("4", "usa_today", "2024-10-01", "Elections", -1, -2, 0, 4)};
  AnalyzedArticle unlabeled = make("x", "usa_today", "2024-10-01", "Elections", 0, 0, 0, 0);
  unlabeled.model_labels.reset();
  c.articles.push_back(unlabeled);
  HeadlineDeltaReport r = headline_delta(AggregateQuery{}, c);
  EXPECT_EQ(r.overall.lean_delta(), 1.0);
  EXPECT_EQ(r.overall.tone_delta(), 6.0);
  EXPECT_EQ(r.excluded, 1u);

  Corpus same;
  same.articles = {make("1", "p", "2024-10-01", "Elections", 3, -1, 3, -1),
                   make("2", "p", "2024-10-01", "Immigration", -2, 2, -2, 2)};
  for (const DeltaPoint& p : headline_delta(AggregateQuery{}, same).categories) {
    EXPECT_EQ(p.lean_delta(), 0.0);
    EXPECT_EQ(p.tone_delta(), 0.0);
  }
}

TEST(HeadlineDelta, CategoryMeans) {
  Corpus c;
  c.articles = {make("1", "p", "2024-10-01", "Elections", 1, 2, 3, 4), make("2", "p", "2024-10-01", "Immigration", -1, 0, 0, 1),
                make("3", "p", "2024-10-01", "Economic Indicators", 5, -5, 4, -4)};
  HeadlineDeltaReport r = headline_delta(AggregateQuery{}, c);
  ASSERT_EQ(r.categories.size(), 2u);
  EXPECT_EQ(r.categories[0].category, "Economy");
  EXPECT_EQ(r.categories[1].category, "Politics");
  EXPECT_EQ(r.categories[1].article_lean, 0.0);
  EXPECT_EQ(r.categories[1].headline_lean, 1.5);
  EXPECT_EQ(r.categories[1].headline_tone, 2.5);
  EXPECT_NEAR(r.overall.article_lean, 5.0 / 3.0, 1e-12);
}

TEST(Horserace, CountsAndConfigCheck) {
  Corpus c;
  for (int i = 0; i < 3; ++i) c.articles.push_back(make(std::to_string(i), "p", "2024-10-01", "Elections", 0, 0, 0, 0));
  c.articles.push_back(make("9", "p", "2024-10-01", "Immigration", 0, 0, 0, 0));
  c.articles.push_back(make("10", "q", "2024-10-01", "Economic Indicators", 0, 0, 0, 0));
  HorseraceConfig cfg;
  cfg.horserace_subtopics = {"Presidential Horse Race"};
  cfg.policy_topics = {"Immigration", "Economic Indicators"};
  auto rows = horserace_vs_policy(AggregateQuery{}, c, cfg, testing::seed_hierarchy());
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (HorseraceRow{"p", 3, 1}));
  EXPECT_EQ(rows[1], (HorseraceRow{"q", 0, 1}));
  cfg.policy_topics.insert("Astrology");
  EXPECT_THROW(horserace_vs_policy(AggregateQuery{}, c, cfg, testing::seed_hierarchy()), InvalidArgument);
}

TEST(Horserace, ShippedConfigIsValid) {
  HorseraceConfig cfg = HorseraceConfig::from_json(Json::parse(read_file(testing::source_path("data/analytics.json"))));
  EXPECT_NO_THROW(cfg.check(testing::seed_hierarchy()));
  for (const auto& s : cfg.horserace_subtopics) {
    EXPECT_EQ(cfg.policy_topics.count(s), 0u);
  }
}

TEST(Render, TableCsvAndSvg) {
  Corpus c;
  c.articles = {make("1", "usa_today", "2024-10-01", "Elections", -1, -2, 0, 4),
                make("2", "usa_today", "2024-10-01", "Elections", 0, 1, 0, 1)};
  AggregateTable t = aggregate(by({GroupKey::kPublisher}, Measure::kMeanTone), c);
  EXPECT_EQ(format_table(t), "publisher  mean_tone  n\n---------  ---------  -\nusa_today  -0.5000    2\n");
  EXPECT_EQ(to_csv(t), "publisher,label,mean_tone,n\nusa_today,,-0.5,2\n");
  std::string svg = render_bar_svg(t, "Tone <by> publisher");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("Tone &lt;by&gt; publisher"), std::string::npos);
  EXPECT_NE(render_delta_svg(headline_delta(AggregateQuery{}, c), true).find("<circle"), std::string::npos);
}

}  // namespace
}  // namespace biaslens

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

#include <algorithm>
#include <map>
#include <random>

#include <fmt/format.h>

#include "biaslens/ingest/cleaning.hpp"
#include "biaslens/ingest/dedupe.hpp"
#include "biaslens/ingest/fetch.hpp"
#include "biaslens/ingest/html.hpp"
#include "biaslens/ingest/prominence.hpp"
#include "biaslens/ingest/schedule.hpp"
#include "biaslens/ingest/snapshot_source.hpp"
#include "biaslens/ingest/url.hpp"
#include "biaslens/util/files.hpp"
#include "test_support.hpp"

namespace biaslens {
namespace {

SnapshotItem item(std::string url, double y, double font, double image) {
  return {std::move(url), "t", y, font, image, 0};
}

SnapshotRef ref_at(const std::string& ts, const std::string& pub = "ap") {
  return {pub, parse_timestamp(ts), parse_date("2024-10-01")};
}

TEST(Url, CanonicalizationStripsTrackingAndFragment) {
  EXPECT_EQ(canonicalize_url("HTTPS://Www.Example.com:443/a/b?utm_source=x&id=3&fbclid=y#top"),
            "https://www.example.com/a/b?id=3");
  EXPECT_EQ(canonicalize_url("http://example.com"), "http://example.com/");
  EXPECT_THROW(canonicalize_url("ftp://example.com/x"), InvalidArgument);
  EXPECT_EQ(make_article_id("ap", "https://a/x"), make_article_id("ap", "https://a/x"));
  EXPECT_NE(make_article_id("ap", "https://a/x"), make_article_id("fox", "https://a/x"));
  EXPECT_EQ(resolve_url("https://a.com/news/x.html", "/y"), "https://a.com/y");
  EXPECT_EQ(resolve_url("https://a.com/news/x.html", "z.html"), "https://a.com/news/z.html");
}

TEST(Prominence, HigherOnPageScoresHigher) {
  std::vector<SnapshotItem> snap = {item("a", 0, 20, 0), item("b", 2000, 20, 0)};
  ProminenceScorer s(snap, {});
  EXPECT_GT(s.score(snap[0]), s.score(snap[1]));
}

TEST(Prominence, ImageNeverLowersScore) {
  std::vector<SnapshotItem> snap = {item("a", 100, 20, 5000), item("b", 100, 20, 0)};
  ProminenceScorer s(snap, {});
  EXPECT_GE(s.score(snap[0]), s.score(snap[1]));
}

TEST(Prominence, SingleItemNormalizesToOne) {
  std::vector<SnapshotItem> snap = {item("a", 500, 12, 0)};
  ProminenceScorer s(snap, {});
  EXPECT_DOUBLE_EQ(s.score(snap[0]), -0.6 + 0.25 + 0.15);
}

TEST(Prominence, FiveItemFixtureRanking) {
  // Independent oracle: hand-computed linear scores with default weights.
  // y: 0..800, font: 12..36, image: 0..60000.
  std::vector<SnapshotItem> raw = {item("https://n/e", 800, 12, 0), item("https://n/b", 200, 24, 30000),
                                   item("https://n/a", 0, 36, 60000), item("https://n/d", 600, 18, 0),
                                   item("https://n/c", 400, 24, 0)};
  // a: -0 + .25 + .15 = .40      b: -.15 + .125 + .075 = .05
  // c: -.3 + .125 = -.175        d: -.45 + .0625 = -.3875     e: -.6
  HomepageSnapshot snap = rank_snapshot(ref_at("2024-10-01T10:00:00Z"), raw, SnapshotSpec{});
  std::vector<std::string> order;
  for (const SnapshotItem& i : snap.items) order.push_back(i.url);
  EXPECT_EQ(order, (std::vector<std::string>{"https://n/a", "https://n/b", "https://n/c", "https://n/d", "https://n/e"}));
  ProminenceScorer s(raw, {});
  EXPECT_NEAR(s.score(raw[1]), 0.05, 1e-12);
  EXPECT_NEAR(s.score(raw[3]), -0.3875, 1e-12);
}

TEST(Prominence, RejectsInvalidGeometry) {
  EXPECT_THROW(check_snapshot_item(item("a", -1, 12, 0)), InvalidArgument);
  EXPECT_THROW(check_snapshot_item(item("a", 0, 0, 0)), InvalidArgument);
  EXPECT_THROW(check_snapshot_item(item("a", 0, 12, -3)), InvalidArgument);
}

TEST(RankSnapshot, KeepsTopThirtyOfForty) {
  std::vector<SnapshotItem> raw;
  for (int i = 0; i < 40; ++i) raw.push_back(item("https://n/" + std::to_string(i), i * 50.0, 20, 0));
  HomepageSnapshot snap = rank_snapshot(ref_at("2024-10-01T10:00:00Z"), raw, SnapshotSpec{});
  ASSERT_EQ(snap.items.size(), 30u);
  EXPECT_EQ(snap.items.front().rank, 1);
  EXPECT_EQ(snap.items.back().rank, 30);
}

TEST(RankSnapshot, TiesShareRankAndOrderByOffsetThenUrl) {
  std::vector<SnapshotItem> raw = {item("https://n/z", 10, 20, 0), item("https://n/b", 10, 20, 0),
                                   item("https://n/a", 10, 20, 0)};
  HomepageSnapshot snap = rank_snapshot(ref_at("2024-10-01T10:00:00Z"), raw, SnapshotSpec{});
  ASSERT_EQ(snap.items.size(), 3u);
  EXPECT_EQ(snap.items[0].url, "https://n/a");
  EXPECT_EQ(snap.items[2].url, "https://n/z");
  for (const SnapshotItem& i : snap.items) EXPECT_EQ(i.rank, 1);
}

TEST(RankSnapshot, ShuffledInputsGiveIdenticalOutput) {
  std::mt19937_64 rng(11);
  std::vector<SnapshotItem> raw;
  for (int i = 0; i < 25; ++i) {
    raw.push_back(item("https://n/" + std::to_string(i), static_cast<double>(rng() % 5) * 100,
                       12 + static_cast<double>(rng() % 3) * 6, static_cast<double>(rng() % 2) * 1000));
  }
  HomepageSnapshot expected = rank_snapshot(ref_at("2024-10-01T10:00:00Z"), raw, SnapshotSpec{});
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(raw.begin(), raw.end(), rng);
    EXPECT_EQ(rank_snapshot(ref_at("2024-10-01T10:00:00Z"), raw, SnapshotSpec{}).items, expected.items);
  }
}

TEST(Cleaning, RemovesListedPhrasesAndIsIdempotent) {
  CleaningDictionary dict = CleaningDictionary::parse("Click Here for More Information\nre:Listen \\d+ minutes?\n");
  std::string dirty = "Listen 5 minutes\n\nThe storm hit. Click Here for More Information\n\nIt moved north.";
  std::string clean = dict.clean(dirty);
  EXPECT_EQ(clean.find("Click Here"), std::string::npos);
  EXPECT_EQ(clean.find("Listen"), std::string::npos);
  EXPECT_EQ(clean, "The storm hit.\n\nIt moved north.");
  EXPECT_EQ(dict.clean(clean), clean);
  EXPECT_FALSE(dict.matches_any(clean));
}

TEST(Cleaning, FixpointHandlesNestedMatches) {
  CleaningDictionary dict = CleaningDictionary::parse("AB\n");
  EXPECT_EQ(dict.clean("xAABBy"), "xy");
}

TEST(Cleaning, RejectsBadPatternsAndEmptyPhrases) {
  EXPECT_THROW(CleaningDictionary::parse("re:(unclosed\n"), InvalidArgument);
  EXPECT_THROW(CleaningDictionary({{"", false}}, 1), InvalidArgument);
  EXPECT_TRUE(CleaningDictionary::parse("\n\n").phrases().empty());
}

TEST(Cleaning, RandomizedIdempotence) {
  CleaningDictionary dict = CleaningDictionary::parse("Advertisement\nre:Listen \\d+ minutes?\nSign up\n");
  std::vector<std::string> pieces = {"Advert", "isement", "Listen ", "5 minutes", "Sign", " up", "word", "\n", "  ", "\n\n", "."};
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    for (int k = 0; k < 20; ++k) s += pieces[rng() % pieces.size()];
    std::string once = dict.clean(s);
    EXPECT_EQ(dict.clean(once), once);
  }
}

TEST(Html, ExtractsArticleParagraphsAndSkipsChrome) {
  std::string html = R"(<!doctype html><html><head><title>Site | Storm</title>
<meta property="article:published_time" content="2024-10-01T09:30:00.000Z">
<script>var x = "<p>not text</p>";</script></head><body>
<nav><p>Home</p></nav><header><p>Subscribe</p></header>
<article><h1>Storm &amp; Flood</h1>
<p>First   paragraph<br>continues.</p>
<div class="ad-slot"><p>Buy now</p></div>
<p>Second &ldquo;quoted&rdquo; paragraph&#33;</p>
<aside><p>Related story</p></aside></article>
<footer><p>Copyright</p></footer></body></html>)";
  ExtractedPage page = extract_article(html);
  EXPECT_EQ(page.title, "Storm & Flood");
  EXPECT_EQ(page.body, "First paragraph continues.\n\nSecond “quoted” paragraph!");
  ASSERT_TRUE(page.published_at);
  EXPECT_EQ(format_timestamp(*page.published_at), "2024-10-01T09:30:00Z");
}

TEST(Html, DetectsPaywallAndVideoPages) {
  ExtractedPage pw = extract_article("<article><p>Teaser.</p><div class='paywall'><p>Subscribe</p></div></article>");
  EXPECT_TRUE(pw.paywall_marker);
  EXPECT_EQ(pw.body, "Teaser.");
  ExtractedPage vid = extract_article("<meta property='og:type' content='video.other'><p>Clip</p>");
  EXPECT_EQ(vid.og_type, "video.other");
}

class MapSource : public PageSource {
 public:
  std::map<std::string, FetchedPage> pages;
  FetchedPage get(const std::string& url) override {
    auto it = pages.find(url);
    if (it == pages.end()) return {404, {}};
    return it->second;
  }
};

TEST(FetchAndClean, ClassifiesFailures) {
  MapSource src;
  src.pages["https://n/pay"] = {200, "<article><p>Short.</p><div class='paywall'>x</div></article>"};
  src.pages["https://n/402"] = {402, ""};
  src.pages["https://n/vid"] = {200, "<meta property='og:type' content='video'><p>x</p>"};
  src.pages["https://n/ok"] = {200, "<h1>T</h1><p>Body. Click Here for More Information</p>"};
  CleaningDictionary dict = CleaningDictionary::parse("Click Here for More Information");
  auto kind_of = [&](const std::string& url) {
    try {
      fetch_and_clean(url, dict, src);
    } catch (const FetchError& e) {
      return std::string(to_string(e.kind()));
    }
    return std::string("ok");
  };
  EXPECT_EQ(kind_of("https://n/pay"), "paywall");
  EXPECT_EQ(kind_of("https://n/402"), "paywall");
  EXPECT_EQ(kind_of("https://n/vid"), "non_article");
  EXPECT_EQ(kind_of("https://n/video/clip"), "non_article");
  EXPECT_EQ(kind_of("https://n/missing"), "broken_link");
  EXPECT_EQ(fetch_and_clean("https://n/ok", dict, src).body, "Body.");
}

TEST(Dedupe, BestRankIsMinimumAndFirstSeenEarliest) {
  HomepageSnapshot s1{ref_at("2024-10-01T10:00:00Z"), {{"https://n/x", "X", 0, 12, 0, 3}}};
  HomepageSnapshot s2{ref_at("2024-10-01T14:00:00Z"), {{"https://n/x?utm_source=a", "X2", 0, 12, 0, 12},
                                                     {"https://n/y", "X", 0, 12, 0, 1}}};
  std::vector<HomepageSnapshot> snaps = {s2, s1};
  std::vector<ArticleCandidate> out = dedupe_and_merge(snaps);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[1].canonical_url, "https://n/x");
  EXPECT_EQ(out[1].best_rank, 3);
  EXPECT_EQ(out[1].first_seen, s1.ref);
  EXPECT_EQ(out[1].title, "X");
  EXPECT_EQ(out[1].appearances, 2);
}

TEST(Dedupe, RejectsMixedPublishers) {
  std::vector<HomepageSnapshot> snaps = {{ref_at("2024-10-01T10:00:00Z", "ap"), {}},
                                         {ref_at("2024-10-01T10:00:00Z", "fox"), {}}};
  EXPECT_THROW(dedupe_and_merge(snaps), InvalidArgument);
}

TEST(Dedupe, RandomizedBestRankIsMinimum) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<HomepageSnapshot> snaps;
    std::map<std::string, int> oracle;
    for (int s = 0; s < 5; ++s) {
      HomepageSnapshot snap{ref_at(fmt::format("2024-10-01T{:02d}:00:00Z", 10 + 3 * s)), {}};
      for (int r = 1; r <= 30; ++r) {
        std::string url = "https://n/" + std::to_string(rng() % 60);
        snap.items.push_back({url, "t", 0, 12, 0, r});
        auto [it, inserted] = oracle.try_emplace(url, r);
        if (!inserted) it->second = std::min(it->second, r);
      }
      snaps.push_back(std::move(snap));
    }
    std::vector<ArticleCandidate> merged = dedupe_and_merge(snaps);
    ASSERT_EQ(merged.size(), oracle.size());
    for (const ArticleCandidate& c : merged) EXPECT_EQ(c.best_rank, oracle.at(c.canonical_url));
  }
}

TEST(Schedule, EveryEnabledPublisherGetsEachSlotOnce) {
  std::vector<Publisher> pubs = {{"ap", "AP", "https://apnews.com", true},
                                 {"fox", "Fox", "https://foxnews.com", true},
                                 {"off", "Off", "https://off.com", false}};
  SnapshotSpec spec;
  for (const char* day : {"2024-10-01", "2024-03-10", "2024-11-03"}) {
    std::vector<SnapshotJob> jobs = plan_day(parse_date(day), pubs, spec);
    std::map<std::string, int> per;
    for (const SnapshotJob& j : jobs) ++per[j.publisher_id];
    EXPECT_EQ(per.size(), 2u);
    EXPECT_EQ(per["ap"], 5);
    EXPECT_EQ(per["fox"], 5);
  }
  SnapshotScheduler sched(PublisherRegistry(pubs), spec);
  Timestamp from = TimeZone::eastern().to_utc(parse_date("2024-10-01"), 0);
  std::vector<SnapshotJob> fired;
  for (Timestamp t = from; t < from + std::chrono::hours(24); t += std::chrono::minutes(7)) {
    for (SnapshotJob& j : sched.due_between(t, t + std::chrono::minutes(7))) fired.push_back(j);
  }
  EXPECT_EQ(fired.size(), 10u);
}

TEST(Schedule, PosixRuleOffsetsAreWestPositive) {
  TimeZone eastern = TimeZone::eastern();
  EXPECT_EQ(format_timestamp(eastern.to_utc(parse_date("2024-10-01"), 6 * 60)), "2024-10-01T10:00:00Z");
  EXPECT_EQ(format_timestamp(eastern.to_utc(parse_date("2024-12-02"), 6 * 60)), "2024-12-02T11:00:00Z");
  EXPECT_EQ(format_date(eastern.local_date(parse_timestamp("2024-10-02T03:30:00Z"))), "2024-10-01");
  TimeZone india("IST-5:30");
  EXPECT_EQ(format_timestamp(india.to_utc(parse_date("2024-10-01"), 6 * 60)), "2024-10-01T00:30:00Z");
  TimeZone fixed_dst("AAA3BBB1,M3.2.0,M11.1.0");
  EXPECT_EQ(format_timestamp(fixed_dst.to_utc(parse_date("2024-07-01"), 0)), "2024-07-01T01:00:00Z");
  EXPECT_THROW(TimeZone("E5"), InvalidArgument);
  EXPECT_THROW(TimeZone("EST"), InvalidArgument);
}

TEST(SnapshotSource, FixtureFormatRoundTrips) {
  std::vector<SnapshotItem> items = {{"https://n/a", "A", 10, 20, 0, 0}, {"https://n/b", "B", 40.5, 12, 900, 0}};
  EXPECT_EQ(parse_snapshot_items(format_snapshot_items(items)), items);
  std::filesystem::path dir = testing::scratch_dir("snapsrc");
  write_file_atomic(FixtureSnapshotSource::path_for(dir, "ap", parse_date("2024-10-01"), 600),
                    format_snapshot_items(items));
  FixtureSnapshotSource src(dir, SnapshotSpec{}.timezone_rule);
  Publisher ap{"ap", "AP", "https://apnews.com", true};
  SnapshotRef ref{"ap", TimeZone::eastern().to_utc(parse_date("2024-10-01"), 600), parse_date("2024-10-01")};
  EXPECT_EQ(src.capture(ap, ref), items);
  ref.captured_at += std::chrono::hours(4);
  EXPECT_THROW(src.capture(ap, ref), NotFound);
}

}  // namespace
}  // namespace biaslens

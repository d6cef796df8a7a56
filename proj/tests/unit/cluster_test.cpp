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

#include <fmt/format.h>
#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "biaslens/cluster/embedding.hpp"
#include "biaslens/cluster/events.hpp"
#include "biaslens/cluster/facts.hpp"
#include "biaslens/cluster/graph.hpp"
#include "biaslens/label/provider.hpp"
#include "biaslens/util/strings.hpp"
#include "scripted_provider.hpp"

namespace biaslens {
namespace {

using testing::ScriptedProvider;

const Timestamp kNow = parse_timestamp("2024-10-01T23:00:00Z");
const CivilDate kDay = parse_date("2024-10-01");

RunnerConfig quick_config() {
  RunnerConfig c;
  c.retry_backoff = std::chrono::milliseconds(0);
  return c;
}

TEST(Cosine, HandComputedCases) {
  EXPECT_NEAR(cosine_similarity({"a", {1, 1}}, {"b", {1, 0}}), 0.70710678118654752, 1e-9);
  EXPECT_NEAR(cosine_similarity({"a", {0.3, -2, 5}}, {"b", {0.3, -2, 5}}), 1.0, 1e-9);
  EXPECT_NEAR(cosine_similarity({"a", {1, 0}}, {"b", {0, 1}}), 0.0, 1e-9);
  EXPECT_NEAR(cosine_similarity({"a", {1, 2}}, {"b", {-1, -2}}), -1.0, 1e-9);
}

TEST(Cosine, RejectsMismatchAndZeroNorm) {
  EXPECT_THROW(cosine_similarity({"a", {1, 0}}, {"b", {1, 0, 0}}), InvalidArgument);
  EXPECT_THROW(cosine_similarity({"a", {0, 0}}, {"b", {1, 0}}), InvalidArgument);
  EXPECT_THROW(cosine_similarity({"a", {1, 0}}, {"b", {0, 0}}), InvalidArgument);
}

TEST(Cosine, SymmetricAndBounded) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> d;
  for (int t = 0; t < 200; ++t) {
    EmbeddingVector a{"a", {}}, b{"b", {}};
    for (int i = 0; i < 8; ++i) {
      a.values.push_back(d(rng));
      b.values.push_back(d(rng));
    }
    double ab = cosine_similarity(a, b);
    EXPECT_EQ(ab, cosine_similarity(b, a));
    EXPECT_GE(ab, -1.0);
    EXPECT_LE(ab, 1.0);
  }
}

SimilarityGraph graph_of(std::vector<std::string> nodes, std::vector<SimilarityEdge> edges) {
  return SimilarityGraph{std::move(nodes), std::move(edges)};
}

TEST(ThresholdComponents, TransitiveConnectivity) {
  auto g = graph_of({"A", "B", "C"}, {{0, 1, 0.9}, {1, 2, 0.85}, {0, 2, 0.3}});
  Partition p = threshold_components(g, 0.8);
  ASSERT_EQ(p.clusters.size(), 1u);
  EXPECT_EQ(p.clusters[0], (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_TRUE(p.singletons.empty());
}

TEST(ThresholdComponents, AllBelowThresholdAreSingletons) {
  auto g = graph_of({"c", "a", "b"}, {{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.5}});
  Partition p = threshold_components(g, 0.8);
  EXPECT_TRUE(p.clusters.empty());
  EXPECT_EQ(p.singletons, (std::vector<std::string>{"a", "b", "c"}));
}

TEST(ThresholdComponents, EdgeAtThresholdCounts) {
  auto g = graph_of({"a", "b"}, {{0, 1, 0.8}});
  EXPECT_EQ(threshold_components(g, 0.8).clusters.size(), 1u);
}

TEST(ThresholdComponents, MinSizeSendsSmallComponentsToPool) {
  auto g = graph_of({"a", "b", "c", "d", "e"}, {{0, 1, 0.9}, {1, 2, 0.9}, {3, 4, 0.95}});
  Partition p = threshold_components(g, 0.8, 3);
  ASSERT_EQ(p.clusters.size(), 1u);
  EXPECT_EQ(p.singletons, (std::vector<std::string>{"d", "e"}));
}

TEST(ThresholdComponents, RejectsInvalidGraphs) {
  EXPECT_THROW(threshold_components(graph_of({"a", "a"}, {}), 0.8), InvalidArgument);
  EXPECT_THROW(threshold_components(graph_of({"a", "b"}, {{0, 0, 0.9}}), 0.8), InvalidArgument);
  EXPECT_THROW(threshold_components(graph_of({"a", "b"}, {{0, 2, 0.9}}), 0.8), InvalidArgument);
  EXPECT_THROW(threshold_components(graph_of({"a", "b"}, {{0, 1, 1.5}}), 0.8), InvalidArgument);
}

// Independent oracle: adjacency matrix plus recursive DFS.
Partition dfs_oracle(const SimilarityGraph& g, double threshold, std::size_t min_size) {
  std::size_t n = g.nodes.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const SimilarityEdge& e : g.edges) {
    if (e.weight >= threshold) adj[e.a][e.b] = adj[e.b][e.a] = true;
  }
  std::vector<bool> seen(n, false);
  std::function<void(std::size_t, std::vector<std::string>&)> visit = [&](std::size_t u, auto& comp) {
    seen[u] = true;
    comp.push_back(g.nodes[u]);
    for (std::size_t v = 0; v < n; ++v) {
      if (adj[u][v] && !seen[v]) visit(v, comp);
    }
  };
  Partition p;
  for (std::size_t u = 0; u < n; ++u) {
    if (seen[u]) continue;
    std::vector<std::string> comp;
    visit(u, comp);
    std::sort(comp.begin(), comp.end());
    if (comp.size() >= min_size) {
      p.clusters.push_back(comp);
    } else {
      p.singletons.insert(p.singletons.end(), comp.begin(), comp.end());
    }
  }
  std::sort(p.clusters.begin(), p.clusters.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a.front() < b.front();
  });
  std::sort(p.singletons.begin(), p.singletons.end());
  return p;
}

SimilarityGraph random_graph(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(1, 12);
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  std::bernoulli_distribution present(0.7);
  SimilarityGraph g;
  int n = size(rng);
  for (int i = 0; i < n; ++i) g.nodes.push_back("n" + std::to_string(i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (present(rng)) g.edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), weight(rng)});
    }
  }
  return g;
}

TEST(ThresholdComponents, MatchesDfsOracleAndIgnoresInputOrder) {
  std::mt19937_64 rng(20241001);
  for (int t = 0; t < 300; ++t) {
    SimilarityGraph g = random_graph(rng);
    for (double threshold : {0.5, 0.8, 0.85}) {
      Partition expected = dfs_oracle(g, threshold, 2);
      ASSERT_EQ(threshold_components(g, threshold), expected);

      SimilarityGraph shuffled = g;
      std::vector<std::size_t> perm(g.nodes.size());
      for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t i = 0; i < perm.size(); ++i) shuffled.nodes[perm[i]] = g.nodes[i];
      for (SimilarityEdge& e : shuffled.edges) {
        e.a = perm[e.a];
        e.b = perm[e.b];
        if (rng() & 1) std::swap(e.a, e.b);
      }
      std::shuffle(shuffled.edges.begin(), shuffled.edges.end(), rng);
      ASSERT_EQ(threshold_components(shuffled, threshold), expected);
    }
  }
}

TEST(ThresholdComponents, RaisingThresholdOnlyRefines) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    SimilarityGraph g = random_graph(rng);
    Partition low = threshold_components(g, 0.5, 1);
    Partition high = threshold_components(g, 0.85, 1);
    for (const auto& fine : high.clusters) {
      int containing = 0;
      for (const auto& coarse : low.clusters) {
        if (std::includes(coarse.begin(), coarse.end(), fine.begin(), fine.end())) ++containing;
      }
      EXPECT_EQ(containing, 1);
    }
  }
}

TEST(ClusterConfig, ThresholdsMustBeInUnitInterval) {
  EXPECT_NO_THROW(ClusterConfig{}.check());
  EXPECT_THROW((ClusterConfig{1.0, 0.85, 2}.check()), InvalidArgument);
  EXPECT_THROW((ClusterConfig{0.8, 0.0, 2}.check()), InvalidArgument);
  EXPECT_THROW((ClusterConfig{0.8, 0.85, 0}.check()), InvalidArgument);
}

TEST(Embed, EmptyInputGivesEmptyOutput) {
  FixtureEmbeddingProvider p;
  EXPECT_TRUE(embed({}, p).vectors.empty());
}

TEST(Embed, IdenticalTextsHaveSimilarityOne) {
  HashingEmbeddingProvider p(64);
  EmbedResult r = embed({{"a", "Dockworkers strike at 36 ports"}, {"b", "Dockworkers strike at 36 ports"}}, p);
  EXPECT_NEAR(cosine_similarity(r.vectors[0], r.vectors[1]), 1.0, 1e-9);
}

TEST(Embed, FixtureVectorsReplayAndMissingIdFails) {
  FixtureEmbeddingProvider p = FixtureEmbeddingProvider::parse(
      "{\"id\":\"a\",\"values\":[1,0]}\n{\"id\":\"b\",\"values\":[0.5,0.5]}\n");
  EmbedResult r = embed({{"b", "x"}, {"a", "y"}}, p);
  EXPECT_EQ(r.vectors[0].values, (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(r.vectors[1].id, "a");
  EXPECT_THROW(embed({{"c", "z"}}, p), NotFound);
}

TEST(Embed, RejectsInconsistentDimensionsAndNonFinite) {
  FixtureEmbeddingProvider p;
  p.add("a", {1, 0});
  p.add("b", {1, 0, 0});
  p.add("c", {std::nan(""), 1});
  EXPECT_THROW(embed({{"a", ""}, {"b", ""}}, p), Error);
  EXPECT_THROW(embed({{"c", ""}}, p), Error);
}

class FlakyEmbedder : public EmbeddingProvider {
 public:
  int failures = 0;
  bool retryable = true;
  int calls = 0;
  std::size_t limit = 8191;
  std::vector<std::string> seen;
  std::vector<std::vector<double>> embed_batch(const std::vector<EmbeddingInput>& inputs) override {
    ++calls;
    if (failures > 0) {
      --failures;
      throw ProviderError("down", retryable);
    }
    std::vector<std::vector<double>> out;
    for (const auto& in : inputs) {
      seen.push_back(in.text);
      out.push_back({1.0, static_cast<double>(in.text.size())});
    }
    return out;
  }
  std::size_t max_input_tokens() const override { return limit; }
};

TEST(Embed, RetriesThenAborts) {
  EmbedOptions o;
  o.retry_backoff = std::chrono::milliseconds(0);
  FlakyEmbedder ok;
  ok.failures = 2;
  EXPECT_EQ(embed({{"a", "x"}}, ok, o).vectors.size(), 1u);
  FlakyEmbedder down;
  down.failures = 5;
  EXPECT_THROW(embed({{"a", "x"}}, down, o), ProviderError);
  EXPECT_EQ(down.calls, 3);
  FlakyEmbedder fatal;
  fatal.failures = 1;
  fatal.retryable = false;
  EXPECT_THROW(embed({{"a", "x"}}, fatal, o), ProviderError);
  EXPECT_EQ(fatal.calls, 1);
}

TEST(Embed, TruncatesLongTextAtSentenceBoundary) {
  FlakyEmbedder p;
  p.limit = 5;  // about 20 characters
  EmbedResult r = embed({{"a", "First short one. Second sentence is long."}, {"b", "Tiny."}}, p);
  EXPECT_EQ(r.truncated_ids, std::vector<std::string>{"a"});
  EXPECT_EQ(p.seen[0], "First short one.");
}

TEST(Embed, BatchesPreserveOrder) {
  FlakyEmbedder p;
  EmbedOptions o;
  o.batch_size = 2;
  std::vector<EmbeddingInput> in;
  for (int i = 0; i < 5; ++i) in.push_back({"id" + std::to_string(i), std::string(static_cast<std::size_t>(i + 1), 'x')});
  EmbedResult r = embed(in, p, o);
  EXPECT_EQ(p.calls, 3);
  for (int i = 0; i < 5; ++i) EXPECT_EQ(r.vectors[static_cast<std::size_t>(i)].values[1], i + 1);
}

ClusterArticleIndex index_of(std::initializer_list<std::pair<const char*, const char*>> items) {
  ClusterArticleIndex out;
  for (const auto& [id, title] : items) out[id] = {id, title, std::string("Summary of ") + title};
  return out;
}

TEST(TitleEvents, ThemesAndShortFormLimit) {
  ScriptedProvider p;
  p.script(PromptName::kEventTitle,
           {R"({"theme": "East Coast Port Strike Halts Shipping", "theme_short": "Port Strike"})",
            R"({"theme": "Vice Presidential Debate", "theme_short": "A very long short title here"})"});
  PromptRunner runner(p, quick_config(), fixed_clock(kNow));
  EventRefiner refiner(runner, 2);
  auto idx = index_of({{"a", "Port workers walk out"}, {"b", "Dockworkers strike"}, {"c", "Vance vs Walz"},
                       {"d", "Debate night"}});
  auto drafts = refiner.title_events({{"b", "a"}, {"c", "d"}}, idx);
  ASSERT_EQ(drafts.size(), 2u);
  EXPECT_EQ(drafts[0].members, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(drafts[0].theme_short, "Port Strike");
  EXPECT_FALSE(drafts[0].theme_short_truncated);
  EXPECT_EQ(drafts[1].theme_short, "A very long short title");
  EXPECT_TRUE(drafts[1].theme_short_truncated);
  EXPECT_NE(p.calls[0].text.find("1. Port workers walk out\n2. Dockworkers strike"), std::string::npos);
}

TEST(TitleEvents, SingleMemberCluster) {
  ScriptedProvider p;
  p.script(PromptName::kEventTitle, {R"({"theme": "Pete Rose Dies", "theme_short": "Pete Rose Dies"})"});
  PromptRunner runner(p, quick_config(), fixed_clock(kNow));
  EventRefiner refiner(runner, 1);
  auto drafts = refiner.title_events({{"a"}}, index_of({{"a", "Pete Rose dies at 83"}}));
  EXPECT_NE(p.calls[0].text.find("1. Pete Rose dies at 83\n"), std::string::npos);
  EXPECT_EQ(drafts[0].theme, "Pete Rose Dies");
}

TEST(TitleEvents, UnrepairableResponseDeadLetters) {
  ScriptedProvider p;
  p.script(PromptName::kEventTitle, {R"({"theme": ""})"});
  PromptRunner runner(p, quick_config(), fixed_clock(kNow));
  EventRefiner refiner(runner, 2);
  EXPECT_THROW(refiner.title_events({{"a", "b"}}, index_of({{"a", "x"}, {"b", "y"}})), DeadLetterError);
  EXPECT_EQ(p.calls.size(), 2u);
}

std::vector<DraftEvent> two_events() {
  DraftEvent port;
  port.members = port.initial = {"a", "b"};
  port.theme = "East Coast Port Strike";
  DraftEvent debate;
  debate.members = debate.initial = {"c", "d", "e"};
  debate.theme = "Vice Presidential Debate";
  return {port, debate};
}

TEST(RecallPass, AssignsSkipsAndWarns) {
  ScriptedProvider p;
  // Singletons are asked in id order: f, g, h, i.
  p.script(PromptName::kClusterRecall, {"2", "-1", "apple", "7"});
  PromptRunner runner(p, quick_config(), fixed_clock(kNow));
  EventRefiner refiner(runner, 2);
  auto idx = index_of({{"a", "A"}, {"b", "B"}, {"c", "C"}, {"d", "D"}, {"e", "E"}, {"f", "F"}, {"g", "G"},
                       {"h", "H"}, {"i", "I"}});
  auto events = two_events();
  std::vector<std::string> singletons{"i", "g", "h", "f"};
  std::vector<std::string> warnings;
  refiner.recall_pass(events, singletons, idx, warnings);
  EXPECT_EQ(events[0].members, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(events[1].members, (std::vector<std::string>{"c", "d", "e", "f"}));
  EXPECT_EQ(events[1].added, std::vector<std::string>{"f"});
  EXPECT_EQ(singletons, (std::vector<std::string>{"g", "h", "i"}));
  EXPECT_EQ(warnings.size(), 2u);
  EXPECT_NE(p.calls[0].text.find("Themes:\n1. East Coast Port Strike\n2. Vice Presidential Debate"),
            std::string::npos);
  EXPECT_NE(p.calls[0].text.find("Summary: Summary of F"), std::string::npos);
}

TEST(RecallPass, NoEventsMeansNoCalls) {
  ScriptedProvider p;
  PromptRunner runner(p, quick_config(), fixed_clock(kNow));
  EventRefiner refiner(runner, 2);
  std::vector<DraftEvent> events;
  std::vector<std::string> singletons{"a"};
  std::vector<std::string> warnings;
  refiner.recall_pass(events, singletons, index_of({{"a", "A"}}), warnings);
  EXPECT_TRUE(p.calls.empty());
  EXPECT_EQ(singletons.size(), 1u);
}

TEST(PrecisionPass, RemovesFlaggedAndDissolvesSmallEvents) {
  ScriptedProvider p;
  p.script(PromptName::kClusterPrecision, {"2", "-1"});
  PromptRunner runner(p, quick_config(), fixed_clock(kNow));
  EventRefiner refiner(runner, 2);
  auto idx = index_of({{"a", "A"}, {"b", "B"}, {"c", "C"}, {"d", "D"}, {"e", "E"}});
  auto events = two_events();
  std::vector<std::string> singletons;
  std::vector<std::string> warnings;
  refiner.precision_pass(events, singletons, idx, warnings);
  EXPECT_TRUE(events[0].dissolved);
  EXPECT_TRUE(events[0].members.empty());
  EXPECT_EQ(events[0].removed, (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(events[1].members, (std::vector<std::string>{"c", "d", "e"}));
  EXPECT_EQ(singletons, (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(warnings.empty());
}

TEST(PrecisionPass, CommaListAndOutOfRange) {
  ScriptedProvider p;
  p.script(PromptName::kClusterPrecision, {"2,5", "1, 9"});
  PromptRunner runner(p, quick_config(), fixed_clock(kNow));
  EventRefiner refiner(runner, 2);
  DraftEvent big;
  big.members = big.initial = {"a", "b", "c", "d", "e", "f"};
  big.theme = "Big";
  DraftEvent other;
  other.members = other.initial = {"g", "h", "i"};
  other.theme = "Other";
  std::vector<DraftEvent> events{big, other};
  auto idx = index_of({{"a", "A"}, {"b", "B"}, {"c", "C"}, {"d", "D"}, {"e", "E"}, {"f", "F"}, {"g", "G"},
                       {"h", "H"}, {"i", "I"}});
  std::vector<std::string> singletons{"z"};
  std::vector<std::string> warnings;
  refiner.precision_pass(events, singletons, idx, warnings);
  EXPECT_EQ(events[0].members, (std::vector<std::string>{"a", "c", "d", "f"}));
  EXPECT_EQ(events[1].members, (std::vector<std::string>{"h", "i"}));
  EXPECT_EQ(singletons, (std::vector<std::string>{"b", "e", "g", "z"}));
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(PrecisionPass, UnparseableResponseLeavesEventUnchanged) {
  ScriptedProvider p;
  p.script(PromptName::kClusterPrecision, {"none of them"});
  PromptRunner runner(p, quick_config(), fixed_clock(kNow));
  EventRefiner refiner(runner, 2);
  auto events = two_events();
  std::vector<std::string> singletons, warnings;
  refiner.precision_pass(events, singletons, index_of({{"a", "A"}, {"b", "B"}, {"c", "C"}, {"d", "D"}, {"e", "E"}}),
                         warnings);
  EXPECT_EQ(events[0].members.size(), 2u);
  EXPECT_EQ(warnings.size(), 2u);
}

SentenceRecord fact(const std::string& article, int index, const std::string& text,
                    SentenceType type = SentenceType::kFact) {
  SentenceRecord r;
  r.article_id = article;
  r.index = index;
  r.text = text;
  r.type = type;
  return r;
}

TEST(ClusterFacts, OnlyFactsOfMembersAndSizeOrdering) {
  FixtureEmbeddingProvider e;
  e.add("a#1", {1, 0, 0});
  e.add("b#2", {0.99, 0.05, 0});
  e.add("c#1", {0.98, 0.0, 0.1});
  e.add("a#2", {0, 1, 0});
  e.add("b#1", {0, 0.99, 0.02});
  e.add("c#2", {0, 0, 1});
  ScriptedProvider p;
  p.script(PromptName::kFactSummary, {R"({"synthetic_sentence": "At least 150 people died."})",
                                      R"({"synthetic_sentence": "Ports closed."})"});
  PromptRunner runner(p, quick_config(), fixed_clock(kNow));
  EventCluster event;
  event.event_id = "ev";
  event.member_article_ids = {"a", "b", "c"};
  std::vector<SentenceRecord> sentences{fact("a", 1, "Deaths one."),   fact("b", 2, "Deaths two."),
                                        fact("c", 1, "Deaths three."), fact("a", 2, "Ports one."),
                                        fact("b", 1, "Ports two."),    fact("c", 2, "Lone fact."),
                                        fact("c", 3, "Opinion.", SentenceType::kOpinion),
                                        fact("x", 1, "Other event.")};
  auto facts = cluster_facts(event, sentences, e, runner, ClusterConfig{});
  ASSERT_EQ(facts.size(), 2u);
  EXPECT_EQ(facts[0].member_sentences.size(), 3u);
  EXPECT_EQ(facts[0].synthetic_sentence, "At least 150 people died.");
  EXPECT_EQ(facts[1].member_sentences, (std::set<SentenceKey>{{"a", 2}, {"b", 1}}));
  EXPECT_NE(p.calls[0].text.find("1. Deaths one.\n2. Deaths two.\n3. Deaths three."), std::string::npos);
  for (const auto& f : facts) EXPECT_EQ(f.event_id, "ev");
}

TEST(ClusterFacts, NoFactsMeansNoClustersAndSummaryCapped) {
  FixtureEmbeddingProvider e;
  ScriptedProvider p;
  PromptRunner runner(p, quick_config(), fixed_clock(kNow));
  EventCluster event;
  event.event_id = "ev";
  event.member_article_ids = {"a"};
  EXPECT_TRUE(cluster_facts(event, {fact("a", 1, "x", SentenceType::kQuote)}, e, runner, {}).empty());

  e.add("a#1", {1, 0});
  e.add("a#2", {1, 0.01});
  std::string long_summary;
  for (int i = 0; i < 30; ++i) long_summary += "w" + std::to_string(i) + " ";
  p.script(PromptName::kFactSummary, {"{\"synthetic_sentence\": \"" + long_summary + "\"}"});
  auto facts = cluster_facts(event, {fact("a", 1, "x"), fact("a", 2, "y")}, e, runner, {});
  ASSERT_EQ(facts.size(), 1u);
  EXPECT_TRUE(facts[0].truncated);
  EXPECT_EQ(text::word_count(facts[0].synthetic_sentence), kSyntheticSentenceMaxWords);
}

DayArticle day_article(const std::string& id, const std::string& title) {
  DayArticle a;
  a.article.article_id = id;
  a.article.title = title;
  a.article.body = "Body of " + title + ".";
  return a;
}

struct RandomDay {
  std::vector<DayArticle> articles;
  FixtureEmbeddingProvider embedder;
  ScriptedProvider provider;
};

// Articles sit near one of three axes or on their own; responses are random.
void build_random_day(RandomDay& day, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> group(0, 5);
  std::uniform_real_distribution<double> jitter(0.0, 0.1);
  int n = 6 + static_cast<int>(rng() % 10);
  for (int i = 0; i < n; ++i) {
    std::string id = fmt::format("art{:02d}", i);
    day.articles.push_back(day_article(id, "Title " + id));
    std::vector<double> v(8, 0.0);
    int g = group(rng);
    v[static_cast<std::size_t>(g < 3 ? g : 3 + i % 5)] = 1.0;
    for (double& x : v) x += jitter(rng);
    day.embedder.add(id, v);
  }
  std::vector<std::string> recall, precision, titles;
  for (int i = 0; i < 40; ++i) {
    int r = static_cast<int>(rng() % 6) - 1;
    recall.push_back(r == 4 ? "banana" : std::to_string(r == 0 ? -1 : r));
    int k = static_cast<int>(rng() % 4);
    precision.push_back(k == 0 ? "-1" : (k == 1 ? "1" : (k == 2 ? "2,3" : "9")));
  }
  day.provider.script(PromptName::kClusterRecall, recall);
  day.provider.script(PromptName::kClusterPrecision, precision);
  day.provider.script(PromptName::kEventTitle, {R"({"theme": "Theme", "theme_short": "Short"})"});
}

std::set<std::string> as_set(const std::vector<std::string>& v) { return {v.begin(), v.end()}; }

TEST(ClusterDay, RefinementAlgebraAndDeterministicReplay) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    std::vector<std::vector<EventCluster>> replays;
    for (int run = 0; run < 3; ++run) {
      RandomDay day;
      build_random_day(day, seed);
      PromptRunner runner(day.provider, quick_config(), fixed_clock(kNow));
      DayClustering result = cluster_day(kDay, day.articles, day.embedder, runner);
      std::set<std::string> assigned;
      for (const DraftEvent& d : result.trace) {
        std::set<std::string> expected = as_set(d.initial);
        for (const auto& id : d.added) expected.insert(id);
        for (const auto& id : d.removed) expected.erase(id);
        EXPECT_EQ(as_set(d.members), expected) << "seed " << seed;
        for (const auto& id : d.members) EXPECT_TRUE(assigned.insert(id).second) << "seed " << seed;
      }
      for (const auto& id : result.unclustered) EXPECT_FALSE(assigned.count(id));
      EXPECT_EQ(assigned.size() + result.unclustered.size(), day.articles.size());
      replays.push_back(result.events);
    }
    EXPECT_EQ(replays[0], replays[1]);
    EXPECT_EQ(replays[1], replays[2]);
  }
}

TEST(ClusterDay, EndToEndSmallDay) {
  RandomDay day;
  for (const char* id : {"a", "b", "c", "d"}) day.articles.push_back(day_article(id, std::string("T") + id));
  day.articles[0].labels = LabelSet{};
  day.articles[0].labels->takeaways = "Takeaway A";
  day.articles[0].sentences = {fact("a", 1, "Fact one."), fact("a", 2, "Other.")};
  day.articles[1].sentences = {fact("b", 1, "Fact one again.")};
  day.embedder.add("a", {1, 0, 0});
  day.embedder.add("b", {0.95, 0.1, 0});
  day.embedder.add("c", {0, 1, 0});
  day.embedder.add("d", {0.6, 0.6, 0});
  day.embedder.add("a#1", {0, 1});
  day.embedder.add("b#1", {0.01, 1});
  day.embedder.add("a#2", {1, 0});
  day.provider.script(PromptName::kEventTitle, {R"({"theme": "Port Strike", "theme_short": "Port Strike"})"});
  day.provider.script(PromptName::kClusterRecall, {"-1", "1"});  // c stays out, d joins
  day.provider.script(PromptName::kClusterPrecision, {"-1"});
  day.provider.script(PromptName::kFactSummary, {R"({"synthetic_sentence": "Fact one."})"});
  PromptRunner runner(day.provider, quick_config(), fixed_clock(kNow));
  DayClustering r = cluster_day(kDay, day.articles, day.embedder, runner);
  ASSERT_EQ(r.events.size(), 1u);
  EXPECT_EQ(r.events[0].member_article_ids, (std::set<std::string>{"a", "b", "d"}));
  EXPECT_EQ(r.events[0].event_id, make_event_id(kDay, {"a", "b", "d"}));
  EXPECT_EQ(r.unclustered, std::vector<std::string>{"c"});
  ASSERT_EQ(r.facts.size(), 1u);
  EXPECT_EQ(r.facts[0].event_id, r.events[0].event_id);
  // Unlabeled articles contribute their lead sentences as the recall summary.
  EXPECT_NE(day.provider.calls[1].text.find("Summary: Body of Tc."), std::string::npos);
}

TEST(ClusterDay, MissingEmbeddingAbortsTheDay) {
  RandomDay day;
  day.articles = {day_article("a", "A"), day_article("b", "B")};
  day.embedder.add("a", {1, 0});
  PromptRunner runner(day.provider, quick_config(), fixed_clock(kNow));
  EXPECT_THROW(cluster_day(kDay, day.articles, day.embedder, runner), NotFound);
}

}  // namespace
}  // namespace biaslens

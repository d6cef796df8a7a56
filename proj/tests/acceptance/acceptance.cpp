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

// Acceptance checks 1-11. Prints one PASS/FAIL line per criterion and exits
// non-zero when any fails. Oracles here are written independently of the
// library code they check.

#include <fmt/format.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <set>

#include "biaslens/analytics/aggregate.hpp"
#include "biaslens/cluster/embedding.hpp"
#include "biaslens/cluster/events.hpp"
#include "biaslens/cluster/graph.hpp"
#include "biaslens/ingest/cleaning.hpp"
#include "biaslens/ingest/dedupe.hpp"
#include "biaslens/ingest/prominence.hpp"
#include "biaslens/ingest/url.hpp"
#include "biaslens/label/prompts.hpp"
#include "biaslens/store/service.hpp"
#include "biaslens/validation/metrics.hpp"
#include "fixture_runs.hpp"
#include "scripted_provider.hpp"

namespace biaslens {
namespace {

using testing::FixtureRun;

constexpr double kCosineTolerance = 1e-9;
constexpr double kMeanToneTolerance = 1e-12;
constexpr double kPrfTolerance = 1e-9;
constexpr double kF1Reported = 0.8182;
constexpr double kReportedRounding = 5e-5;  // four printed decimals
constexpr double kAgreementTolerance = 1e-4;
constexpr double kOracleSeconds = 5.0;
constexpr double kFixtureDaySeconds = 60.0;

// First failed expectation wins; later ones are ignored.
struct Check {
  bool ok = true;
  std::string detail;
  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// 1 -------------------------------------------------------------------------

// Union-find free oracle: repeated relaxation of component labels.
std::vector<std::vector<std::string>> brute_components(const SimilarityGraph& g, double threshold) {
  std::size_t n = g.nodes.size();
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const SimilarityEdge& e : g.edges) {
      if (e.weight < threshold) continue;
      std::size_t m = std::min(label[e.a], label[e.b]);
      if (label[e.a] != m || label[e.b] != m) {
        label[e.a] = label[e.b] = m;
        changed = true;
      }
    }
  }
  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t i = 0; i < n; ++i) groups[label[i]].push_back(g.nodes[i]);
  std::vector<std::vector<std::string>> out;
  for (auto& [l, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back(members);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Check criterion_threshold_oracle() {
  Check c;
  auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(501);
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  int graphs = 0;
  for (; graphs < 600; ++graphs) {
    SimilarityGraph g;
    std::size_t n = 1 + rng() % 12;
    for (std::size_t i = 0; i < n; ++i) g.nodes.push_back(fmt::format("v{:02d}", i));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) g.edges.push_back({i, j, weight(rng)});
    }
    for (double t : {0.5, 0.8, 0.85}) {
      Partition p = threshold_components(g, t, 1);
      std::vector<std::vector<std::string>> got = p.clusters;
      for (const std::string& s : p.singletons) got.push_back({s});
      std::sort(got.begin(), got.end());
      c.expect(got == brute_components(g, t), fmt::format("graph {} threshold {}", graphs, t));
    }
  }
  double secs = seconds_since(start);
  c.expect(secs < kOracleSeconds, fmt::format("took {:.2f}s", secs));
  if (c.ok) c.detail = fmt::format("{} graphs x 3 thresholds in {:.3f}s", graphs, secs);
  return c;
}

// 2 -------------------------------------------------------------------------

Check criterion_refinement_algebra() {
  Check c;
  const CivilDate day = parse_date("2024-10-01");
  RunnerConfig quick;
  quick.retry_backoff = std::chrono::milliseconds(0);
  int seeds = 0;
  std::size_t additions = 0, removals = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed, ++seeds) {
    std::vector<std::vector<EventCluster>> replays;
    for (int run = 0; run < 3; ++run) {
      std::mt19937_64 rng(seed);
      std::vector<DayArticle> articles;
      FixtureEmbeddingProvider embedder;
      testing::ScriptedProvider llm;
      int n = 6 + static_cast<int>(rng() % 10);
      for (int i = 0; i < n; ++i) {
        DayArticle a;
        a.article.article_id = fmt::format("a{:02d}", i);
        a.article.title = "Headline " + a.article.article_id;
        a.article.body = "Body.";
        articles.push_back(a);
        std::vector<double> v(8, 0.0);
        int g = static_cast<int>(rng() % 6);
        v[static_cast<std::size_t>(g < 3 ? g : 3 + i % 5)] = 1.0;
        for (double& x : v) x += static_cast<double>(rng() % 100) / 1000.0;
        embedder.add(a.article.article_id, v);
      }
      std::vector<std::string> recall, precision;
      for (int i = 0; i < 40; ++i) {
        recall.push_back(std::to_string(static_cast<int>(rng() % 5) - 1));
        std::vector<std::string> opts = {"-1", "1", "2,3", "7", "none"};
        precision.push_back(opts[rng() % opts.size()]);
      }
      llm.script(PromptName::kClusterRecall, recall);
      llm.script(PromptName::kClusterPrecision, precision);
      llm.script(PromptName::kEventTitle, {R"({"theme": "Theme", "theme_short": "Short"})"});
      PromptRunner runner(llm, quick, fixed_clock(parse_timestamp("2024-10-01T23:00:00Z")));
      DayClustering result = cluster_day(day, articles, embedder, runner);
      std::set<std::string> seen;
      for (const DraftEvent& d : result.trace) {
        std::set<std::string> expected(d.initial.begin(), d.initial.end());
        expected.insert(d.added.begin(), d.added.end());
        for (const std::string& id : d.removed) expected.erase(id);
        additions += d.added.size();
        removals += d.removed.size();
        c.expect(std::set<std::string>(d.members.begin(), d.members.end()) == expected,
                 fmt::format("seed {}: members != initial + added - removed", seed));
        for (const std::string& id : d.members) {
          c.expect(seen.insert(id).second, fmt::format("seed {}: {} in two events", seed, id));
        }
      }
      for (const std::string& id : result.unclustered) {
        c.expect(!seen.count(id), fmt::format("seed {}: {} clustered and unclustered", seed, id));
      }
      c.expect(seen.size() + result.unclustered.size() == articles.size(), fmt::format("seed {}: lost articles", seed));
      replays.push_back(result.events);
    }
    c.expect(replays[0] == replays[1] && replays[1] == replays[2], fmt::format("seed {}: replay differs", seed));
  }
  c.expect(additions > 0 && removals > 0, "scripts never added or removed a member");
  if (c.ok) {
    c.detail = fmt::format("{} randomized days x 3 replays; {} additions, {} removals", seeds, additions / 3, removals / 3);
  }
  return c;
}

// 3 -------------------------------------------------------------------------

Check criterion_cosine() {
  Check c;
  double diag = cosine_similarity({"a", {1, 1}}, {"b", {1, 0}});
  c.expect(std::fabs(diag - 1.0 / std::sqrt(2.0)) < kCosineTolerance, fmt::format("(1,1).(1,0) = {}", diag));
  c.expect(std::fabs(diag - 0.70710678118654752) < kCosineTolerance, "0.7071...");
  double same = cosine_similarity({"a", {0.3, -2, 5}}, {"b", {0.3, -2, 5}});
  c.expect(std::fabs(same - 1.0) < kCosineTolerance, fmt::format("identity = {}", same));
  double orth = cosine_similarity({"a", {1, 0, 0}}, {"b", {0, 4, 0}});
  c.expect(std::fabs(orth) < kCosineTolerance, fmt::format("orthogonal = {}", orth));
  if (c.ok) c.detail = fmt::format("{:.10f}, {:.1f}, {:.1f}", diag, same, orth);
  return c;
}

// 4 -------------------------------------------------------------------------

int run_cli(const std::string& args) {
  std::string cmd = fmt::format("'{}' {} > /dev/null 2>&1", BIASLENS_CLI_PATH, args);
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Check criterion_fixture_day() {
  Check c;
  std::filesystem::path store = testing::scratch_dir("accept_fixture_day") / "store.db";
  std::string args = fmt::format("--config '{}' --store '{}' run day --date 2024-10-01 --provider fixture",
                                 testing::source_path("fixtures/fixture_day/config.json").string(), store.string());
  auto start = std::chrono::steady_clock::now();
  int first = run_cli(args);
  double secs = seconds_since(start);
  c.expect(first == 0, fmt::format("run day exited {}", first));
  if (!c.ok) return c;

  FixtureRun check = testing::open_fixture("fixtures/fixture_day/config.json", "accept_fixture_day_reader");
  Store done = Store::open(store, check.providers->clock);
  Json out = day_output_document(done, check.deps->hierarchy, testing::fixture_day_date());
  Json golden = testing::fixture_day_golden();
  c.expect(out["articles"].size() == 30, fmt::format("{} articles", out["articles"].size()));
  c.expect(out["articles"] == golden["articles"], "article labels differ from golden");
  c.expect(out["events"] == golden["events"], "event partition differs from golden");
  c.expect(out["facts"] == golden["facts"], "fact clusters differ from golden");
  c.expect(out == golden, "day output differs from golden");
  std::string digest = done.state_digest();

  int second = run_cli(args);
  c.expect(second == 0, fmt::format("rerun exited {}", second));
  c.expect(done.state_digest() == digest, "rerun changed the store");
  c.expect(secs < kFixtureDaySeconds, fmt::format("took {:.1f}s", secs));
  if (c.ok) {
    c.detail = fmt::format("30 articles, {} events, {} fact clusters, {:.2f}s; rerun idempotent", out["events"].size(),
                           out["facts"].size(), secs);
  }
  return c;
}

// 5 -------------------------------------------------------------------------

Check criterion_text_s1() {
  Check c;
  FixtureRun run = testing::text_s1_store("accept_text_s1");
  Json design = Json::parse(read_file(testing::source_path("fixtures/text_s1/design.json")));
  c.expect(design["articles"].size() == 10, "Text S1 has 10 items");
  std::string item1_id;
  for (const Json& item : design["articles"]) {
    std::string id = make_article_id(item["publisher_id"].get<std::string>(),
                                     canonicalize_url(item["url"].get<std::string>()));
    if (item["item"] == 1) item1_id = id;
    std::optional<LabelSet> l = load_labels(*run.store, id, run.deps->hierarchy);
    const Json& a = item["answers"];
    std::string which = fmt::format("item {}", item["item"].get<int>());
    c.expect(l.has_value(), which + " unlabeled");
    if (!l) continue;
    c.expect(l->category == a["category"] && l->topic == a["topic"] && l->subtopic == a["subtopic"],
             which + " topic path");
    c.expect(std::string(to_string(l->news_type)) == a["news_type"].get<std::string>(), which + " news type");
    c.expect(l->lean.score.value() == a["lean"] && l->tone.score.value() == a["tone"] &&
                 l->headline_lean.score.value() == a["headline_lean"] &&
                 l->headline_tone.score.value() == a["headline_tone"],
             which + " scores");
    c.expect(l->takeaways == a["takeaways"], which + " takeaways");
  }
  std::optional<LabelSet> first = load_labels(*run.store, item1_id, run.deps->hierarchy);
  c.expect(first && first->topic == "War and International Conflict", "item 1 topic");
  c.expect(first && first->lean.score.value() == 0, "item 1 lean");
  c.expect(first && first->tone.score.value() == -4, "item 1 tone");
  c.expect(first && first->headline_tone.score.value() == -3, "item 1 title tone");

  // The two USA Today politics items.
  AggregateQuery q;
  q.publishers = {"usa_today"};
  q.categories = {"Politics"};
  q.group_by = {GroupKey::kPublisher};
  q.measure = Measure::kMeanTone;
  AggregateTable t = aggregate(q, load_corpus(*run.store, run.deps->hierarchy));
  c.expect(t.rows.size() == 1 && t.rows[0].n == 2, "two USA Today politics items");
  double mean = t.rows.empty() ? NAN : t.rows[0].value;
  c.expect(std::fabs(mean - (-0.5)) <= kMeanToneTolerance, fmt::format("USA Today mean tone {}", mean));
  if (c.ok) c.detail = fmt::format("10/10 items match; USA Today mean tone {}", mean);
  return c;
}

// 6 -------------------------------------------------------------------------

Check criterion_table_s1() {
  Check c;
  FixtureRun run = testing::open_fixture("fixtures/text_s1/config.json", "accept_table_s1");
  std::size_t n = import_event_table(*run.store, Json::parse(read_file(testing::source_path("fixtures/table_s1/events.json"))));
  c.expect(n == 22, fmt::format("{} events imported", n));
  ApiService api(*run.store, run.deps->hierarchy);
  HttpRequest req;
  req.path = "/events";
  req.query["date"] = "2024-10-01";
  HttpResponse r = api.handle(req);
  c.expect(r.status == 200, fmt::format("/events status {}", r.status));
  if (!c.ok) return c;
  Json events = r.json()["events"];
  c.expect(events.size() == 22, fmt::format("/events lists {}", events.size()));
  int max_count = 0;
  std::string max_theme;
  for (const Json& e : events) {
    if (e["article_count"].get<int>() > max_count) {
      max_count = e["article_count"];
      max_theme = e["theme"];
    }
  }
  c.expect(max_count == 75, fmt::format("max count {}", max_count));
  c.expect(max_theme == "Escalation of Conflict: Israel and Iran's Military Engagements in Lebanon", max_theme);
  c.expect(!events.empty() && events[0]["article_count"] == max_count, "largest event not first");
  for (std::size_t i = 1; i < events.size(); ++i) {
    c.expect(events[i - 1]["article_count"].get<int>() >= events[i]["article_count"].get<int>(),
             fmt::format("rank {} out of order", i));
  }
  if (c.ok) c.detail = "22 events, top 75, ranked by size";
  return c;
}

// 7 -------------------------------------------------------------------------

Check criterion_prompts() {
  Check c;
  Json bindings = Json::parse(read_file(testing::source_path("tests/golden/prompts/bindings.json")));
  std::size_t matched = 0;
  for (PromptName name : all_prompt_names()) {
    std::string key(to_string(name));
    PromptBindings b;
    for (const auto& [k, v] : bindings.at(key).items()) b[k] = v.get<std::string>();
    std::string golden = read_file(testing::source_path("tests/golden/prompts/" + key + ".txt"));
    bool same = render_prompt(prompt_template(name), b) == golden;
    c.expect(same, key + " differs from golden");
    matched += same;
  }
  c.expect(matched >= 13, "fewer than 13 templates");
  c.detail = fmt::format("{}/{} templates byte-equal", matched, all_prompt_names().size());
  return c;
}

// 8 -------------------------------------------------------------------------

Check criterion_metrics() {
  Check c;
  std::map<std::string, std::string> assignments;
  std::map<std::string, std::optional<std::string>> verdicts;
  for (int i = 0; i < 10; ++i) {
    std::string id = fmt::format("c{}", i);
    assignments[id] = "E1";
    verdicts[id] = i < 9 ? std::optional<std::string>("E1") : std::nullopt;
  }
  for (int i = 0; i < 3; ++i) verdicts[fmt::format("m{}", i)] = "E1";
  ClusterPrf prf = cluster_prf(assignments, verdicts, {"E1"});
  c.expect(prf.clustered == 10 && prf.confirmed == 9 && prf.true_members == 12, "construction counts");
  c.expect(std::fabs(prf.precision - 0.9) < kPrfTolerance, fmt::format("precision {}", prf.precision));
  c.expect(std::fabs(prf.recall - 0.75) < kPrfTolerance, fmt::format("recall {}", prf.recall));
  c.expect(std::fabs(prf.f1 - 2 * 0.9 * 0.75 / (0.9 + 0.75)) < kPrfTolerance, fmt::format("f1 {}", prf.f1));
  c.expect(std::fabs(prf.f1 - kF1Reported) < kReportedRounding, "f1 rounds to 0.8182");

  std::vector<KindedResponse> responses;
  auto annotator = [&](const std::string& who, int agree, int total) {
    for (int i = 0; i < total; ++i) {
      KindedResponse r;
      r.kind = TaskKind::kTopic;
      r.response.annotator_id = who;
      r.response.verdict = i < agree ? Verdict::kAgree : Verdict::kDisagree;
      responses.push_back(r);
    }
  };
  annotator("v1", 8, 10);
  annotator("v2", 14, 20);
  annotator("v3", 3, 4);
  AgreementReport rep = agreement_report(responses, TaskKind::kTopic);
  const MeanSd& agree = rep.levels.at(0).across_annotators;
  double oracle_sd = std::sqrt(((0.8 - 0.75) * (0.8 - 0.75) + (0.7 - 0.75) * (0.7 - 0.75)) / 3.0);
  c.expect(std::fabs(agree.mean - 0.75) < kAgreementTolerance, fmt::format("mean {}", agree.mean));
  c.expect(std::fabs(agree.sd - 0.0408) < kAgreementTolerance, fmt::format("sd {}", agree.sd));
  c.expect(std::fabs(agree.sd - oracle_sd) < 1e-12, "sd vs population formula");

  std::mt19937_64 rng(8);
  std::vector<std::string> space = {"-2", "-1", "0", "1", "2"};
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::size_t n = 1 + rng() % 60, equal = 0;
    for (std::size_t i = 0; i < n; ++i) {
      pairs.emplace_back(space[rng() % space.size()], space[rng() % space.size()]);
      equal += pairs.back().first == pairs.back().second;
    }
    ConfusionMatrix m = confusion_matrix(pairs, space);
    c.expect(m.total == n && m.trace() == equal, fmt::format("trial {} counts", trial));
    c.expect(m.accuracy() == static_cast<double>(equal) / static_cast<double>(n), fmt::format("trial {} accuracy", trial));
  }
  if (c.ok) {
    c.detail = fmt::format("P {:.3f} R {:.3f} F1 {:.4f}; agreement {:.3f} +/- {:.4f}; 200 confusion trials",
                           prf.precision, prf.recall, prf.f1, agree.mean, agree.sd);
  }
  return c;
}

// 9 -------------------------------------------------------------------------

Check criterion_focus() {
  Check c;
  const Focus all[] = {Focus::kRepublican, Focus::kDemocrat, Focus::kNeither, Focus::kBoth};
  const int sign[] = {1, -1, 0, 0};
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 1 + rng() % 40;
    std::vector<SentenceRecord> records;
    int total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t k = rng() % 4;
      SentenceRecord r;
      r.index = static_cast<int>(i) + 1;
      r.focus = all[k];
      records.push_back(r);
      total += sign[k];
    }
    double got = article_focus(records);
    c.expect(got >= -1.0 && got <= 1.0, fmt::format("trial {} out of range: {}", trial, got));
    c.expect(got == static_cast<double>(total) / static_cast<double>(n), fmt::format("trial {} mean", trial));
  }
  std::vector<SentenceRecord> symmetric;
  for (Focus f : all) {
    SentenceRecord r;
    r.focus = f;
    symmetric.push_back(r);
  }
  double zero = article_focus(symmetric);
  c.expect(zero == 0.0, fmt::format("symmetric case {}", zero));
  if (c.ok) c.detail = "1000 sequences; [rep, dem, neither, both] = 0";
  return c;
}

// 10 ------------------------------------------------------------------------

Check criterion_ingestion() {
  Check c;
  std::mt19937_64 rng(10);
  auto random_item = [&](int i) {
    return SnapshotItem{fmt::format("https://n.example/{}", i), "t", static_cast<double>(rng() % 3000),
                        8.0 + static_cast<double>(rng() % 30), static_cast<double>(rng() % 4) * 20000.0, 0};
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<SnapshotItem> snap;
    for (int i = 0; i < 8; ++i) snap.push_back(random_item(i));
    SnapshotItem base = random_item(100);
    base.y_offset = 500;
    base.font_size = 16;
    base.image_area = 0;
    SnapshotItem higher = base, bigger_font = base, with_image = base;
    higher.url += "h";
    higher.y_offset = 100;
    bigger_font.url += "f";
    bigger_font.font_size = 30;
    with_image.url += "i";
    with_image.image_area = 40000;
    for (const SnapshotItem& s : {base, higher, bigger_font, with_image}) snap.push_back(s);
    ProminenceScorer scorer(snap, {});
    c.expect(scorer.score(higher) > scorer.score(base), fmt::format("trial {}: higher placement", trial));
    c.expect(scorer.score(bigger_font) > scorer.score(base), fmt::format("trial {}: larger font", trial));
    c.expect(scorer.score(with_image) > scorer.score(base), fmt::format("trial {}: image", trial));
  }

  const SnapshotRef ref{"ap", parse_timestamp("2024-10-01T14:00:00Z"), parse_date("2024-10-01")};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SnapshotItem> raw;
    for (int i = 0; i < 20; ++i) {
      raw.push_back({fmt::format("https://n.example/{}", rng() % 1000 + 1000 * i), "t",
                     static_cast<double>(rng() % 3) * 100, 12.0 + static_cast<double>(rng() % 2) * 8, 0, 0});
    }
    HomepageSnapshot expected = rank_snapshot(ref, raw, SnapshotSpec{});
    for (int k = 0; k < 5; ++k) {
      std::shuffle(raw.begin(), raw.end(), rng);
      c.expect(rank_snapshot(ref, raw, SnapshotSpec{}).items == expected.items, fmt::format("trial {}: tie order", trial));
    }
  }

  CleaningDictionary dict = CleaningDictionary::parse("Advertisement\nre:Listen \\d+ minutes?\nSign up for our newsletter\n");
  std::vector<std::string> pieces = {"Adver", "tisement", "Listen ", "3 minutes", "Sign up", " for our newsletter",
                                     "text", " ", "\n", "\n\n", ".", "\t"};
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    for (int k = 0; k < 25; ++k) s += pieces[rng() % pieces.size()];
    std::string once = dict.clean(s);
    c.expect(dict.clean(once) == once, fmt::format("trial {}: clean not idempotent", trial));
  }

  for (int trial = 0; trial < 200; ++trial) {
    std::vector<HomepageSnapshot> snaps;
    std::map<std::string, int> oracle;
    std::size_t count = 1 + rng() % 5;
    for (std::size_t s = 0; s < count; ++s) {
      HomepageSnapshot snap{{"ap", parse_timestamp(fmt::format("2024-10-01T{:02d}:00:00Z", 10 + 3 * s)),
                             parse_date("2024-10-01")},
                            {}};
      for (int r = 1; r <= 30; ++r) {
        std::string url = fmt::format("https://n.example/{}", rng() % 50);
        int rank = 1 + static_cast<int>(rng() % 30);
        snap.items.push_back({url + (rng() % 3 == 0 ? "?utm_source=x" : ""), "t", 0, 12, 0, rank});
        auto [it, fresh] = oracle.try_emplace(url, rank);
        if (!fresh) it->second = std::min(it->second, rank);
      }
      snaps.push_back(std::move(snap));
    }
    std::shuffle(snaps.begin(), snaps.end(), rng);
    std::vector<ArticleCandidate> merged = dedupe_and_merge(snaps);
    c.expect(merged.size() == oracle.size(), fmt::format("trial {}: {} candidates", trial, merged.size()));
    for (const ArticleCandidate& a : merged) {
      auto it = oracle.find(a.canonical_url);
      c.expect(it != oracle.end() && it->second == a.best_rank, fmt::format("trial {}: best rank", trial));
    }
  }
  if (c.ok) c.detail = "3 monotonicity checks x 200, 250 shuffles, 300 cleanings, 200 dedup fixtures";
  return c;
}

// 11 ------------------------------------------------------------------------

Store open_store_at(const FixtureRun& like, const std::filesystem::path& path) {
  return Store::open(path, like.providers->clock);
}

Check criterion_crash_safety() {
  Check c;
  FixtureRun whole = testing::open_fixture("fixtures/fixture_day/config.json", "accept_crash_whole");
  c.expect(run_day(*whole.store, *whole.deps, testing::fixture_day_date()).ok(), "uninterrupted run failed");
  std::string expected = whole.store->state_digest();

  std::filesystem::path path = testing::scratch_dir("accept_crash_killed") / "store.db";
  pid_t pid = fork();
  if (pid == 0) {
    FixtureRun child = testing::open_fixture("fixtures/fixture_day/config.json", "accept_crash_child");
    Store store = open_store_at(child, path);
    RunDayOptions o;
    o.after_stage = [](const StageReport& s) {
      if (s.stage == StageName::kLabel) std::_Exit(0);
    };
    run_day(store, *child.deps, testing::fixture_day_date(), o);
    std::_Exit(3);
  }
  int status = 0;
  waitpid(pid, &status, 0);
  c.expect(WIFEXITED(status) && WEXITSTATUS(status) == 0, "child did not stop after the label stage");
  if (!c.ok) return c;

  Store resumed = open_store_at(whole, path);
  std::vector<PipelineRun> runs = resumed.runs(testing::fixture_day_date());
  c.expect(runs.size() == 2, fmt::format("{} runs before resume", runs.size()));
  c.expect(!load_cluster_day(resumed, testing::fixture_day_date()), "clusters written before the kill");
  c.expect(run_day(resumed, *whole.deps, testing::fixture_day_date()).ok(), "resumed run failed");
  c.expect(resumed.state_digest() == expected, "digest differs from the uninterrupted run");
  if (c.ok) c.detail = "digest " + expected.substr(0, 16) + " matches after kill + rerun";
  return c;
}

}  // namespace
}  // namespace biaslens

int main() {
  using namespace biaslens;
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria = {
      {"threshold components vs brute force", criterion_threshold_oracle},
      {"refinement algebra and replay", criterion_refinement_algebra},
      {"cosine hand cases", criterion_cosine},
      {"fixture day golden via CLI", criterion_fixture_day},
      {"Text S1 replay and aggregates", criterion_text_s1},
      {"Table S1 events ranked", criterion_table_s1},
      {"prompt templates byte-match", criterion_prompts},
      {"metric formulas", criterion_metrics},
      {"focus property", criterion_focus},
      {"ingestion properties", criterion_ingestion},
      {"crash safety after label stage", criterion_crash_safety},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      c = criteria[i].second();
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail = std::string("exception: ") + e.what();
    }
    failed += !c.ok;
    fmt::print("{} {:>2} {}: {}\n", c.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, c.detail);
  }
  fmt::print("{}/{} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

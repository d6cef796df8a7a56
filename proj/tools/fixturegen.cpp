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

// Regenerates recorded provider fixtures and golden outputs from a design file.
//
// The design names each article's intended labels, event group and fact
// sentences. A scripted LLM answers every prompt from the design, a designed
// embedder places group members and shared facts on common axes, and the real
// pipeline runs against both while the exchanges are recorded. The recordings
// are then replayed into a fresh store and must reproduce the same state.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <set>

#include "biaslens/core/schema.hpp"
#include "biaslens/ingest/url.hpp"
#include "biaslens/label/sentences.hpp"
#include "biaslens/store/config.hpp"
#include "biaslens/store/queries.hpp"
#include "biaslens/util/files.hpp"
#include "biaslens/util/strings.hpp"

namespace fs = std::filesystem;
using namespace biaslens;

namespace {

constexpr std::string_view kRule = "####################\n\n";
constexpr std::size_t kEmbeddingDim = 256;

struct DesignArticle {
  std::string article_id;
  std::string publisher_id;
  std::string url;
  std::string title;
  std::string date;
  std::string body;
  std::string group;
  std::string embed_group;
  double embed_weight = 1.0;
  Json answers;
};

struct Design {
  std::string date;
  std::map<std::string, Json> groups;
  std::map<std::string, std::string> fact_summaries;
  std::vector<DesignArticle> articles;
  std::map<std::string, Json> sentences;  // sentence text -> {type, tone, focus, fact?}

  const DesignArticle* by_title(std::string_view title) const {
    for (const DesignArticle& a : articles) {
      if (a.title == title) return &a;
    }
    return nullptr;
  }
  const DesignArticle& by_id(std::string_view id) const {
    for (const DesignArticle& a : articles) {
      if (a.article_id == id) return a;
    }
    throw NotFound(fmt::format("design has no article '{}'", id));
  }
};

std::string string_or_empty(const Json& doc, const char* key) {
  auto it = doc.find(key);
  return it == doc.end() || it->is_null() ? std::string() : it->get<std::string>();
}

Design load_design(const fs::path& path) {
  Json doc = Json::parse(read_file(path));
  Design d;
  d.date = doc.value("date", "");
  const Json groups = doc.value("groups", Json::object());
  const Json facts = doc.value("facts", Json::object());
  for (const auto& [key, g] : groups.items()) d.groups[key] = g;
  for (const auto& [key, f] : facts.items()) d.fact_summaries[key] = f.at("summary");
  for (const Json& a : doc.at("articles")) {
    DesignArticle da;
    da.publisher_id = a.at("publisher_id");
    da.url = canonicalize_url(a.at("url").get<std::string>());
    da.article_id = make_article_id(da.publisher_id, da.url);
    da.title = a.at("title");
    da.date = a.value("date", d.date);
    da.body = a.value("body", "");
    da.group = string_or_empty(a, "group");
    da.embed_group = a.contains("embed_group") ? string_or_empty(a, "embed_group") : da.group;
    da.embed_weight = a.value("embed_weight", 1.0);
    da.answers = a.at("answers");
    if (da.answers.contains("sentences")) {
      for (const Json& s : da.answers["sentences"]) d.sentences[s.at("text")] = s;
    }
    d.articles.push_back(std::move(da));
  }
  return d;
}

// The first block between rule lines, or empty.
std::string_view ruled_block(std::string_view prompt) {
  std::size_t start = prompt.find(kRule);
  if (start == std::string_view::npos) return {};
  start += kRule.size();
  std::size_t end = prompt.find("\n\n####################", start);
  return end == std::string_view::npos ? std::string_view() : prompt.substr(start, end - start);
}

std::vector<std::string> numbered_items(std::string_view block) {
  std::vector<std::string> out;
  for (const std::string& line : text::split(block, '\n')) {
    std::size_t dot = line.find(". ");
    if (dot == std::string::npos) continue;
    out.push_back(line.substr(dot + 2));
  }
  return out;
}

std::string line_after(std::string_view prompt, std::string_view label) {
  std::size_t at = prompt.find(label);
  if (at == std::string_view::npos) throw Error(fmt::format("prompt has no '{}' line", label));
  at += label.size();
  std::size_t end = prompt.find('\n', at);
  return std::string(prompt.substr(at, end == std::string_view::npos ? std::string_view::npos : end - at));
}

class DesignLlm : public LlmProvider {
 public:
  explicit DesignLlm(const Design& design) : design_(design) {}

  std::string complete(const LlmRequest& request) override {
    const std::string& prompt = request.text;
    switch (request.prompt) {
      case PromptName::kTopic:
        return Json{{"topic", article_answers(prompt).at("topic")}}.dump();
      case PromptName::kSubtopic:
        return Json{{"subtopic", article_answers(prompt).at("subtopic")}}.dump();
      case PromptName::kTakeaways:
        return Json{{"takeaways", article_answers(prompt).at("takeaways")}}.dump();
      case PromptName::kArticleType: {
        const Json& a = article_answers(prompt);
        return Json{{"news_type", a.at("news_type")}, {"justification", a.at("justification")}}.dump();
      }
      case PromptName::kArticleLean:
        return scored(article_answers(prompt), "lean", "lean_reason", "lean");
      case PromptName::kArticleTone:
        return scored(article_answers(prompt), "tone", "tone_reason", "tone");
      case PromptName::kHeadlineLean:
        return scored(article_answers(prompt), "headline_lean", "headline_lean_reason", "lean");
      case PromptName::kHeadlineTone:
        return scored(article_answers(prompt), "headline_tone", "headline_tone_reason", "tone");
      case PromptName::kSentence:
        return sentences(prompt);
      case PromptName::kQuote:
        return article_answers(prompt).value("quotes", Json::array()).dump();
      case PromptName::kEventTitle:
        return event_title(prompt);
      case PromptName::kClusterRecall:
        return recall(prompt);
      case PromptName::kClusterPrecision:
        return precision(prompt);
      case PromptName::kFactSummary:
        return fact_summary(prompt);
    }
    throw Error("unhandled prompt");
  }

 private:
  const DesignArticle& article_for_block(std::string_view block) const {
    std::size_t split = block.find("\n\n");
    std::string_view title = split == std::string_view::npos ? block : block.substr(0, split);
    const DesignArticle* a = design_.by_title(title);
    if (!a) throw Error(fmt::format("design has no article titled '{}'", title));
    return *a;
  }
  const Json& article_answers(std::string_view prompt) const { return article_for_block(ruled_block(prompt)).answers; }

  static std::string scored(const Json& a, const char* score, const char* reason, const char* key) {
    return Json{{"reason", a.at(reason)}, {key, a.at(score)}}.dump();
  }

  std::string sentences(std::string_view prompt) const {
    Json out = Json::array();
    std::vector<std::string> items = numbered_items(ruled_block(prompt));
    for (std::size_t i = 0; i < items.size(); ++i) {
      Json row{{"sentence", i + 1}, {"type", "fact"}, {"tone", "neutral"}, {"focus", "neither"}};
      auto it = design_.sentences.find(items[i]);
      if (it != design_.sentences.end()) {
        row["type"] = it->second.at("type");
        row["tone"] = it->second.at("tone");
        row["focus"] = it->second.at("focus");
      } else if (!design_.sentences.empty()) {
        throw Error(fmt::format("sentence not in design: '{}'", items[i]));
      }
      out.push_back(std::move(row));
    }
    return out.dump();
  }

  std::string majority_group(const std::vector<std::string>& titles) const {
    std::map<std::string, int> votes;
    for (const std::string& t : titles) {
      const DesignArticle* a = design_.by_title(t);
      if (!a) throw Error(fmt::format("design has no article titled '{}'", t));
      ++votes[a->group];
    }
    auto best = std::max_element(votes.begin(), votes.end(),
                                 [](const auto& x, const auto& y) { return x.second < y.second; });
    return best->first;
  }

  std::string event_title(std::string_view prompt) const {
    const Json& g = design_.groups.at(majority_group(numbered_items(ruled_block(prompt))));
    return Json{{"theme", g.at("theme")}, {"theme_short", g.at("theme_short")}}.dump();
  }

  std::string recall(std::string_view prompt) const {
    const DesignArticle* a = design_.by_title(line_after(prompt, "Headline: "));
    if (!a || a->group.empty()) return "-1";
    const std::string& theme = design_.groups.at(a->group).at("theme").get_ref<const std::string&>();
    std::vector<std::string> themes = numbered_items(prompt.substr(prompt.find("Themes:\n")));
    for (std::size_t i = 0; i < themes.size(); ++i) {
      if (themes[i] == theme) return std::to_string(i + 1);
    }
    return "-1";
  }

  std::string precision(std::string_view prompt) const {
    std::string theme = line_after(prompt, "Theme: ");
    std::vector<std::string> titles = numbered_items(prompt.substr(prompt.find("Headlines:\n")));
    std::vector<std::string> flagged;
    for (std::size_t i = 0; i < titles.size(); ++i) {
      const DesignArticle* a = design_.by_title(titles[i]);
      if (!a) throw Error(fmt::format("design has no article titled '{}'", titles[i]));
      bool belongs = !a->group.empty() && design_.groups.at(a->group).at("theme") == theme;
      if (!belongs) flagged.push_back(std::to_string(i + 1));
    }
    return flagged.empty() ? "-1" : text::join(flagged, ", ");
  }

  std::string fact_summary(std::string_view prompt) const {
    for (const std::string& s : numbered_items(ruled_block(prompt))) {
      auto it = design_.sentences.find(s);
      if (it != design_.sentences.end() && it->second.contains("fact")) {
        return Json{{"synthetic_sentence", design_.fact_summaries.at(it->second.at("fact"))}}.dump();
      }
    }
    throw Error("fact summary prompt names no designed fact sentence");
  }

  const Design& design_;
};

// Group members share a group axis; shared fact sentences share a fact axis.
// Every input also gets a private axis so no two vectors coincide.
class DesignEmbedder : public EmbeddingProvider {
 public:
  explicit DesignEmbedder(const Design& design) : design_(design) {
    for (const auto& [key, g] : design_.groups) axis("group:" + key);
    for (const auto& [key, f] : design_.fact_summaries) axis("fact:" + key);
  }

  std::vector<std::vector<double>> embed_batch(const std::vector<EmbeddingInput>& inputs) override {
    std::lock_guard lock(mu_);
    std::vector<std::vector<double>> out;
    for (const EmbeddingInput& in : inputs) {
      std::vector<double> v(kEmbeddingDim, 0.0);
      std::size_t hash = in.id.find('#');
      if (hash == std::string::npos) {
        const DesignArticle& a = design_.by_id(in.id);
        if (!a.embed_group.empty()) v[axis("group:" + a.embed_group)] = a.embed_weight;
        v[axis("own:" + in.id)] = 0.25;
      } else {
        auto it = design_.sentences.find(in.text);
        if (it != design_.sentences.end() && it->second.contains("fact")) {
          v[axis("fact:" + it->second.at("fact").get<std::string>())] = 1.0;
          v[axis("own:" + in.id)] = 0.2;
        } else {
          v[axis("own:" + in.id)] = 1.0;
        }
      }
      recorded_[in.id] = v;
      out.push_back(std::move(v));
    }
    return out;
  }

  std::string ndjson() const {
    std::string out;
    for (const auto& [id, values] : recorded_) out += Json{{"id", id}, {"values", values}}.dump() + "\n";
    return out;
  }

 private:
  std::size_t axis(const std::string& key) {
    auto [it, inserted] = axes_.emplace(key, axes_.size());
    if (it->second >= kEmbeddingDim) throw Error("design needs more embedding axes");
    return it->second;
  }

  const Design& design_;
  std::map<std::string, std::size_t> axes_;
  std::map<std::string, std::vector<double>> recorded_;
  std::mutex mu_;
};

std::vector<CivilDate> design_dates(const Design& d) {
  std::set<std::string> dates;
  for (const DesignArticle& a : d.articles) dates.insert(a.date);
  std::vector<CivilDate> out;
  for (const std::string& s : dates) out.push_back(parse_date(s));
  return out;
}

struct RunSpec {
  std::vector<StageName> stages;
  std::vector<CivilDate> dates;
  std::string articles_ndjson;  // imported before running, when set
};

std::string run_into(const fs::path& store_path, const AppConfig& config, const Providers& providers,
                     const RunSpec& spec, const fs::path& golden_path) {
  fs::remove(store_path);
  fs::remove(fs::path(store_path.string() + "-wal"));
  fs::remove(fs::path(store_path.string() + "-shm"));
  PipelineDeps deps = make_pipeline_deps(config, providers);
  Store store = Store::open(store_path, providers.clock);
  if (!spec.articles_ndjson.empty()) import_articles(store, spec.articles_ndjson);
  RunDayOptions options;
  if (!spec.stages.empty()) options.stages = spec.stages;
  Json golden = Json::array();
  for (CivilDate date : spec.dates) {
    DayReport report = run_day(store, deps, date, options);
    if (!report.ok()) throw Error(fmt::format("run failed: {}", to_document(report).dump()));
    golden.push_back(day_output_document(store, deps.hierarchy, date));
  }
  if (!golden_path.empty()) {
    write_file_atomic(golden_path, (spec.dates.size() == 1 ? golden[0] : golden).dump(1) + "\n");
  }
  return store.state_digest();
}

std::string text_s1_articles(const Design& d) {
  std::string out;
  for (const DesignArticle& a : d.articles) {
    Article article;
    article.article_id = a.article_id;
    article.publisher_id = a.publisher_id;
    article.canonical_url = a.url;
    article.title = a.title;
    article.body = a.body;
    article.published_at = parse_timestamp(a.date + "T12:00:00Z");
    article.first_seen_snapshot = {a.publisher_id, parse_timestamp(a.date + "T14:00:00Z"), parse_date(a.date)};
    article.best_rank = 1;
    out += to_document(article).dump() + "\n";
  }
  return out;
}

int generate(const fs::path& design_path, const fs::path& config_path, bool imported, const fs::path& golden_path) {
  Design design = load_design(design_path);
  AppConfig config = AppConfig::load(config_path);
  RunSpec spec;
  if (imported) {
    spec.stages = {StageName::kLabel, StageName::kCluster};
    spec.dates = design_dates(design);
    spec.articles_ndjson = text_s1_articles(design);
    write_file_atomic(config_path.parent_path() / "articles.ndjson", spec.articles_ndjson);
  } else {
    spec.dates = {parse_date(design.date)};
  }

  // Record.
  fs::path llm_path = config.provider.llm_fixtures;
  fs::remove(llm_path);
  DesignLlm scripted(design);
  DesignEmbedder embedder(design);
  Providers recording;
  recording.llm_recorder = std::make_unique<RecordingLlmProvider>(scripted, llm_path);
  recording.llm_base = std::make_unique<FixtureLlmProvider>();
  if (!config.provider.snapshot_dir.empty()) {
    recording.snapshots = std::make_unique<FixtureSnapshotSource>(config.provider.snapshot_dir, config.snapshot.timezone_rule);
  }
  if (!config.provider.pages_dir.empty()) recording.pages = std::make_unique<FixturePageSource>(config.provider.pages_dir);
  recording.clock = config.clock();
  struct Borrowed : EmbeddingProvider {
    explicit Borrowed(EmbeddingProvider& e) : inner(e) {}
    std::vector<std::vector<double>> embed_batch(const std::vector<EmbeddingInput>& in) override {
      return inner.embed_batch(in);
    }
    EmbeddingProvider& inner;
  };
  recording.embedder = std::make_unique<Borrowed>(embedder);
  fs::path scratch = fs::temp_directory_path() / "biaslens_fixturegen";
  fs::create_directories(scratch);
  std::string recorded = run_into(scratch / "record.db", config, recording, spec, {});
  write_file_atomic(config.provider.embedding_fixtures, embedder.ndjson());

  // Replay from the recorded files only.
  Providers replay = make_providers(config.provider, config.snapshot);
  std::string replayed = run_into(scratch / "replay.db", config, replay, spec, golden_path);
  if (recorded != replayed) {
    std::cerr << "replay diverged from the recorded run\n";
    return 1;
  }
  std::cout << fmt::format("fixtures written; state digest {}\n", replayed);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regenerates recorded provider fixtures from a design file."};
  fs::path design;
  fs::path config;
  fs::path golden;
  bool imported = false;
  app.add_option("--design", design, "design.json")->required()->check(CLI::ExistingFile);
  app.add_option("--config", config, "fixture-mode config naming the output files")->required()->check(CLI::ExistingFile);
  app.add_option("--golden", golden, "where to write the replayed day output");
  app.add_flag("--imported", imported, "articles come from the design, not from snapshots");
  CLI11_PARSE(app, argc, argv);
  try {
    return generate(design, config, imported, golden);
  } catch (const std::exception& e) {
    std::cerr << "fixturegen: " << e.what() << "\n";
    return 1;
  }
}

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

#include "biaslens/cluster/events.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <set>

#include "biaslens/cluster/facts.hpp"
#include "biaslens/label/sentences.hpp"
#include "biaslens/util/digest.hpp"
#include "biaslens/util/strings.hpp"

namespace biaslens {

namespace {

constexpr std::size_t kLeadSentences = 3;

struct Theme {
  std::string theme;
  std::string theme_short;
  bool truncated = false;
};

Theme parse_theme(const std::string& raw) {
  Json doc = extract_json(raw);
  if (!doc.is_object()) throw ResponseError("expected a JSON object");
  Theme t;
  t.theme = text::normalize_whitespace(require_string(doc, "theme", false));
  std::string short_form = text::normalize_whitespace(require_string(doc, "theme_short", false));
  if (t.theme.empty()) throw SchemaError("theme", "empty", "");
  if (short_form.empty()) throw SchemaError("theme_short", "empty", "");
  t.theme_short = text::truncate_words(short_form, kThemeShortMaxWords, &t.truncated);
  return t;
}

void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

EventRefiner::EventRefiner(const PromptRunner& runner, std::size_t min_cluster_size)
    : runner_(runner), min_cluster_size_(std::max<std::size_t>(min_cluster_size, 1)) {}

const ClusterArticle& EventRefiner::lookup(const ClusterArticleIndex& articles, const std::string& id) const {
  auto it = articles.find(id);
  if (it == articles.end()) throw NotFound(fmt::format("clustered article '{}' has no metadata", id));
  return it->second;
}

std::vector<DraftEvent> EventRefiner::title_events(const std::vector<std::vector<std::string>>& clusters,
                                                   const ClusterArticleIndex& articles) const {
  std::vector<DraftEvent> out;
  for (const std::vector<std::string>& cluster : clusters) {
    if (cluster.empty()) throw InvalidArgument("cannot title an empty cluster");
    DraftEvent event;
    event.members = cluster;
    sort_unique(event.members);
    event.initial = event.members;
    std::vector<std::string> titles;
    for (const std::string& id : event.members) titles.push_back(lookup(articles, id).title);
    Theme theme = runner_.ask<Theme>(PromptName::kEventTitle, {{"article_titles", numbered_list(titles)}},
                                     event.members.front(), parse_theme);
    event.theme = std::move(theme.theme);
    event.theme_short = std::move(theme.theme_short);
    event.theme_short_truncated = theme.truncated;
    out.push_back(std::move(event));
  }
  return out;
}

void EventRefiner::recall_pass(std::vector<DraftEvent>& events, std::vector<std::string>& singletons,
                               const ClusterArticleIndex& articles, std::vector<std::string>& warnings) const {
  std::vector<std::size_t> live;
  std::vector<std::string> themes;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].dissolved) continue;
    live.push_back(i);
    themes.push_back(events[i].theme);
  }
  if (live.empty()) return;
  sort_unique(singletons);
  std::string theme_list = numbered_list(themes);
  std::vector<std::string> remaining;
  for (const std::string& id : singletons) {
    const ClusterArticle& article = lookup(articles, id);
    std::string prompt = render_prompt(prompt_template(PromptName::kClusterRecall),
                                       {{"title", article.title}, {"takeaways", article.summary}, {"themes", theme_list}});
    std::string raw = runner_.call(PromptName::kClusterRecall, prompt);
    long long choice = -1;
    try {
      choice = parse_integer_response(raw);
    } catch (const ResponseError&) {
      warnings.push_back(fmt::format("recall: non-integer response for {} treated as -1", id));
    }
    if (choice != -1 && (choice < 1 || choice > static_cast<long long>(live.size()))) {
      warnings.push_back(fmt::format("recall: theme {} out of range for {}", choice, id));
      choice = -1;
    }
    if (choice == -1) {
      remaining.push_back(id);
      continue;
    }
    DraftEvent& event = events[live[static_cast<std::size_t>(choice - 1)]];
    event.added.push_back(id);
  }
  // Additions apply after every singleton has seen the same theme list.
  for (std::size_t i : live) {
    DraftEvent& event = events[i];
    sort_unique(event.added);
    event.members.insert(event.members.end(), event.added.begin(), event.added.end());
    sort_unique(event.members);
  }
  singletons = std::move(remaining);
}

void EventRefiner::precision_pass(std::vector<DraftEvent>& events, std::vector<std::string>& singletons,
                                  const ClusterArticleIndex& articles, std::vector<std::string>& warnings) const {
  for (DraftEvent& event : events) {
    if (event.dissolved) continue;
    std::vector<std::string> titles;
    for (const std::string& id : event.members) titles.push_back(lookup(articles, id).title);
    std::string prompt = render_prompt(prompt_template(PromptName::kClusterPrecision),
                                       {{"theme", event.theme}, {"titles", numbered_list(titles)}});
    std::string raw = runner_.call(PromptName::kClusterPrecision, prompt);
    std::vector<long long> flagged;
    try {
      flagged = parse_integer_list(raw);
    } catch (const ResponseError&) {
      warnings.push_back(fmt::format("precision: unparseable response for '{}' ignored", event.theme));
    }
    std::set<std::size_t> drop;
    for (long long k : flagged) {
      if (k == -1) continue;
      if (k < 1 || k > static_cast<long long>(event.members.size())) {
        warnings.push_back(fmt::format("precision: index {} out of range for '{}'", k, event.theme));
        continue;
      }
      drop.insert(static_cast<std::size_t>(k - 1));
    }
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < event.members.size(); ++i) {
      if (drop.count(i)) {
        event.removed.push_back(event.members[i]);
      } else {
        kept.push_back(event.members[i]);
      }
    }
    if (kept.size() < min_cluster_size_) {
      event.removed.insert(event.removed.end(), kept.begin(), kept.end());
      kept.clear();
      event.dissolved = true;
    }
    sort_unique(event.removed);
    event.members = std::move(kept);
    singletons.insert(singletons.end(), event.removed.begin(), event.removed.end());
  }
  sort_unique(singletons);
}

std::string make_event_id(CivilDate day, const std::vector<std::string>& members) {
  std::vector<std::string> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  return short_digest("event\n" + format_date(day) + "\n" + text::join(sorted, "\n"));
}

DayClustering cluster_day(CivilDate day, const std::vector<DayArticle>& articles, EmbeddingProvider& embedder,
                          const PromptRunner& runner, const DayClusteringOptions& options) {
  options.config.check();
  DayClustering out;
  ClusterArticleIndex index;
  std::vector<EmbeddingInput> inputs;
  for (const DayArticle& a : articles) {
    const Article& art = a.article;
    if (index.count(art.article_id)) throw InvalidArgument(fmt::format("duplicate article '{}'", art.article_id));
    std::string summary;
    if (a.labels && !a.labels->takeaways.empty()) {
      summary = a.labels->takeaways;
    } else {
      std::vector<std::string> lead = split_sentences(art.body);
      if (lead.size() > kLeadSentences) lead.resize(kLeadSentences);
      summary = text::join(lead, " ");
    }
    index[art.article_id] = {art.article_id, art.title, summary};
    inputs.push_back({art.article_id, options.embed_title ? art.title + "\n\n" + art.body : art.body});
  }
  if (inputs.empty()) return out;

  EmbedResult embedded = embed(inputs, embedder, options.embed);
  out.truncated_embeddings = embedded.truncated_ids;
  Partition partition = threshold_components(build_similarity_graph(embedded.vectors),
                                             options.config.article_threshold, options.config.min_cluster_size);

  EventRefiner refiner(runner, options.config.min_cluster_size);
  std::vector<DraftEvent> drafts = refiner.title_events(partition.clusters, index);
  std::vector<std::string> singletons = partition.singletons;
  refiner.recall_pass(drafts, singletons, index, out.warnings);
  refiner.precision_pass(drafts, singletons, index, out.warnings);

  std::set<std::string> seen;
  for (const DraftEvent& d : drafts) {
    if (d.dissolved) continue;
    EventCluster event;
    event.day = day;
    event.theme = d.theme;
    event.theme_short = d.theme_short;
    event.theme_short_truncated = d.theme_short_truncated;
    for (const std::string& id : d.members) {
      if (!seen.insert(id).second) throw Error(fmt::format("article '{}' assigned to two events", id));
      event.member_article_ids.insert(id);
    }
    event.event_id = make_event_id(day, d.members);
    out.events.push_back(std::move(event));
  }
  std::sort(out.events.begin(), out.events.end(), [](const EventCluster& a, const EventCluster& b) {
    if (a.member_article_ids.size() != b.member_article_ids.size()) {
      return a.member_article_ids.size() > b.member_article_ids.size();
    }
    return a.event_id < b.event_id;
  });
  out.trace = std::move(drafts);
  out.unclustered = std::move(singletons);

  std::vector<SentenceRecord> sentences;
  for (const DayArticle& a : articles) sentences.insert(sentences.end(), a.sentences.begin(), a.sentences.end());
  for (const EventCluster& event : out.events) {
    std::vector<FactCluster> facts = cluster_facts(event, sentences, embedder, runner, options.config, options.embed);
    out.facts.insert(out.facts.end(), facts.begin(), facts.end());
  }
  return out;
}

}  // namespace biaslens

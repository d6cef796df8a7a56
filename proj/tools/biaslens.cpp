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

// biaslens command-line interface.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "biaslens/analytics/reports.hpp"
#include "biaslens/store/config.hpp"
#include "biaslens/store/queries.hpp"
#include "biaslens/store/service.hpp"
#include "biaslens/store/validation_store.hpp"
#include "biaslens/util/files.hpp"
#include "biaslens/util/strings.hpp"

namespace fs = std::filesystem;
using namespace biaslens;

namespace {

struct Globals {
  fs::path config;
  fs::path store;
  std::string provider;  // overrides provider.mode when set
};

struct Session {
  AppConfig config;
  Providers providers;
  PipelineDeps deps;
  Store store;
};

fs::path default_config() {
  if (const char* env = std::getenv("BIASLENS_CONFIG"); env && *env) return env;
  return "data/config.json";
}

AppConfig load_config(const Globals& g) {
  AppConfig config = AppConfig::load(g.config.empty() ? default_config() : g.config);
  if (!g.store.empty()) config.store = g.store;
  if (!g.provider.empty()) config.provider.mode = parse_provider_mode(g.provider);
  return config;
}

Store open_store(const AppConfig& config, Clock clock) {
  if (config.store.has_parent_path()) fs::create_directories(config.store.parent_path());
  return Store::open(config.store, std::move(clock));
}

Session open_session(const Globals& g) {
  AppConfig config = load_config(g);
  Providers providers = make_providers(config.provider, config.snapshot);
  PipelineDeps deps = make_pipeline_deps(config, providers);
  Store store = open_store(config, providers.clock);
  return Session{std::move(config), std::move(providers), std::move(deps), std::move(store)};
}

void print(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

CivilDate date_or_today(const std::string& s, const AppConfig& config) {
  if (!s.empty()) return parse_date(s);
  return TimeZone(config.snapshot.timezone_rule).local_date(config.clock()());
}

std::vector<StageName> parse_stages(const std::vector<std::string>& names) {
  std::vector<StageName> out;
  for (const std::string& n : names) {
    if (n == "ingest") out.push_back(StageName::kIngest);
    else if (n == "label") out.push_back(StageName::kLabel);
    else if (n == "cluster") out.push_back(StageName::kCluster);
    else throw InvalidArgument(fmt::format("unknown stage '{}'", n));
  }
  return out;
}

int report_exit(const DayReport& report) {
  print(to_document(report));
  return report.ok() ? 0 : 1;
}

RunDayOptions progress_options() {
  RunDayOptions o;
  o.progress = [](const std::string& msg) { std::cerr << msg << "\n"; };
  return o;
}

void write_or_print(const fs::path& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file_atomic(out, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tracks selection and framing across news publisher homepages."};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "config file (default $BIASLENS_CONFIG or data/config.json)");
  app.add_option("--store", g.store, "store path, overriding the config");

  std::function<int()> action;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "capture homepages and fetch articles");
  ingest->require_subcommand(1);
  std::string publisher, at, date, fixture_dir;
  auto* ingest_snapshot = ingest->add_subcommand("snapshot", "capture one homepage snapshot");
  ingest_snapshot->add_option("--publisher", publisher)->required();
  ingest_snapshot->add_option("--at", at, "local schedule time HH:MM")->required();
  ingest_snapshot->add_option("--date", date, "local date (default today)");
  ingest_snapshot->add_option("--fixture", fixture_dir, "read the capture from a snapshot fixture directory");
  ingest_snapshot->callback([&] {
    action = [&] {
      Session s = open_session(g);
      if (!fixture_dir.empty()) {
        s.providers.snapshots = std::make_unique<FixtureSnapshotSource>(fixture_dir, s.config.snapshot.timezone_rule);
        s.deps.snapshots = s.providers.snapshots.get();
      }
      CivilDate day = date_or_today(date, s.config);
      int minutes = parse_clock_time(at);
      SnapshotJob job{publisher, day, minutes, TimeZone(s.config.snapshot.timezone_rule).to_utc(day, minutes)};
      HomepageSnapshot snap = capture_snapshot(s.store, s.deps, job);
      print(Json{{"publisher_id", publisher}, {"captured_at", format_timestamp(job.due_utc)}, {"items", snap.items.size()}});
      return 0;
    };
  });
  auto* ingest_day = ingest->add_subcommand("day", "capture every scheduled snapshot of a day and fetch articles");
  ingest_day->add_option("--date", date)->required();
  ingest_day->add_option("--publisher", publisher);
  ingest_day->callback([&] {
    action = [&] {
      Session s = open_session(g);
      RunDayOptions o = progress_options();
      o.stages = {StageName::kIngest};
      if (!publisher.empty()) o.publisher = publisher;
      return report_exit(run_day(s.store, s.deps, parse_date(date), o));
    };
  });

  // label
  auto* label = app.add_subcommand("label", "label articles through the LLM provider");
  label->require_subcommand(1);
  bool relabel = false;
  auto* label_run = label->add_subcommand("run", "label a day's articles");
  label_run->add_option("--date", date)->required();
  label_run->add_option("--publisher", publisher);
  label_run->add_option("--provider", g.provider)->check(CLI::IsMember({"fixture", "live"}));
  label_run->add_flag("--relabel", relabel, "label again even when labels exist");
  label_run->callback([&] {
    action = [&] {
      Session s = open_session(g);
      RunDayOptions o = progress_options();
      o.stages = {StageName::kLabel};
      o.relabel = relabel;
      if (!publisher.empty()) o.publisher = publisher;
      return report_exit(run_day(s.store, s.deps, parse_date(date), o));
    };
  });
  auto* label_retry = label->add_subcommand("retry-deadletter", "re-label every article with an open dead letter");
  label_retry->add_option("--provider", g.provider)->check(CLI::IsMember({"fixture", "live"}));
  label_retry->callback([&] {
    action = [&] {
      Session s = open_session(g);
      StageReport r = retry_dead_letters(s.store, s.deps);
      print(Json{{"status", to_string(r.status)},
                 {"items_in", r.counters.items_in},
                 {"items_out", r.counters.items_out},
                 {"dead_lettered", r.counters.dead_lettered},
                 {"error", r.error}});
      return r.status == RunStatus::kFailed ? 1 : 0;
    };
  });

  // cluster
  auto* cluster = app.add_subcommand("cluster", "group a day's articles into events and facts");
  cluster->require_subcommand(1);
  std::optional<double> article_threshold, fact_threshold;
  auto* cluster_day_cmd = cluster->add_subcommand("day", "cluster one day");
  cluster_day_cmd->add_option("--date", date)->required();
  cluster_day_cmd->add_option("--article-threshold", article_threshold);
  cluster_day_cmd->add_option("--fact-threshold", fact_threshold);
  cluster_day_cmd->callback([&] {
    action = [&] {
      Session s = open_session(g);
      if (article_threshold) s.deps.clustering.article_threshold = *article_threshold;
      if (fact_threshold) s.deps.clustering.fact_threshold = *fact_threshold;
      s.deps.clustering.check();
      RunDayOptions o = progress_options();
      o.stages = {StageName::kCluster};
      return report_exit(run_day(s.store, s.deps, parse_date(date), o));
    };
  });

  // analyze
  fs::path query_path, csv_out, svg_out, out_path;
  auto* analyze = app.add_subcommand("analyze", "aggregate labeled articles");
  analyze->add_option("--query", query_path, "query document")->required()->check(CLI::ExistingFile);
  analyze->add_option("--csv", csv_out, "also write the table as CSV");
  analyze->add_option("--svg", svg_out, "also write a chart as SVG");
  analyze->callback([&] {
    action = [&] {
      AppConfig config = load_config(g);
      Store store = open_store(config, config.clock());
      TopicHierarchy hierarchy = TopicHierarchy::load_csv(config.hierarchy);
      Json doc = Json::parse(read_file(query_path));
      std::string report = doc.value("report", "aggregate");
      doc.erase("report");
      AggregateQuery query = report == "aggregate" ? aggregate_query_from_json(doc) : filter_from_json(doc);
      Corpus corpus = load_corpus(store, hierarchy, query.from, query.to);
      if (report == "aggregate") {
        AggregateTable table = aggregate(query, corpus);
        std::cout << format_table(table);
        if (!csv_out.empty()) write_file_atomic(csv_out, to_csv(table));
        if (!svg_out.empty()) write_file_atomic(svg_out, render_bar_svg(table, doc.value("title", "")));
      } else if (report == "headline_delta") {
        HeadlineDeltaReport delta = headline_delta(query, corpus);
        std::cout << fmt::format("{:<32} {:>6} {:>8} {:>8} {:>8} {:>8}\n", "category", "n", "lean", "h_lean", "tone",
                                 "h_tone");
        auto row = [](const DeltaPoint& p) {
          std::cout << fmt::format("{:<32} {:>6} {:>8.3f} {:>8.3f} {:>8.3f} {:>8.3f}\n", p.category, p.n,
                                   p.article_lean, p.headline_lean, p.article_tone, p.headline_tone);
        };
        for (const DeltaPoint& p : delta.categories) row(p);
        row(delta.overall);
        if (!svg_out.empty()) write_file_atomic(svg_out, render_delta_svg(delta, doc.value("tone", false)));
      } else if (report == "horserace") {
        HorseraceConfig hc = HorseraceConfig::from_json(Json::parse(read_file(config.analytics)));
        std::cout << format_table(horserace_vs_policy(query, corpus, hc, hierarchy));
      } else {
        throw InvalidArgument(fmt::format("unknown report '{}'", report));
      }
      return 0;
    };
  });

  // validate
  auto* validate = app.add_subcommand("validate", "human validation tasks and reports");
  validate->require_subcommand(1);
  std::uint64_t seed = 0;
  int rounds = 0;
  std::vector<std::string> kinds;
  std::string kind;
  auto* validate_sample = validate->add_subcommand("sample", "draw a stratified batch of validation tasks");
  validate_sample->add_option("--seed", seed)->required();
  validate_sample->add_option("--rounds", rounds, "annotators per item (default from config)");
  validate_sample->add_option("--kinds", kinds, "task kinds (default all article kinds)")->delimiter(',');
  validate_sample->add_option("--from", date, "first date of the sampled range");
  validate_sample->callback([&] {
    action = [&] {
      AppConfig config = load_config(g);
      Store store = open_store(config, config.clock());
      TopicHierarchy hierarchy = TopicHierarchy::load_csv(config.hierarchy);
      std::vector<TaskKind> task_kinds;
      for (const std::string& k : kinds) task_kinds.push_back(parse_task_kind(k));
      if (task_kinds.empty()) task_kinds = article_task_kinds();
      std::optional<CivilDate> from;
      if (!date.empty()) from = parse_date(date);
      Corpus corpus = load_corpus(store, hierarchy, from);
      TaskBatch batch = sample_validation_batch(store, corpus, config.stratification, seed, task_kinds,
                                                rounds > 0 ? rounds : config.annotators_per_item);
      print(Json{{"batch_id", batch.batch_id}, {"articles", batch.sample.items.size()}, {"underfilled_cells", batch.sample.underfilled.size()}, {"tasks", batch.tasks.size()}});
      return 0;
    };
  });
  auto* validate_events = validate->add_subcommand("events", "create event-membership tasks for a day");
  validate_events->add_option("--date", date)->required();
  validate_events->add_option("--rounds", rounds);
  validate_events->callback([&] {
    action = [&] {
      AppConfig config = load_config(g);
      Store store = open_store(config, config.clock());
      TopicHierarchy hierarchy = TopicHierarchy::load_csv(config.hierarchy);
      CivilDate day = parse_date(date);
      Corpus corpus = load_corpus(store, hierarchy, day, day);
      TaskBatch batch = event_membership_tasks(store, corpus, day, rounds > 0 ? rounds : config.annotators_per_item);
      print(Json{{"batch_id", batch.batch_id}, {"tasks", batch.tasks.size()}});
      return 0;
    };
  });
  auto* validate_report = validate->add_subcommand("report", "agreement, confusion and cluster precision/recall");
  validate_report->add_option("--kind", kind, "one task kind (default all)");
  validate_report->add_option("--date", date, "also report event cluster precision/recall for this day");
  validate_report->callback([&] {
    action = [&] {
      AppConfig config = load_config(g);
      Store store = open_store(config, config.clock());
      TopicHierarchy hierarchy = TopicHierarchy::load_csv(config.hierarchy);
      std::vector<TaskKind> task_kinds = article_task_kinds();
      task_kinds.push_back(TaskKind::kEventMembership);
      if (!kind.empty()) task_kinds = {parse_task_kind(kind)};
      Json out = Json::object();
      Json agreement = Json::array();
      Json confusion = Json::array();
      for (TaskKind k : task_kinds) {
        if (auto a = agreement_from_store(store, k)) agreement.push_back(to_document(*a));
        if (k == TaskKind::kEventMembership || k == TaskKind::kSentence) continue;
        if (auto c = confusion_from_store(store, k, hierarchy)) {
          Json doc = to_document(*c);
          doc["kind"] = to_string(k);
          confusion.push_back(std::move(doc));
        }
      }
      out["agreement"] = std::move(agreement);
      out["confusion"] = std::move(confusion);
      if (!date.empty()) out["cluster_prf"] = to_document(cluster_prf_from_store(store, parse_date(date)));
      print(out);
      return 0;
    };
  });

  // serve
  int port = 8080;
  std::string host = "127.0.0.1";
  fs::path static_dir;
  auto* serve = app.add_subcommand("serve", "serve the JSON API and an optional UI bundle");
  serve->add_option("--port", port);
  serve->add_option("--host", host);
  serve->add_option("--static", static_dir, "directory served at non-API paths");
  serve->callback([&] {
    action = [&] {
      AppConfig config = load_config(g);
      Store store = open_store(config, system_clock());
      ServiceOptions options;
      if (const char* token = std::getenv(config.api_token_env.c_str()); token && *token) options.api_token = token;
      options.static_dir = static_dir;
      options.claim_lease = config.claim_lease;
      ApiService service(store, TopicHierarchy::load_csv(config.hierarchy), options);
      std::cerr << fmt::format("listening on http://{}:{}\n", host, port);
      serve_http(service, host, port);
      return 0;
    };
  });

  // run
  auto* run = app.add_subcommand("run", "run pipeline stages");
  run->require_subcommand(1);
  std::vector<std::string> stages;
  auto* run_day_cmd = run->add_subcommand("day", "ingest, label and cluster one day");
  run_day_cmd->add_option("--date", date)->required();
  run_day_cmd->add_option("--provider", g.provider)->check(CLI::IsMember({"fixture", "live"}));
  run_day_cmd->add_flag("--relabel", relabel, "label again even when labels exist");
  run_day_cmd->add_option("--stages", stages, "subset of ingest,label,cluster")->delimiter(',');
  run_day_cmd->callback([&] {
    action = [&] {
      Session s = open_session(g);
      RunDayOptions o = progress_options();
      o.relabel = relabel;
      if (!stages.empty()) o.stages = parse_stages(stages);
      return report_exit(run_day(s.store, s.deps, parse_date(date), o));
    };
  });

  // export
  std::string format = "ndjson";
  auto* export_cmd = app.add_subcommand("export", "export records matching a query");
  export_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "ndjson"}));
  export_cmd->add_option("--query", query_path, "filter document")->check(CLI::ExistingFile);
  export_cmd->add_option("--out", out_path, "output file (default stdout)");
  export_cmd->callback([&] {
    action = [&] {
      AppConfig config = load_config(g);
      Store store = open_store(config, config.clock());
      TopicHierarchy hierarchy = TopicHierarchy::load_csv(config.hierarchy);
      Json doc = query_path.empty() ? Json::object() : Json::parse(read_file(query_path));
      AggregateQuery filter = filter_from_json(doc);
      Corpus corpus = load_corpus(store, hierarchy, filter.from, filter.to);
      write_or_print(out_path, export_records(store, corpus, filter, parse_export_format(format)));
      return 0;
    };
  });

  // import
  auto* import = app.add_subcommand("import", "load articles or a published event table");
  import->require_subcommand(1);
  fs::path input;
  auto* import_articles_cmd = import->add_subcommand("articles", "article documents, one per line");
  import_articles_cmd->add_option("file", input)->required()->check(CLI::ExistingFile);
  import_articles_cmd->callback([&] {
    action = [&] {
      AppConfig config = load_config(g);
      Store store = open_store(config, config.clock());
      print(Json{{"imported", import_articles(store, read_file(input))}});
      return 0;
    };
  });
  auto* import_events_cmd = import->add_subcommand("events", "per-day event table {date, total_articles, events}");
  import_events_cmd->add_option("file", input)->required()->check(CLI::ExistingFile);
  import_events_cmd->callback([&] {
    action = [&] {
      AppConfig config = load_config(g);
      Store store = open_store(config, config.clock());
      print(Json{{"events", import_event_table(store, Json::parse(read_file(input)))}});
      return 0;
    };
  });

  CLI11_PARSE(app, argc, argv);
  if (!action) return 2;
  try {
    return action();
  } catch (const SchemaError& e) {
    std::cerr << "biaslens: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    std::cerr << "biaslens: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "biaslens: " << e.what() << "\n";
    return 1;
  }
}

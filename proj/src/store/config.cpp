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

#include "biaslens/store/config.hpp"

#include <fmt/format.h>

#include <mutex>

#include "biaslens/util/files.hpp"

namespace biaslens {
namespace {

std::filesystem::path resolve(const std::filesystem::path& base, const Json& doc, const char* key,
                              bool required = true) {
  auto it = doc.find(key);
  if (it == doc.end() || it->is_null()) {
    if (required) throw SchemaError(key, "missing");
    return {};
  }
  std::filesystem::path p = it->get<std::string>();
  return p.is_absolute() ? p : (base / p).lexically_normal();
}

double number_or(const Json& doc, const char* key, double fallback) {
  auto it = doc.find(key);
  if (it == doc.end()) return fallback;
  if (!it->is_number()) throw SchemaError(key, "wrong-type");
  return it->get<double>();
}

// Live clients read credentials when first used, so commands that never call
// a model run without them.
class LazyLlm : public LlmProvider {
 public:
  explicit LazyLlm(HttpProviderConfig config) : config_(std::move(config)) {}
  std::string complete(const LlmRequest& request) override { return get().complete(request); }
  std::size_t max_input_tokens() const override { return config_.max_input_tokens; }

 private:
  LlmProvider& get() {
    std::call_once(once_, [&] { inner_ = std::make_unique<HttpLlmProvider>(config_); });
    if (!inner_) throw InvalidArgument("live LLM provider failed to initialize");
    return *inner_;
  }
  HttpProviderConfig config_;
  std::once_flag once_;
  std::unique_ptr<LlmProvider> inner_;
};

class LazyEmbedding : public EmbeddingProvider {
 public:
  explicit LazyEmbedding(HttpEmbeddingConfig config) : config_(std::move(config)) {}
  std::vector<std::vector<double>> embed_batch(const std::vector<EmbeddingInput>& inputs) override {
    std::call_once(once_, [&] { inner_ = std::make_unique<HttpEmbeddingProvider>(config_); });
    if (!inner_) throw InvalidArgument("live embedding provider failed to initialize");
    return inner_->embed_batch(inputs);
  }

 private:
  HttpEmbeddingConfig config_;
  std::once_flag once_;
  std::unique_ptr<EmbeddingProvider> inner_;
};

}  // namespace

ProviderMode parse_provider_mode(std::string_view s) {
  if (s == "fixture") return ProviderMode::kFixture;
  if (s == "live") return ProviderMode::kLive;
  throw InvalidArgument(fmt::format("unknown provider mode '{}'", s));
}

std::string_view to_string(ProviderMode mode) { return mode == ProviderMode::kFixture ? "fixture" : "live"; }

AppConfig AppConfig::from_json(const Json& doc, const std::filesystem::path& base) {
  if (!doc.is_object()) throw SchemaError("config", "wrong-type");
  AppConfig c;
  c.publishers = resolve(base, doc, "publishers");
  c.hierarchy = resolve(base, doc, "hierarchy");
  c.cleaning_dictionary = resolve(base, doc, "cleaning_dictionary");
  c.analytics = resolve(base, doc, "analytics");
  c.store = resolve(base, doc, "store");
  if (doc.contains("snapshot")) c.snapshot = snapshot_spec_from_json(doc["snapshot"]);
  if (auto it = doc.find("clustering"); it != doc.end()) {
    c.clustering.article_threshold = number_or(*it, "article_threshold", c.clustering.article_threshold);
    c.clustering.fact_threshold = number_or(*it, "fact_threshold", c.clustering.fact_threshold);
    c.clustering.min_cluster_size =
        static_cast<std::size_t>(number_or(*it, "min_cluster_size", static_cast<double>(c.clustering.min_cluster_size)));
    c.clustering.check();
  }
  if (doc.contains("stratification")) c.stratification = stratification_spec_from_json(doc["stratification"]);
  if (auto it = doc.find("validation"); it != doc.end()) {
    c.annotators_per_item = static_cast<int>(number_or(*it, "annotators_per_item", c.annotators_per_item));
    c.claim_lease = std::chrono::minutes(static_cast<long>(number_or(*it, "claim_lease_minutes", 30)));
    if (c.annotators_per_item < 1) throw SchemaError("annotators_per_item", "out-of-range");
  }
  c.api_token_env = doc.value("api_token_env", c.api_token_env);

  const Json p = doc.value("provider", Json::object());
  ProviderSettings& s = c.provider;
  s.mode = parse_provider_mode(p.value("mode", "fixture"));
  s.llm_fixtures = resolve(base, p, "llm_fixtures", false);
  s.embedding_fixtures = resolve(base, p, "embedding_fixtures", false);
  s.snapshot_dir = resolve(base, p, "snapshot_dir", false);
  s.pages_dir = resolve(base, p, "pages_dir", false);
  s.record_llm_to = resolve(base, p, "record_llm_to", false);
  if (auto it = p.find("fixed_time"); it != p.end() && !it->is_null()) s.fixed_time = parse_timestamp(it->get<std::string>());
  if (auto it = p.find("llm"); it != p.end()) {
    s.llm.base_url = it->value("base_url", s.llm.base_url);
    s.llm.api_key_env = it->value("api_key_env", s.llm.api_key_env);
    s.llm.timeout = std::chrono::seconds(static_cast<long>(number_or(*it, "timeout_seconds", 120)));
    s.llm.max_input_tokens = static_cast<std::size_t>(number_or(*it, "max_input_tokens", 120000));
  }
  if (auto it = p.find("embedding"); it != p.end()) {
    s.embedding.base_url = it->value("base_url", s.embedding.base_url);
    s.embedding.api_key_env = it->value("api_key_env", s.embedding.api_key_env);
    s.embedding.model = it->value("model", s.embedding.model);
    s.embedding.dim = static_cast<std::size_t>(number_or(*it, "dim", static_cast<double>(s.embedding.dim)));
  }
  s.requests_per_second = number_or(p, "requests_per_second", s.requests_per_second);
  if (s.requests_per_second <= 0) throw SchemaError("requests_per_second", "out-of-range");
  s.snapshot_command = p.value("snapshot_command", "");
  if (auto it = p.find("models"); it != p.end()) {
    for (const auto& [name, model] : it->items()) {
      try {
        s.runner.model_ids[parse_prompt_name(name)] = model.get<std::string>();
      } catch (const InvalidArgument& e) {
        throw SchemaError("models", "unknown-value", e.what());
      }
    }
  }
  s.runner.provider_attempts = static_cast<int>(number_or(p, "attempts", s.runner.provider_attempts));
  s.runner.retry_backoff = std::chrono::milliseconds(static_cast<long>(number_or(p, "retry_backoff_ms", 500)));
  return c;
}

AppConfig AppConfig::load(const std::filesystem::path& path) {
  Json doc;
  try {
    doc = Json::parse(read_file(path));
  } catch (const Json::exception& e) {
    throw SchemaError("config", "malformed", fmt::format("{}: {}", path.string(), e.what()));
  }
  return from_json(doc, path.parent_path());
}

Clock AppConfig::clock() const {
  if (provider.mode == ProviderMode::kFixture && provider.fixed_time) return fixed_clock(*provider.fixed_time);
  return system_clock();
}

LlmProvider& Providers::llm() const {
  if (llm_limited) return *llm_limited;
  if (llm_recorder) return *llm_recorder;
  return *llm_base;
}

Providers make_providers(const ProviderSettings& s, const SnapshotSpec& snapshot) {
  Providers p;
  if (s.mode == ProviderMode::kFixture) {
    auto need = [](const std::filesystem::path& path, const char* what) {
      if (path.empty() || !std::filesystem::exists(path)) {
        throw NotFound(fmt::format("fixture mode needs {} (missing: '{}')", what, path.string()));
      }
    };
    need(s.llm_fixtures, "provider.llm_fixtures");
    need(s.embedding_fixtures, "provider.embedding_fixtures");
    p.llm_base = std::make_unique<FixtureLlmProvider>(FixtureLlmProvider::load(s.llm_fixtures));
    p.embedder = std::make_unique<FixtureEmbeddingProvider>(FixtureEmbeddingProvider::load(s.embedding_fixtures));
    if (!s.snapshot_dir.empty()) p.snapshots = std::make_unique<FixtureSnapshotSource>(s.snapshot_dir, snapshot.timezone_rule);
    if (!s.pages_dir.empty()) p.pages = std::make_unique<FixturePageSource>(s.pages_dir);
    p.clock = s.fixed_time ? fixed_clock(*s.fixed_time) : system_clock();
    return p;
  }
  p.llm_base = std::make_unique<LazyLlm>(s.llm);
  if (!s.record_llm_to.empty()) p.llm_recorder = std::make_unique<RecordingLlmProvider>(*p.llm_base, s.record_llm_to);
  LlmProvider& inner = p.llm_recorder ? *p.llm_recorder : *p.llm_base;
  p.llm_limited = std::make_unique<RateLimitedProvider>(inner, s.requests_per_second);
  p.embedder = std::make_unique<LazyEmbedding>(s.embedding);
  if (!s.snapshot_command.empty()) p.snapshots = std::make_unique<CommandSnapshotSource>(s.snapshot_command);
  p.pages = std::make_unique<HttpPageSource>();
  p.clock = system_clock();
  return p;
}

PipelineDeps make_pipeline_deps(const AppConfig& config, const Providers& providers) {
  return PipelineDeps{.publishers = PublisherRegistry::load(config.publishers),
                      .snapshot = config.snapshot,
                      .hierarchy = TopicHierarchy::load_csv(config.hierarchy),
                      .cleaning = CleaningDictionary::load(config.cleaning_dictionary),
                      .clustering = config.clustering,
                      .labeler = LabelerConfig{.runner = config.provider.runner},
                      .snapshots = providers.snapshots.get(),
                      .pages = providers.pages.get(),
                      .llm = &providers.llm(),
                      .embedder = providers.embedder.get(),
                      .clock = providers.clock};
}

}  // namespace biaslens

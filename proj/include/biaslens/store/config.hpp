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

#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "biaslens/cluster/embedding.hpp"
#include "biaslens/cluster/graph.hpp"
#include "biaslens/core/registry.hpp"
#include "biaslens/ingest/fetch.hpp"
#include "biaslens/ingest/snapshot_source.hpp"
#include "biaslens/label/provider.hpp"
#include "biaslens/label/runner.hpp"
#include "biaslens/store/pipeline.hpp"
#include "biaslens/validation/sampler.hpp"

namespace biaslens {

enum class ProviderMode { kFixture, kLive };
ProviderMode parse_provider_mode(std::string_view s);  // "fixture" | "live"
std::string_view to_string(ProviderMode mode);

struct ProviderSettings {
  ProviderMode mode = ProviderMode::kFixture;
  // Fixture mode inputs.
  std::filesystem::path llm_fixtures;        // NDJSON {digest, prompt, response}
  std::filesystem::path embedding_fixtures;  // NDJSON {id, values}
  std::filesystem::path snapshot_dir;        // <dir>/snapshots/<publisher>/<date>_<HHMM>.ndjson
  std::filesystem::path pages_dir;           // <dir>/index.json
  std::optional<Timestamp> fixed_time;       // clock for fixture runs
  // Live mode.
  HttpProviderConfig llm;
  HttpEmbeddingConfig embedding;
  double requests_per_second = 5.0;
  std::string snapshot_command;
  std::filesystem::path record_llm_to;  // optional NDJSON recording of live exchanges
  RunnerConfig runner;
};

// Relative paths in the file resolve against the file's directory.
struct AppConfig {
  std::filesystem::path publishers;
  std::filesystem::path hierarchy;
  std::filesystem::path cleaning_dictionary;
  std::filesystem::path analytics;
  std::filesystem::path store;
  SnapshotSpec snapshot;
  ClusterConfig clustering;
  StratificationSpec stratification;
  int annotators_per_item = 3;
  std::chrono::minutes claim_lease{30};
  ProviderSettings provider;
  std::string api_token_env = "BIASLENS_API_TOKEN";

  static AppConfig from_json(const Json& doc, const std::filesystem::path& base_dir);
  static AppConfig load(const std::filesystem::path& path);
  Clock clock() const;
};

// Concrete providers for one process, built from the config.
struct Providers {
  std::unique_ptr<LlmProvider> llm_base;
  std::unique_ptr<LlmProvider> llm_recorder;
  std::unique_ptr<LlmProvider> llm_limited;
  std::unique_ptr<EmbeddingProvider> embedder;
  std::unique_ptr<SnapshotSource> snapshots;
  std::unique_ptr<PageSource> pages;
  Clock clock;

  LlmProvider& llm() const;
};

// Fixture files are loaded eagerly; a missing file throws NotFound.
Providers make_providers(const ProviderSettings& settings, const SnapshotSpec& snapshot);

// Loads the data files named in the config and borrows the providers.
PipelineDeps make_pipeline_deps(const AppConfig& config, const Providers& providers);

}  // namespace biaslens

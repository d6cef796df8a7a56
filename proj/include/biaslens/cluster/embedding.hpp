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
#include <string>
#include <string_view>
#include <vector>

#include "biaslens/util/error.hpp"

namespace biaslens {

struct EmbeddingVector {
  std::string id;  // article id, or "<article id>#<sentence index>"
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
};

// Throws InvalidArgument on a dimension mismatch or a zero-norm operand.
// The result is clamped to [-1, 1].
double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b);

struct EmbeddingInput {
  std::string id;
  std::string text;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  // One vector per input, in input order. Throws ProviderError.
  virtual std::vector<std::vector<double>> embed_batch(const std::vector<EmbeddingInput>& inputs) = 0;
  virtual std::size_t max_input_tokens() const { return 8191; }
};

// Replays NDJSON rows {"id", "values"}. Lookup is by input id.
class FixtureEmbeddingProvider : public EmbeddingProvider {
 public:
  FixtureEmbeddingProvider() = default;
  static FixtureEmbeddingProvider load(const std::filesystem::path& path);
  static FixtureEmbeddingProvider parse(std::string_view ndjson);

  void add(std::string id, std::vector<double> values);
  std::size_t size() const { return vectors_.size(); }
  std::vector<std::vector<double>> embed_batch(const std::vector<EmbeddingInput>& inputs) override;

 private:
  std::map<std::string, std::vector<double>, std::less<>> vectors_;
};

// Signed feature hashing of lowercased word unigrams and bigrams, L2
// normalized. Offline and deterministic; no semantic generalization.
class HashingEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit HashingEmbeddingProvider(std::size_t dim = 512);
  std::vector<std::vector<double>> embed_batch(const std::vector<EmbeddingInput>& inputs) override;

 private:
  std::size_t dim_;
};

struct HttpEmbeddingConfig {
  std::string base_url = "https://api.openai.com";
  std::string api_key_env = "OPENAI_API_KEY";
  std::string model = "text-embedding-3-large";
  std::size_t dim = 3072;
  std::chrono::seconds timeout{120};
};

// OpenAI-compatible /v1/embeddings endpoint.
class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit HttpEmbeddingProvider(HttpEmbeddingConfig config);
  std::vector<std::vector<double>> embed_batch(const std::vector<EmbeddingInput>& inputs) override;

 private:
  HttpEmbeddingConfig config_;
  std::string api_key_;
};

struct EmbedOptions {
  std::size_t batch_size = 64;
  int attempts = 3;
  std::chrono::milliseconds retry_backoff{500};
};

struct EmbedResult {
  std::vector<EmbeddingVector> vectors;
  std::vector<std::string> truncated_ids;  // inputs cut at a sentence boundary
};

// Truncates over-long texts, batches, retries retryable failures, and checks
// that every vector is finite and all share one dimension.
EmbedResult embed(const std::vector<EmbeddingInput>& inputs, EmbeddingProvider& provider,
                  const EmbedOptions& options = {});

}  // namespace biaslens

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

#include "biaslens/cluster/embedding.hpp"

#include <fmt/format.h>
#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <json.hpp>
#include <thread>

#include "biaslens/label/provider.hpp"
#include "biaslens/label/sentences.hpp"
#include "biaslens/util/files.hpp"
#include "biaslens/util/strings.hpp"

namespace biaslens {

double cosine_similarity(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw InvalidArgument(fmt::format("dimension mismatch: {} has {}, {} has {}", a.id, a.dim(), b.id, b.dim()));
  }
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0) throw InvalidArgument(fmt::format("zero-norm embedding {}", a.id));
  if (nb == 0) throw InvalidArgument(fmt::format("zero-norm embedding {}", b.id));
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

FixtureEmbeddingProvider FixtureEmbeddingProvider::load(const std::filesystem::path& path) {
  return parse(read_file(path));
}

FixtureEmbeddingProvider FixtureEmbeddingProvider::parse(std::string_view ndjson) {
  FixtureEmbeddingProvider out;
  for (std::string_view line : ndjson_lines(ndjson)) {
    nlohmann::json row = nlohmann::json::parse(line);
    out.add(row.at("id").get<std::string>(), row.at("values").get<std::vector<double>>());
  }
  return out;
}

void FixtureEmbeddingProvider::add(std::string id, std::vector<double> values) {
  vectors_[std::move(id)] = std::move(values);
}

std::vector<std::vector<double>> FixtureEmbeddingProvider::embed_batch(const std::vector<EmbeddingInput>& inputs) {
  std::vector<std::vector<double>> out;
  out.reserve(inputs.size());
  for (const EmbeddingInput& in : inputs) {
    auto it = vectors_.find(in.id);
    if (it == vectors_.end()) throw NotFound(fmt::format("no fixture embedding for '{}'", in.id));
    out.push_back(it->second);
  }
  return out;
}

HashingEmbeddingProvider::HashingEmbeddingProvider(std::size_t dim) : dim_(dim) {
  if (dim_ < 2) throw InvalidArgument("hashing embedder needs dim >= 2");
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::vector<std::vector<double>> HashingEmbeddingProvider::embed_batch(const std::vector<EmbeddingInput>& inputs) {
  std::vector<std::vector<double>> out;
  for (const EmbeddingInput& in : inputs) {
    std::vector<double> v(dim_, 0.0);
    std::vector<std::string> tokens;
    for (const std::string& w : text::words(text::to_lower(in.text))) {
      std::string t;
      for (char c : w) {
        if (std::isalnum(static_cast<unsigned char>(c))) t += c;
      }
      if (!t.empty()) tokens.push_back(std::move(t));
    }
    auto bump = [&](const std::string& feature) {
      std::uint64_t h = fnv1a(feature);
      v[h % dim_] += (h >> 63) ? -1.0 : 1.0;
    };
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      bump(tokens[i]);
      if (i + 1 < tokens.size()) bump(tokens[i] + " " + tokens[i + 1]);
    }
    double norm = 0;
    for (double x : v) norm += x * x;
    if (norm == 0) {
      v[0] = 1.0;
    } else {
      for (double& x : v) x /= std::sqrt(norm);
    }
    out.push_back(std::move(v));
  }
  return out;
}

HttpEmbeddingProvider::HttpEmbeddingProvider(HttpEmbeddingConfig config) : config_(std::move(config)) {
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw InvalidArgument(fmt::format("environment variable {} is not set", config_.api_key_env));
  }
  api_key_ = key;
}

std::vector<std::vector<double>> HttpEmbeddingProvider::embed_batch(const std::vector<EmbeddingInput>& inputs) {
  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_bearer_token_auth(api_key_);
  nlohmann::json texts = nlohmann::json::array();
  for (const EmbeddingInput& in : inputs) texts.push_back(in.text);
  nlohmann::json body = {{"model", config_.model}, {"input", texts}, {"dimensions", config_.dim}};
  httplib::Result res = client.Post("/v1/embeddings", body.dump(), "application/json");
  if (!res) throw ProviderError(fmt::format("embedding provider unreachable: {}", httplib::to_string(res.error())), true);
  if (res->status == 429 || res->status >= 500) {
    throw ProviderError(fmt::format("embedding provider returned HTTP {}", res->status), true);
  }
  if (res->status != 200) {
    throw ProviderError(fmt::format("embedding provider returned HTTP {}: {}", res->status, res->body), false);
  }
  try {
    nlohmann::json doc = nlohmann::json::parse(res->body);
    std::vector<std::vector<double>> out(inputs.size());
    for (const nlohmann::json& item : doc.at("data")) {
      std::size_t index = item.at("index").get<std::size_t>();
      if (index >= out.size()) throw ProviderError("embedding index out of range", false);
      out[index] = item.at("embedding").get<std::vector<double>>();
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(fmt::format("malformed embedding envelope: {}", e.what()), true);
  }
}

EmbedResult embed(const std::vector<EmbeddingInput>& inputs, EmbeddingProvider& provider, const EmbedOptions& options) {
  if (options.batch_size == 0) throw InvalidArgument("batch_size must be positive");
  EmbedResult result;
  std::vector<EmbeddingInput> prepared;
  prepared.reserve(inputs.size());
  for (const EmbeddingInput& in : inputs) {
    bool cut = false;
    std::string text = truncate_to_tokens(in.text, provider.max_input_tokens(), &cut);
    if (cut) result.truncated_ids.push_back(in.id);
    prepared.push_back({in.id, std::move(text)});
  }
  for (std::size_t start = 0; start < prepared.size(); start += options.batch_size) {
    std::vector<EmbeddingInput> batch(prepared.begin() + static_cast<std::ptrdiff_t>(start),
                                      prepared.begin() + static_cast<std::ptrdiff_t>(
                                                             std::min(prepared.size(), start + options.batch_size)));
    std::vector<std::vector<double>> values;
    for (int attempt = 1;; ++attempt) {
      try {
        values = provider.embed_batch(batch);
        break;
      } catch (const ProviderError& e) {
        if (!e.retryable() || attempt >= options.attempts) throw;
        std::this_thread::sleep_for(options.retry_backoff * (1 << (attempt - 1)));
      }
    }
    if (values.size() != batch.size()) {
      throw Error(fmt::format("embedding provider returned {} vectors for {} inputs", values.size(), batch.size()));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      result.vectors.push_back({batch[i].id, std::move(values[i])});
    }
  }
  for (const EmbeddingVector& v : result.vectors) {
    if (v.dim() == 0) throw Error(fmt::format("empty embedding for {}", v.id));
    if (v.dim() != result.vectors.front().dim()) {
      throw Error(fmt::format("embedding {} has dim {}, expected {}", v.id, v.dim(), result.vectors.front().dim()));
    }
    for (double x : v.values) {
      if (!std::isfinite(x)) throw Error(fmt::format("non-finite embedding value for {}", v.id));
    }
  }
  return result;
}

}  // namespace biaslens

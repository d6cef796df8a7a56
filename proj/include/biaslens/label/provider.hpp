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
#include <mutex>
#include <string>
#include <string_view>

#include "biaslens/label/prompts.hpp"
#include "biaslens/util/error.hpp"

namespace biaslens {

struct LlmRequest {
  std::string model_id;
  PromptName prompt = PromptName::kTopic;
  std::string text;
};

class ProviderError : public Error {
 public:
  ProviderError(std::string message, bool retryable) : Error(std::move(message)), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

// Fixture mode has no canned response for a prompt. Fatal for the run.
class MissingFixtureError : public Error {
 public:
  MissingFixtureError(std::string digest, PromptName prompt);
  const std::string& digest() const { return digest_; }

 private:
  std::string digest_;
};

class LlmProvider {
 public:
  virtual ~LlmProvider() = default;
  // Text in, raw text out. Implementations must be safe to call concurrently.
  virtual std::string complete(const LlmRequest& request) = 0;
  virtual std::size_t max_input_tokens() const { return 120000; }
};

// Key for recorded responses.
std::string prompt_digest(std::string_view prompt_text);

// Replays NDJSON rows {"digest", "prompt", "response"}; digest is
// prompt_digest of the rendered prompt text.
class FixtureLlmProvider : public LlmProvider {
 public:
  FixtureLlmProvider() = default;
  static FixtureLlmProvider load(const std::filesystem::path& path);
  static FixtureLlmProvider parse(std::string_view ndjson);

  void add(std::string digest, std::string response);
  std::size_t size() const { return responses_.size(); }
  std::string complete(const LlmRequest& request) override;

 private:
  std::map<std::string, std::string, std::less<>> responses_;
};

// Forwards to `inner` and appends each exchange to an NDJSON fixture file.
class RecordingLlmProvider : public LlmProvider {
 public:
  RecordingLlmProvider(LlmProvider& inner, std::filesystem::path path);
  std::string complete(const LlmRequest& request) override;
  std::size_t max_input_tokens() const override { return inner_.max_input_tokens(); }

 private:
  LlmProvider& inner_;
  std::filesystem::path path_;
  std::mutex mu_;
};

struct HttpProviderConfig {
  std::string base_url = "https://api.openai.com";
  std::string api_key_env = "OPENAI_API_KEY";
  std::chrono::seconds timeout{120};
  double temperature = 0.0;
  std::size_t max_input_tokens = 120000;
};

// OpenAI-compatible chat completions endpoint. The API key is read from the
// environment variable named in the config, never from files.
class HttpLlmProvider : public LlmProvider {
 public:
  explicit HttpLlmProvider(HttpProviderConfig config);
  std::string complete(const LlmRequest& request) override;
  std::size_t max_input_tokens() const override { return config_.max_input_tokens; }

 private:
  HttpProviderConfig config_;
  std::string api_key_;
};

// Client-side request budget shared by all workers.
class RateLimitedProvider : public LlmProvider {
 public:
  RateLimitedProvider(LlmProvider& inner, double requests_per_second);
  std::string complete(const LlmRequest& request) override;
  std::size_t max_input_tokens() const override { return inner_.max_input_tokens(); }

 private:
  LlmProvider& inner_;
  std::chrono::nanoseconds interval_;
  std::chrono::steady_clock::time_point next_;
  std::mutex mu_;
};

}  // namespace biaslens

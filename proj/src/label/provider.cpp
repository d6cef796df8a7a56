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

#include "biaslens/label/provider.hpp"

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <thread>

#include "biaslens/util/digest.hpp"
#include "biaslens/util/files.hpp"

namespace biaslens {

MissingFixtureError::MissingFixtureError(std::string digest, PromptName prompt)
    : Error(fmt::format("no fixture response for {} prompt with digest {}", to_string(prompt), digest)),
      digest_(std::move(digest)) {}

std::string prompt_digest(std::string_view prompt_text) { return sha256_hex(prompt_text); }

FixtureLlmProvider FixtureLlmProvider::parse(std::string_view ndjson) {
  FixtureLlmProvider p;
  for (std::string_view line : ndjson_lines(ndjson)) {
    nlohmann::json row = nlohmann::json::parse(line);
    p.add(row.at("digest").get<std::string>(), row.at("response").get<std::string>());
  }
  return p;
}

FixtureLlmProvider FixtureLlmProvider::load(const std::filesystem::path& path) { return parse(read_file(path)); }

void FixtureLlmProvider::add(std::string digest, std::string response) {
  responses_[std::move(digest)] = std::move(response);
}

std::string FixtureLlmProvider::complete(const LlmRequest& request) {
  std::string digest = prompt_digest(request.text);
  auto it = responses_.find(digest);
  if (it == responses_.end()) throw MissingFixtureError(digest, request.prompt);
  return it->second;
}

RecordingLlmProvider::RecordingLlmProvider(LlmProvider& inner, std::filesystem::path path)
    : inner_(inner), path_(std::move(path)) {}

std::string RecordingLlmProvider::complete(const LlmRequest& request) {
  std::string response = inner_.complete(request);
  nlohmann::json row = {{"digest", prompt_digest(request.text)},
                        {"prompt", std::string(to_string(request.prompt))},
                        {"model", request.model_id},
                        {"response", response}};
  std::lock_guard lock(mu_);
  std::ofstream out(path_, std::ios::app);
  out << row.dump() << '\n';
  return response;
}

HttpLlmProvider::HttpLlmProvider(HttpProviderConfig config) : config_(std::move(config)) {
  const char* key = std::getenv(config_.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw InvalidArgument(fmt::format("environment variable {} is not set", config_.api_key_env));
  }
  api_key_ = key;
}

std::string HttpLlmProvider::complete(const LlmRequest& request) {
  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_bearer_token_auth(api_key_);
  nlohmann::json body = {{"model", request.model_id},
                         {"temperature", config_.temperature},
                         {"messages", nlohmann::json::array({{{"role", "user"}, {"content", request.text}}})}};
  httplib::Result res = client.Post("/v1/chat/completions", body.dump(), "application/json");
  if (!res) throw ProviderError(fmt::format("provider unreachable: {}", httplib::to_string(res.error())), true);
  if (res->status == 429 || res->status >= 500) {
    throw ProviderError(fmt::format("provider returned HTTP {}", res->status), true);
  }
  if (res->status != 200) {
    throw ProviderError(fmt::format("provider returned HTTP {}: {}", res->status, res->body), false);
  }
  try {
    nlohmann::json doc = nlohmann::json::parse(res->body);
    return doc.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(fmt::format("malformed provider envelope: {}", e.what()), true);
  }
}

RateLimitedProvider::RateLimitedProvider(LlmProvider& inner, double requests_per_second)
    : inner_(inner),
      interval_(requests_per_second > 0
                    ? std::chrono::nanoseconds(static_cast<long long>(1e9 / requests_per_second))
                    : std::chrono::nanoseconds(0)),
      next_(std::chrono::steady_clock::now()) {}

std::string RateLimitedProvider::complete(const LlmRequest& request) {
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(mu_);
    auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_);
    next_ = slot + interval_;
  }
  std::this_thread::sleep_until(slot);
  return inner_.complete(request);
}

}  // namespace biaslens

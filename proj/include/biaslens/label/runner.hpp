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
#include <functional>
#include <map>
#include <string>

#include "biaslens/core/schema.hpp"
#include "biaslens/label/prompts.hpp"
#include "biaslens/label/provider.hpp"
#include "biaslens/label/response.hpp"
#include "biaslens/util/time.hpp"

namespace biaslens {

// An item whose provider output failed validation after the repair round.
struct DeadLetter {
  std::string item_id;
  std::string stage;  // prompt name
  std::string error;
  std::string raw_response;
  Timestamp at;

  friend bool operator==(const DeadLetter&, const DeadLetter&) = default;
};

Json to_document(const DeadLetter& letter);
DeadLetter dead_letter_from_document(const Json& doc);

class DeadLetterError : public Error {
 public:
  explicit DeadLetterError(DeadLetter letter);
  const DeadLetter& letter() const { return letter_; }

 private:
  DeadLetter letter_;
};

std::map<PromptName, std::string> default_model_ids();

struct RunnerConfig {
  std::map<PromptName, std::string> model_ids = default_model_ids();
  int provider_attempts = 3;  // per call, for retryable ProviderErrors
  int repair_rounds = 1;
  std::chrono::milliseconds retry_backoff{500};
};

// Text appended to a prompt when asking the provider to repair its output.
std::string repair_note(std::string_view error);

// Renders prompts, calls the provider with bounded retries, and runs the
// repair-then-dead-letter policy around a response parser.
class PromptRunner {
 public:
  PromptRunner(LlmProvider& provider, RunnerConfig config, Clock clock);

  std::string call(PromptName name, const std::string& text) const;

  // `parse` may throw ResponseError, SchemaError or a JSON exception to
  // request a repair round. Exhausted repairs throw DeadLetterError.
  template <typename T>
  T ask(PromptName name, const PromptBindings& bindings, const std::string& item_id,
        const std::function<T(const std::string&)>& parse) const {
    std::string prompt = render_prompt(prompt_template(name), bindings);
    std::string raw = call(name, prompt);
    std::string error;
    for (int round = 0;; ++round) {
      try {
        return parse(raw);
      } catch (const ResponseError& e) {
        error = e.what();
      } catch (const SchemaError& e) {
        error = e.what();
      } catch (const nlohmann::json::exception& e) {
        error = e.what();
      }
      if (round >= config_.repair_rounds) break;
      raw = call(name, prompt + repair_note(error));
    }
    throw DeadLetterError({item_id, std::string(to_string(name)), error, raw, clock_()});
  }

  const std::string& model_for(PromptName name) const;
  std::size_t max_input_tokens() const { return provider_.max_input_tokens(); }
  Timestamp now() const { return clock_(); }

 private:
  LlmProvider& provider_;
  RunnerConfig config_;
  Clock clock_;
};

}  // namespace biaslens

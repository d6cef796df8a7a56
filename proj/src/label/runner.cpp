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

#include "biaslens/label/runner.hpp"

#include <fmt/format.h>

#include <thread>

namespace biaslens {

Json to_document(const DeadLetter& l) {
  return Json{{"item_id", l.item_id},
              {"stage", l.stage},
              {"error", l.error},
              {"raw_response", l.raw_response},
              {"at", format_timestamp(l.at)}};
}

DeadLetter dead_letter_from_document(const Json& doc) {
  return {require_string(doc, "item_id", false), require_string(doc, "stage", false), require_string(doc, "error"),
          require_string(doc, "raw_response"), parse_timestamp(require_string(doc, "at", false))};
}

DeadLetterError::DeadLetterError(DeadLetter letter)
    : Error(fmt::format("{} failed at {}: {}", letter.item_id, letter.stage, letter.error)), letter_(std::move(letter)) {}

std::map<PromptName, std::string> default_model_ids() {
  std::map<PromptName, std::string> out;
  for (PromptName n : all_prompt_names()) out[n] = "gpt-4o";
  for (PromptName n : {PromptName::kTopic, PromptName::kSubtopic, PromptName::kTakeaways, PromptName::kEventTitle,
                       PromptName::kFactSummary}) {
    out[n] = "gpt-4o-mini";
  }
  return out;
}

std::string repair_note(std::string_view error) {
  return fmt::format(
      "\n\nYour previous response could not be used ({}). Respond again following the instructions exactly.", error);
}

PromptRunner::PromptRunner(LlmProvider& provider, RunnerConfig config, Clock clock)
    : provider_(provider), config_(std::move(config)), clock_(std::move(clock)) {}

const std::string& PromptRunner::model_for(PromptName name) const {
  auto it = config_.model_ids.find(name);
  if (it == config_.model_ids.end()) throw InvalidArgument(fmt::format("no model configured for {}", to_string(name)));
  return it->second;
}

std::string PromptRunner::call(PromptName name, const std::string& text) const {
  LlmRequest request{model_for(name), name, text};
  for (int attempt = 1;; ++attempt) {
    try {
      return provider_.complete(request);
    } catch (const ProviderError& e) {
      if (!e.retryable() || attempt >= config_.provider_attempts) throw;
      std::this_thread::sleep_for(config_.retry_backoff * (1 << (attempt - 1)));
    }
  }
}

}  // namespace biaslens

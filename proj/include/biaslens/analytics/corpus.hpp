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

#include <optional>
#include <string>
#include <vector>

#include "biaslens/core/types.hpp"

namespace biaslens {

// One article as analytics sees it: the immutable model labels plus, when a
// validator corrected them, the overlaid labels.
struct AnalyzedArticle {
  Article article;
  std::optional<LabelSet> model_labels;
  std::optional<LabelSet> corrected_labels;
  std::vector<SentenceRecord> sentences;
  std::optional<std::vector<SentenceRecord>> corrected_sentences;
  std::optional<std::string> event_id;

  // Corrections win when overlays are on and one exists.
  const LabelSet* labels(bool use_overlays) const;
  const std::vector<SentenceRecord>& sentences_for(bool use_overlays) const;
  CivilDate day() const { return article.first_seen_snapshot.date; }
};

struct Corpus {
  std::vector<AnalyzedArticle> articles;
  std::vector<EventCluster> events;
};

}  // namespace biaslens

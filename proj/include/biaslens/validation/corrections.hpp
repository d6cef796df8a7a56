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
#include <utility>
#include <vector>

#include "biaslens/core/hierarchy.hpp"
#include "biaslens/core/validation_types.hpp"

namespace biaslens {

// A validator's correction, stored beside the untouched model label.
struct Overlay {
  std::string overlay_id;  // digest of article, kind, annotator and correction
  std::string article_id;
  TaskKind kind = TaskKind::kArticleLean;
  Json corrected;
  std::string annotator_id;
  std::string task_id;
  Timestamp submitted_at{};

  friend bool operator==(const Overlay&, const Overlay&) = default;
};

Json to_document(const Overlay& overlay);
Overlay overlay_from_document(const Json& doc);

// A correction naming a topic or subtopic the hierarchy lacks.
struct TopicProposal {
  std::string proposal_id;
  std::string article_id;
  Json proposal;  // the corrected_label as submitted
  std::string annotator_id;
  std::string task_id;

  friend bool operator==(const TopicProposal&, const TopicProposal&) = default;
};

Json to_document(const TopicProposal& proposal);
TopicProposal proposal_from_document(const Json& doc);

// Overlays for one (article, kind) from different annotators that disagree.
struct CorrectionConflict {
  std::string article_id;
  TaskKind kind = TaskKind::kArticleLean;
  std::vector<std::string> overlay_ids;
};

struct AnsweredTask {
  ValidationTask task;
  ValidationResponse response;
};

struct ChangeLog {
  std::vector<Overlay> overlays;        // new, to be written
  std::vector<TopicProposal> proposals;  // new, to be queued
  std::size_t agreements = 0;            // responses needing no overlay
  std::size_t duplicates = 0;            // already stored
  std::vector<CorrectionConflict> conflicts;  // over existing plus new overlays
};

Overlay make_overlay(const ValidationTask& task, const ValidationResponse& response);

// Pure planning step; the store persists the result. Responses must already
// have passed check_response.
ChangeLog plan_corrections(const std::vector<AnsweredTask>& answered, const std::vector<Overlay>& existing,
                           const std::vector<TopicProposal>& existing_proposals = {});

std::vector<CorrectionConflict> find_conflicts(const std::vector<Overlay>& overlays);

// Label overlays of one article applied to its model labels. Conflicted
// (article, kind) pairs are skipped until adjudicated; otherwise the latest
// submission wins. Returns nullopt when nothing applies.
std::optional<LabelSet> apply_label_overlays(const LabelSet& model, const std::vector<Overlay>& overlays,
                                             const TopicHierarchy& hierarchy);

// Sentence overlays of one article applied to its sentence records.
std::vector<SentenceRecord> apply_sentence_overlays(std::vector<SentenceRecord> sentences,
                                                    const std::vector<Overlay>& overlays);

}  // namespace biaslens

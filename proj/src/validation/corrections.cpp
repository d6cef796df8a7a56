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

#include "biaslens/validation/corrections.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <map>
#include <set>

#include "biaslens/util/digest.hpp"

namespace biaslens {

namespace {

constexpr const char* kCorrectionReason = "Corrected by a validator.";

bool is_proposal(const Json& c) { return c.contains("proposed_topic") || c.contains("proposed_subtopic"); }

// Latest non-conflicted overlay per kind.
std::map<TaskKind, const Overlay*> effective(const std::vector<Overlay>& overlays) {
  std::set<std::pair<std::string, TaskKind>> conflicted;
  for (const CorrectionConflict& c : find_conflicts(overlays)) conflicted.insert({c.article_id, c.kind});
  std::map<TaskKind, const Overlay*> out;
  for (const Overlay& o : overlays) {
    if (conflicted.count({o.article_id, o.kind})) continue;
    const Overlay*& slot = out[o.kind];
    if (slot == nullptr || std::tie(o.submitted_at, o.overlay_id) > std::tie(slot->submitted_at, slot->overlay_id)) {
      slot = &o;
    }
  }
  return out;
}

}  // namespace

Json to_document(const Overlay& o) {
  return Json{{"overlay_id", o.overlay_id}, {"article_id", o.article_id},   {"kind", to_string(o.kind)},
              {"corrected", o.corrected},   {"annotator_id", o.annotator_id}, {"task_id", o.task_id},
              {"submitted_at", format_timestamp(o.submitted_at)}};
}

Overlay overlay_from_document(const Json& doc) {
  Overlay o;
  o.overlay_id = require_string(doc, "overlay_id", false);
  o.article_id = require_string(doc, "article_id", false);
  o.kind = parse_task_kind(require_string(doc, "kind", false));
  o.corrected = require_field(doc, "corrected");
  o.annotator_id = require_string(doc, "annotator_id", false);
  o.task_id = require_string(doc, "task_id", false);
  o.submitted_at = parse_timestamp(require_string(doc, "submitted_at", false));
  return o;
}

Json to_document(const TopicProposal& p) {
  return Json{{"proposal_id", p.proposal_id}, {"article_id", p.article_id}, {"proposal", p.proposal},
              {"annotator_id", p.annotator_id}, {"task_id", p.task_id}};
}

TopicProposal proposal_from_document(const Json& doc) {
  return {require_string(doc, "proposal_id", false), require_string(doc, "article_id", false),
          require_field(doc, "proposal"), require_string(doc, "annotator_id", false),
          require_string(doc, "task_id", false)};
}

Overlay make_overlay(const ValidationTask& task, const ValidationResponse& response) {
  if (!response.corrected_label) throw InvalidArgument("response carries no correction");
  Overlay o;
  o.article_id = task.item_id;
  o.kind = task.kind;
  o.corrected = *response.corrected_label;
  o.annotator_id = response.annotator_id;
  o.task_id = task.task_id;
  o.submitted_at = response.submitted_at;
  o.overlay_id = short_digest(fmt::format("overlay\n{}\n{}\n{}\n{}", o.article_id, to_string(o.kind),
                                          o.annotator_id, o.corrected.dump()));
  return o;
}

ChangeLog plan_corrections(const std::vector<AnsweredTask>& answered, const std::vector<Overlay>& existing,
                           const std::vector<TopicProposal>& existing_proposals) {
  ChangeLog log;
  std::set<std::string> known;
  for (const Overlay& o : existing) known.insert(o.overlay_id);
  for (const TopicProposal& p : existing_proposals) known.insert(p.proposal_id);
  for (const AnsweredTask& a : answered) {
    if (!a.response.corrected_label) {
      ++log.agreements;
      continue;
    }
    Overlay o = make_overlay(a.task, a.response);
    if (a.task.kind == TaskKind::kTopic && is_proposal(o.corrected)) {
      TopicProposal p{"p" + o.overlay_id, o.article_id, o.corrected, o.annotator_id, o.task_id};
      if (!known.insert(p.proposal_id).second) {
        ++log.duplicates;
      } else {
        log.proposals.push_back(std::move(p));
      }
      continue;
    }
    if (!known.insert(o.overlay_id).second) {
      ++log.duplicates;
      continue;
    }
    log.overlays.push_back(std::move(o));
  }
  std::vector<Overlay> all = existing;
  all.insert(all.end(), log.overlays.begin(), log.overlays.end());
  log.conflicts = find_conflicts(all);
  return log;
}

std::vector<CorrectionConflict> find_conflicts(const std::vector<Overlay>& overlays) {
  std::map<std::pair<std::string, TaskKind>, std::vector<const Overlay*>> groups;
  for (const Overlay& o : overlays) groups[{o.article_id, o.kind}].push_back(&o);
  std::vector<CorrectionConflict> out;
  for (const auto& [key, group] : groups) {
    std::set<std::string> annotators, values;
    for (const Overlay* o : group) {
      annotators.insert(o->annotator_id);
      values.insert(o->corrected.dump());
    }
    if (annotators.size() < 2 || values.size() < 2) continue;
    CorrectionConflict c{key.first, key.second, {}};
    for (const Overlay* o : group) c.overlay_ids.push_back(o->overlay_id);
    std::sort(c.overlay_ids.begin(), c.overlay_ids.end());
    out.push_back(std::move(c));
  }
  return out;
}

std::optional<LabelSet> apply_label_overlays(const LabelSet& model, const std::vector<Overlay>& overlays,
                                             const TopicHierarchy& hierarchy) {
  LabelSet out = model;
  bool changed = false;
  for (const auto& [kind, o] : effective(overlays)) {
    const Json& c = o->corrected;
    switch (kind) {
      case TaskKind::kArticleLean:
        out.lean = {LikertScore(static_cast<int>(require_integer(c, "lean"))), kCorrectionReason};
        changed = true;
        break;
      case TaskKind::kArticleTone:
        out.tone = {LikertScore(static_cast<int>(require_integer(c, "tone"))), kCorrectionReason};
        changed = true;
        break;
      case TaskKind::kArticleType:
        out.news_type = parse_enum<NewsType>(require_string(c, "news_type", false));
        out.news_type_justification = kCorrectionReason;
        changed = true;
        break;
      case TaskKind::kTopic:
        if (is_proposal(c)) break;
        out.topic = require_string(c, "topic", false);
        out.subtopic = require_string(c, "subtopic", false);
        out.category = hierarchy.category_of(out.topic);
        changed = true;
        break;
      case TaskKind::kSentence:
      case TaskKind::kEventMembership:
        break;
    }
  }
  if (!changed) return std::nullopt;
  return out;
}

std::vector<SentenceRecord> apply_sentence_overlays(std::vector<SentenceRecord> sentences,
                                                    const std::vector<Overlay>& overlays) {
  auto chosen = effective(overlays);
  auto it = chosen.find(TaskKind::kSentence);
  if (it == chosen.end()) return sentences;
  for (const Json& item : it->second->corrected.at("corrections")) {
    long long index = require_integer(item, "sentence");
    for (SentenceRecord& s : sentences) {
      if (s.index != index) continue;
      if (item.contains("type")) s.type = parse_enum<SentenceType>(require_string(item, "type", false));
      if (item.contains("tone")) s.tone = parse_enum<SentenceTone>(require_string(item, "tone", false));
      if (item.contains("focus")) s.focus = parse_enum<Focus>(require_string(item, "focus", false));
    }
  }
  return sentences;
}

}  // namespace biaslens

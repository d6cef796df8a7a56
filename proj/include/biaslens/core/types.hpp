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

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "biaslens/core/enums.hpp"
#include "biaslens/util/time.hpp"

namespace biaslens {

// Integer on the 11-point scale [-5, +5]. Out-of-range values cannot be
// constructed.
class LikertScore {
 public:
  static constexpr int kMin = -5;
  static constexpr int kMax = 5;

  explicit LikertScore(int value);
  static bool in_range(long long value) { return value >= kMin && value <= kMax; }

  int value() const noexcept { return value_; }
  friend auto operator<=>(const LikertScore&, const LikertScore&) = default;

 private:
  int value_;
};

struct Publisher {
  std::string id;
  std::string display_name;
  std::string homepage_url;
  bool enabled = true;
};

// Identifies one homepage capture.
struct SnapshotRef {
  std::string publisher_id;
  Timestamp captured_at;
  CivilDate date;  // local calendar date of the capture schedule

  std::string key() const;
  friend bool operator==(const SnapshotRef&, const SnapshotRef&) = default;
};

struct Article {
  std::string article_id;  // digest of (publisher_id, canonical_url)
  std::string publisher_id;
  std::string canonical_url;
  std::string title;
  std::string body;
  std::optional<Timestamp> published_at;
  SnapshotRef first_seen_snapshot;
  int best_rank = 1;

  friend bool operator==(const Article&, const Article&) = default;
};

struct ScoredReason {
  LikertScore score{0};
  std::string reason;

  friend bool operator==(const ScoredReason&, const ScoredReason&) = default;
};

struct LabelSet {
  std::string article_id;
  std::string category;
  std::string topic;
  std::string subtopic;
  std::string takeaways;
  NewsType news_type = NewsType::kNewsReport;
  std::string news_type_justification;
  ScoredReason lean;
  ScoredReason tone;
  ScoredReason headline_lean;
  ScoredReason headline_tone;
  std::string model_id;
  Timestamp labeled_at{};
  int hierarchy_version = 1;
  bool truncated = false;  // article text was cut to fit the provider input limit

  friend bool operator==(const LabelSet&, const LabelSet&) = default;
};

struct SentenceRecord {
  std::string article_id;
  int index = 1;  // 1-based
  std::string text;
  SentenceType type = SentenceType::kOther;
  SentenceTone tone = SentenceTone::kNeutral;
  Focus focus = Focus::kNeither;

  friend bool operator==(const SentenceRecord&, const SentenceRecord&) = default;
};

struct QuoteRecord {
  std::string article_id;
  std::string quote_text;
  std::string person_name;
  std::string person_occupation;
  std::string person_affiliation;
  PersonDomain person_domain = PersonDomain::kOther;
  PersonCapacity person_capacity = PersonCapacity::kOther;

  friend bool operator==(const QuoteRecord&, const QuoteRecord&) = default;
};

struct SentenceKey {
  std::string article_id;
  int index = 1;

  std::string str() const { return article_id + "#" + std::to_string(index); }
  friend auto operator<=>(const SentenceKey&, const SentenceKey&) = default;
};

struct EventCluster {
  std::string event_id;
  CivilDate day;
  std::string theme;
  std::string theme_short;  // at most five words
  bool theme_short_truncated = false;
  std::set<std::string> member_article_ids;
  // Set when the event is imported from a published summary that lists counts
  // but not members.
  std::optional<int> reported_count;

  int article_count() const {
    return reported_count.value_or(static_cast<int>(member_article_ids.size()));
  }
  friend bool operator==(const EventCluster&, const EventCluster&) = default;
};

struct FactCluster {
  std::string event_id;
  std::string fact_id;
  std::string synthetic_sentence;  // at most 25 words
  bool truncated = false;
  std::set<SentenceKey> member_sentences;

  friend bool operator==(const FactCluster&, const FactCluster&) = default;
};

}  // namespace biaslens

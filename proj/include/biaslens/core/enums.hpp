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

#include <array>
#include <string_view>
#include <utility>

#include "biaslens/util/error.hpp"

namespace biaslens {

enum class NewsType { kNewsReport, kNewsAnalysis, kOpinion };
enum class SentenceType { kFact, kOpinion, kBorderline, kQuote, kOther };
enum class SentenceTone { kPositive, kNegative, kNeutral };
enum class Focus { kDemocrat, kRepublican, kBoth, kNeither };

enum class PersonDomain {
  kPolitics,
  kCorporate,
  kAcademia,
  kLegal,
  kMediaAndArts,
  kScienceAndTechnology,
  kSports,
  kLawEnforcement,
  kMilitary,
  kHealthAndMedicine,
  kReligion,
  kCommunityAndSocialServices,
  kOther,
};

enum class PersonCapacity {
  kExpert,
  kObserver,
  kParticipant,
  kSubject,
  kCommentary,
  kIllustrativeAnecdote,
  kSpokesperson,
  kOther,
};

// Wire names, exactly as they appear in the labeling prompts.
template <typename E>
struct EnumNames;

template <>
struct EnumNames<NewsType> {
  static constexpr std::array<std::pair<NewsType, std::string_view>, 3> kValues{{
      {NewsType::kNewsReport, "news report"},
      {NewsType::kNewsAnalysis, "news analysis"},
      {NewsType::kOpinion, "opinion"},
  }};
};

template <>
struct EnumNames<SentenceType> {
  static constexpr std::array<std::pair<SentenceType, std::string_view>, 5> kValues{{
      {SentenceType::kFact, "fact"},
      {SentenceType::kOpinion, "opinion"},
      {SentenceType::kBorderline, "borderline"},
      {SentenceType::kQuote, "quote"},
      {SentenceType::kOther, "other"},
  }};
};

template <>
struct EnumNames<SentenceTone> {
  static constexpr std::array<std::pair<SentenceTone, std::string_view>, 3> kValues{{
      {SentenceTone::kPositive, "positive"},
      {SentenceTone::kNegative, "negative"},
      {SentenceTone::kNeutral, "neutral"},
  }};
};

template <>
struct EnumNames<Focus> {
  static constexpr std::array<std::pair<Focus, std::string_view>, 4> kValues{{
      {Focus::kDemocrat, "democrat"},
      {Focus::kRepublican, "republican"},
      {Focus::kBoth, "both"},
      {Focus::kNeither, "neither"},
  }};
};

template <>
struct EnumNames<PersonDomain> {
  static constexpr std::array<std::pair<PersonDomain, std::string_view>, 13> kValues{{
      {PersonDomain::kPolitics, "Politics"},
      {PersonDomain::kCorporate, "Corporate"},
      {PersonDomain::kAcademia, "Academia"},
      {PersonDomain::kLegal, "Legal"},
      {PersonDomain::kMediaAndArts, "Media and Arts"},
      {PersonDomain::kScienceAndTechnology, "Science and Technology"},
      {PersonDomain::kSports, "Sports"},
      {PersonDomain::kLawEnforcement, "Law enforcement"},
      {PersonDomain::kMilitary, "Military"},
      {PersonDomain::kHealthAndMedicine, "Health and Medicine"},
      {PersonDomain::kReligion, "Religion"},
      {PersonDomain::kCommunityAndSocialServices, "Community and Social Services"},
      {PersonDomain::kOther, "Other"},
  }};
};

template <>
struct EnumNames<PersonCapacity> {
  static constexpr std::array<std::pair<PersonCapacity, std::string_view>, 8> kValues{{
      {PersonCapacity::kExpert, "expert"},
      {PersonCapacity::kObserver, "observer"},
      {PersonCapacity::kParticipant, "participant"},
      {PersonCapacity::kSubject, "subject"},
      {PersonCapacity::kCommentary, "commentary"},
      {PersonCapacity::kIllustrativeAnecdote, "illustrative anecdote"},
      {PersonCapacity::kSpokesperson, "spokesperson"},
      {PersonCapacity::kOther, "other"},
  }};
};

template <typename E>
constexpr std::string_view to_string(E value) {
  for (const auto& [v, name] : EnumNames<E>::kValues) {
    if (v == value) return name;
  }
  return {};
}

// Exact match only; the closed vocabularies are case-sensitive.
template <typename E>
bool try_parse(std::string_view name, E& out) {
  for (const auto& [v, n] : EnumNames<E>::kValues) {
    if (n == name) {
      out = v;
      return true;
    }
  }
  return false;
}

template <typename E>
E parse_enum(std::string_view name) {
  E out{};
  if (!try_parse(name, out)) {
    throw InvalidArgument("unknown enumeration value '" + std::string(name) + "'");
  }
  return out;
}

}  // namespace biaslens

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

#include "biaslens/label/prompts.hpp"

#include <fmt/format.h>

#include <array>
#include <cctype>
#include <set>

#include "biaslens/util/error.hpp"

namespace biaslens {
namespace {

constexpr std::string_view kTopic = R"(The following is a news article. Read it and perform the task that follows. Respond with a JSON object of key-value pairs.

####################

{article}

####################

Task: Classify the article into one of the listed topics.

Instruction: Try your best to bucket the article into one of these topics. DO NOT write anything that is not listed.

Key: "topic"
Value: One of: {topic_list}.

Do not return anything except the JSON object of key-value pairs as output.)";

constexpr std::string_view kSubtopic = R"(The following is a news article on the topic of {predicted_topic}. Read it and perform the task that follows. Respond with a JSON object of key-value pairs.

####################

{article}

####################

Task: Classify the article into one of the listed subtopics under the predicted topic.

Instruction: Try your best to bucket the article into one of these subtopics. Label it as 'Other' if the article does not fit any possible subtopics.

Key: "subtopic"

Value: One of: {subtopic_list_under_the_topic}.

Do not return anything except the JSON object of key-value pairs as output.)";

constexpr std::string_view kTakeaways = R"(The following is a news article. Read it and perform the task that follows. Respond with a JSON object of key-value pairs.

####################

{article}

####################

Task: Summarize the main points of the news article.

Instruction: List short takeaway points that readers are likely to remember from the article.
Key: "takeaways"
Value: A 3-4 sentence summary.)";

constexpr std::string_view kArticleType = R"(The following is a news article. Read it and perform the task that follows. Respond with a JSON object of key-value pairs.

####################

{article}

####################

Task: Determine the news type of this news article.

1. Instruction: Classify the above news article into one of three categories: news report, news analysis, or opinion. Each category has distinct characteristics:
- News Report: Objective reporting on recent events, focusing on verified facts without the writer's personal views.
- News Analysis: In-depth examination and interpretation of news events, providing context and explaining significance, while maintaining a degree of objectivity.
- Opinion: Articles reflecting personal views, arguments, or beliefs on current issues, often persuasive and subjective.
Consider criteria such as language objectivity, focus on facts versus interpretation, author's intent, and article structure.

Key: "news_type"
Value: One of "news report" or "news analysis" or "opinion".

2. Instruction: Provide a short paragraph to justify your classification, citing specific elements from the text.
Key: "justification"
Value: A paragraph of text.

Do not return anything except the JSON object of key-value pairs as output.)";

constexpr std::string_view kArticleLean = R"(The following is a news article. Read it and perform the task that follows. Respond with a JSON object of key-value pairs.

####################

{article}

####################

Task: Determine the political lean of this article within the U.S. political context. Is it supporting the Democrat party or the Republican party? Supporting a party can mean supporting its viewpoints, politicians, or policies. Provide reasoning for your answer.

1. Instruction: Give a short paragraph summarizing in what ways the article supports the Democrat party or the Republican party.
Key: "reason"
Value: A paragraph of text.

2. Instruction: Give a number from -5 to 5, with -5 indicating strong support for Democrats and 5 indicating strong support for Republicans. A value of 0 indicates that the article has no clear political lean towards either side.
Key: "lean"
Value: An integer number from -5 to 5.

Do not return anything except the JSON object of key-value pairs as output.)";

constexpr std::string_view kArticleTone = R"(The following is a news article. Read it and perform the task that follows. Respond with a JSON object of key-value pairs.

####################

{article}

####################

Task: Determine the overall tone of the article. Is it negative, positive, or neutral?

1. Instruction: Provide a short paragraph summarizing in what ways the article has a negative or positive tone.
Key: "reason"
Value: A paragraph of text.

2. Instruction: Provide a number from -5 to 5, with -5 indicating a very negative tone and 5 indicating a very positive tone. A value of 0 indicates that the article has a neutral tone.
Key: "tone"
Value: An integer number from -5 to 5.

Do not return anything except the JSON object of key-value pairs as output.)";

constexpr std::string_view kHeadlineLean = R"(The following is the title of a news article on the topic of {topic} ({subtopic}) in the {category} news category. Read it and perform the task that follows. Respond with a JSON object of key-value pairs.

####################

{article}

####################

Task: Determine the political lean of this article title within the U.S. political context. Is it supporting the Democrat party or the Republican party? Supporting a party can mean supporting its viewpoints, politicians, or policies. Provide reasoning for your answer.

1. Instruction: Give a short paragraph summarizing in what ways the article title supports the Democrat party or the Republican party.
Key: "reason"
Value: A paragraph of text.

2. Instruction: Give a number from -5 to 5, with -5 indicating strong support for Democrats and 5 indicating strong support for Republicans. A value of 0 indicates that the article title has no clear political lean towards either side.
Key: "lean"
Value: An integer number from -5 to 5.

Do not return anything except the JSON object of key-value pairs as output.)";

constexpr std::string_view kHeadlineTone = R"(The following is the title of a news article on the topic of {topic} ({subtopic}) in the {category} news category. Read it and perform the task that follows. Respond with a JSON object of key-value pairs.

####################

{article}

####################

Task: Determine the overall tone of the article title. Is it negative, positive, or neutral?

1. Instruction: Provide a short paragraph summarizing in what ways the article title has a negative or positive tone.
Key: "reason"
Value: A paragraph of text.

2. Instruction: Provide a number from -5 to 5, with -5 indicating a very negative tone and 5 indicating a very positive tone. A value of 0 indicates that the article has a neutral tone.
Key: "tone"
Value: An integer number from -5 to 5.

Do not return anything except the JSON object of key-value pairs as output.)";

constexpr std::string_view kSentence = R"(The following is a numbered list of sentences from a news article. Read them all and perform the task that follows:

####################

{sentences}

####################

Task: For each sentence above, perform the following analysis. Return the output as a list of JSON objects of key-value pairs, one for each sentence, where the keys are:

1. Instruction: Output the number of the current sentence being analyzed.
Key: "sentence"
Value: The sentence number.

2. Instruction: Determine whether the sentence is a "fact", "opinion", "borderline", "quote", or "other" type of sentence. A "fact" is something that's capable of being proved or disproved by objective evidence. An "opinion" reflects the beliefs and values of whoever expressed it, but should not be a quote. A "borderline" sentence is one that is not entirely a fact or opinion. A "quote" is a passage from another person or source that comes with quotation marks. If a quote is composed of multiple sentences, they should all be labeled as "quote".
Key: "type"
Value: One of "fact", "opinion", "borderline", "quote", "other". Select "other" if the sentence does not fit the possible values.

3. Instruction: Classify the tone of the sentence as "positive", "negative", or "neutral".
Key: "tone"
Value: One of "positive", "negative", "neutral".

4. Instruction: Classify the focus of the sentence as being "democrat", "republican", or "neither" within the U.S. political context. If the sentence is referring to the Democratic Party, including its policies or politicians, label it as "democrat". If it is referring to the Republican Party, including its policies or politicians, label it as "republican". If it is referring to both, label it as "both". Otherwise, label it as "neither".
Key: "focus"
Value: One of "democrat", "republican", "both", "neither".

Do not return anything except the list of JSON objects of key-value pairs as output. Do not skip analyzing any sentences. Do not return any key values except those specified.)";

constexpr std::string_view kQuote = R"(The following is a news article. Read it and perform the task that follows. Respond with a list of JSON objects of key-value pairs, one for each quote, where the keys are as follows:

####################

{article}

####################

Task: Extract all direct quotes from the article above and provide a list of JSON objects of key-value pairs, one for each quote, where the keys are:

1. Instruction: Extract the full text of the quote itself. If a quote is split over multiple fragments, combine them into one.
Key: "quote"
Value: The full quote text.

2. Instruction: Extract the full name of the person being quoted.
Key: "person_name"
Value: The person's full name. Leave blank if unknown.

3. Instruction: Extract the full occupation of the person being quoted.
Key: "person_occupation"
Value: The person's full occupation. Leave blank if unknown.

4. Instruction: Extract the affiliation of the person being quoted.
Key: "person_affiliation"
Value: The entity or organization that the person is affiliated with. Leave blank if unknown.

5. Instruction: Classify the domain of the person being quoted based on their occupation and affiliation.
Key: "person_domain"
Value: One of "Politics", "Corporate", "Academia", "Legal", "Media and Arts", "Science and Technology", "Sports", "Law enforcement", "Military", "Health and Medicine", "Religion", "Community and Social Services", "Other". Select "Other" if the domain does not fit the possible values.

6. Instruction: Classify the capacity in which the person is being quoted based on the context of the article. An "illustrative anecdote" is when a person is being quoted as an example or illustration of a larger trend, a "commentary" is when a person is providing their thoughts on a topic or event, an "expert" is when a person is providing specialized knowledge or analysis, a "subject" is when a person is the main focus of the article, an "observer" is when a person is providing a first-hand account of an event, a "participant" is when the person being quoted was involved in an event, a "spokesperson" is when a person is speaking on behalf of an organization or entity.
Key: "person_capacity"
Value: One of "expert", "observer", "participant", "subject", "commentary", "illustrative anecdote", "spokesperson", "other". Select "other" if the capacity does not fit the possible values.

Do not return anything except the list of JSON objects of key-value pairs as output. Do not skip any quotes.)";

constexpr std::string_view kEventTitle = R"(The following is a list of titles of a collection of news articles around a particular event. Read them and perform the task that follows. Respond with a JSON object of key-value pairs.

####################

{article_titles}

####################

Task: Summarize the titles.

1. Instruction: Analyze the titles and produce a good thematic title that best summarizes the event.
Key: "theme"
Value: The thematic title.

2. Instruction: Analyze the titles and produce a shorter title that is not longer than 4 to 5 words.
Key: "theme_short"
Value: The shorter title.

Do not return anything except the JSON object of key-value pairs as output.)";

constexpr std::string_view kClusterRecall = R"(Your task is to assign a news article to one of the following event themes based on its headline and summary. If the article falls under any of these themes, return the corresponding number. If the article does not fall under any of these themes, return -1. Only return an integer value and nothing else.

Headline: {title}

Summary: {takeaways}

Themes:
{themes})";

constexpr std::string_view kClusterPrecision = R"(Your task is to go through a list of news headlines associated with an event theme and return the corresponding number of any that are unrelated to that theme. If multiple headlines are unrelated to the theme, return their respective numbers separated by commas. If all headlines are relevant to the theme, return -1. Only return integer values and nothing else.

Theme: {theme}

Headlines:
{titles})";

constexpr std::string_view kFactSummary = R"(The following is a list of sentences about the same event. Read them and perform the task that follows. Respond with a JSON object of key-value pairs.

####################

{sentence_list}

####################

Task: Analyze them and produce a comprehensive sentence that summarizes all of them and is no longer than 25 words.
Key: "synthetic_sentence"
Value: The comprehensive sentence.

Do not return anything except the JSON object of key-value pairs as output.)";

const std::array<PromptTemplate, 14>& registry() {
  static const std::array<PromptTemplate, 14> templates = {{
      {PromptName::kTopic, kTopic, {"topic"}},
      {PromptName::kSubtopic, kSubtopic, {"subtopic"}},
      {PromptName::kTakeaways, kTakeaways, {"takeaways"}},
      {PromptName::kArticleType, kArticleType, {"news_type", "justification"}},
      {PromptName::kArticleLean, kArticleLean, {"reason", "lean"}},
      {PromptName::kArticleTone, kArticleTone, {"reason", "tone"}},
      {PromptName::kHeadlineLean, kHeadlineLean, {"reason", "lean"}},
      {PromptName::kHeadlineTone, kHeadlineTone, {"reason", "tone"}},
      {PromptName::kSentence, kSentence, {"sentence", "type", "tone", "focus"}},
      {PromptName::kQuote, kQuote,
       {"quote", "person_name", "person_occupation", "person_affiliation", "person_domain", "person_capacity"}},
      {PromptName::kEventTitle, kEventTitle, {"theme", "theme_short"}},
      {PromptName::kClusterRecall, kClusterRecall, {}},
      {PromptName::kClusterPrecision, kClusterPrecision, {}},
      {PromptName::kFactSummary, kFactSummary, {"synthetic_sentence"}},
  }};
  return templates;
}

constexpr std::array<std::string_view, 14> kNames = {
    "topic",         "subtopic", "takeaways", "article_type", "article_lean",   "article_tone",      "headline_lean",
    "headline_tone", "sentence", "quote",     "event_title",  "cluster_recall", "cluster_precision", "fact_summary"};

bool is_placeholder_char(char c) { return std::islower(static_cast<unsigned char>(c)) || c == '_'; }

// Length of a {name} marker at body[pos], or 0.
std::size_t placeholder_at(std::string_view body, std::size_t pos) {
  if (body[pos] != '{') return 0;
  std::size_t end = pos + 1;
  while (end < body.size() && is_placeholder_char(body[end])) ++end;
  if (end == pos + 1 || end >= body.size() || body[end] != '}') return 0;
  return end - pos + 1;
}

}  // namespace

std::string_view to_string(PromptName name) { return kNames[static_cast<std::size_t>(name)]; }

PromptName parse_prompt_name(std::string_view s) {
  for (std::size_t i = 0; i < kNames.size(); ++i) {
    if (kNames[i] == s) return static_cast<PromptName>(i);
  }
  throw InvalidArgument(fmt::format("unknown prompt '{}'", s));
}

const std::vector<PromptName>& all_prompt_names() {
  static const std::vector<PromptName> names = [] {
    std::vector<PromptName> out;
    for (std::size_t i = 0; i < kNames.size(); ++i) out.push_back(static_cast<PromptName>(i));
    return out;
  }();
  return names;
}

const PromptTemplate& prompt_template(PromptName name) { return registry()[static_cast<std::size_t>(name)]; }

std::vector<std::string> PromptTemplate::placeholders() const {
  std::vector<std::string> out;
  for (std::size_t pos = 0; pos < body.size(); ++pos) {
    if (std::size_t len = placeholder_at(body, pos)) {
      std::string key(body.substr(pos + 1, len - 2));
      if (std::find(out.begin(), out.end(), key) == out.end()) out.push_back(std::move(key));
      pos += len - 1;
    }
  }
  return out;
}

std::string render_prompt(const PromptTemplate& tmpl, const PromptBindings& bindings) {
  std::vector<std::string> names = tmpl.placeholders();
  for (const auto& [key, value] : bindings) {
    if (std::find(names.begin(), names.end(), key) == names.end()) {
      throw InvalidArgument(fmt::format("prompt {} has no placeholder '{}'", to_string(tmpl.name), key));
    }
  }
  std::string out;
  out.reserve(tmpl.body.size() + 256);
  std::string_view body = tmpl.body;
  for (std::size_t pos = 0; pos < body.size(); ++pos) {
    std::size_t len = placeholder_at(body, pos);
    if (len == 0) {
      out += body[pos];
      continue;
    }
    std::string_view key = body.substr(pos + 1, len - 2);
    auto it = bindings.find(key);
    if (it == bindings.end()) {
      throw InvalidArgument(fmt::format("prompt {} is missing binding '{}'", to_string(tmpl.name), key));
    }
    out += it->second;
    pos += len - 1;
  }
  return out;
}

std::string quoted_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ", ";
    out += '"' + items[i] + '"';
  }
  return out;
}

std::string numbered_list(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += '\n';
    out += fmt::format("{}. {}", i + 1, items[i]);
  }
  return out;
}

}  // namespace biaslens

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

#include "biaslens/analytics/reports.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "biaslens/util/csv.hpp"
#include "biaslens/util/strings.hpp"

namespace biaslens {

namespace {

struct Sums {
  long long lean = 0, headline_lean = 0, tone = 0, headline_tone = 0;
  std::size_t n = 0;

  void add(const LabelSet& l) {
    lean += l.lean.score.value();
    headline_lean += l.headline_lean.score.value();
    tone += l.tone.score.value();
    headline_tone += l.headline_tone.score.value();
    ++n;
  }
  DeltaPoint point(std::string category) const {
    DeltaPoint p;
    p.category = std::move(category);
    p.n = n;
    if (n == 0) return p;
    double d = static_cast<double>(n);
    p.article_lean = static_cast<double>(lean) / d;
    p.headline_lean = static_cast<double>(headline_lean) / d;
    p.article_tone = static_cast<double>(tone) / d;
    p.headline_tone = static_cast<double>(headline_tone) / d;
    return p;
  }
};

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string row_label(const AggregateRow& row) {
  std::string key = text::join(row.key, " / ");
  return row.label.empty() ? key : row.label;
}

std::string format_value(Measure m, double v) {
  return m == Measure::kCount ? fmt::format("{}", static_cast<long long>(std::llround(v))) : fmt::format("{:.4f}", v);
}

bool in_range(const AggregateQuery& q, const AnalyzedArticle& a) {
  if (q.from && a.day() < *q.from) return false;
  if (q.to && a.day() > *q.to) return false;
  return q.publishers.empty() || q.publishers.count(a.article.publisher_id);
}

}  // namespace

HeadlineDeltaReport headline_delta(const AggregateQuery& filter, const Corpus& corpus) {
  if (filter.from && filter.to && *filter.from > *filter.to) throw InvalidArgument("date range is empty");
  HeadlineDeltaReport report;
  std::map<std::string, Sums> by_category;
  Sums all;
  for (const AnalyzedArticle& a : corpus.articles) {
    if (!in_range(filter, a)) continue;
    if (!matches(filter, a)) {
      if (a.labels(filter.use_overlays) == nullptr) ++report.excluded;
      continue;
    }
    const LabelSet& l = *a.labels(filter.use_overlays);
    by_category[l.category].add(l);
    all.add(l);
  }
  for (const auto& [category, sums] : by_category) report.categories.push_back(sums.point(category));
  report.overall = all.point("all");
  return report;
}

HorseraceConfig HorseraceConfig::from_json(const Json& doc) {
  HorseraceConfig c;
  for (const Json& s : require_field(doc, "horserace_subtopics")) c.horserace_subtopics.insert(s.get<std::string>());
  for (const Json& t : require_field(doc, "policy_topics")) c.policy_topics.insert(t.get<std::string>());
  return c;
}

void HorseraceConfig::check(const TopicHierarchy& hierarchy) const {
  std::set<std::string> subtopics;
  for (const std::string& topic : hierarchy.topics()) {
    for (const std::string& s : hierarchy.subtopics_of(topic)) subtopics.insert(s);
  }
  for (const std::string& s : horserace_subtopics) {
    if (!subtopics.count(s)) throw InvalidArgument(fmt::format("unknown horse-race subtopic '{}'", s));
  }
  for (const std::string& t : policy_topics) {
    if (!hierarchy.has_topic(t)) throw InvalidArgument(fmt::format("unknown policy topic '{}'", t));
  }
}

std::vector<HorseraceRow> horserace_vs_policy(const AggregateQuery& filter, const Corpus& corpus,
                                              const HorseraceConfig& config, const TopicHierarchy& hierarchy) {
  config.check(hierarchy);
  if (filter.from && filter.to && *filter.from > *filter.to) throw InvalidArgument("date range is empty");
  std::map<std::string, HorseraceRow> rows;
  for (const AnalyzedArticle& a : corpus.articles) {
    if (!matches(filter, a)) continue;
    const LabelSet& l = *a.labels(filter.use_overlays);
    bool horserace = config.horserace_subtopics.count(l.subtopic) > 0;
    bool policy = config.policy_topics.count(l.topic) > 0;
    if (!horserace && !policy) continue;
    HorseraceRow& row = rows[a.article.publisher_id];
    row.publisher_id = a.article.publisher_id;
    row.horserace += horserace;
    row.policy += policy;
  }
  std::vector<HorseraceRow> out;
  for (auto& [id, row] : rows) out.push_back(row);
  return out;
}

std::string format_table(const AggregateTable& table) {
  std::vector<std::string> header;
  for (GroupKey k : table.group_by) header.emplace_back(to_string(k));
  bool has_label = std::any_of(table.rows.begin(), table.rows.end(), [](const auto& r) { return !r.label.empty(); });
  if (has_label) header.emplace_back("theme");
  header.emplace_back(to_string(table.measure));
  header.emplace_back("n");
  std::vector<std::vector<std::string>> body;
  for (const AggregateRow& r : table.rows) {
    std::vector<std::string> line = r.key;
    if (has_label) line.push_back(r.label);
    line.push_back(format_value(table.measure, r.value));
    line.push_back(std::to_string(r.n));
    body.push_back(std::move(line));
  }
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& line : body) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::string out;
  auto emit = [&](const std::vector<std::string>& line) {
    std::string s;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) s += "  ";
      s += fmt::format("{:<{}}", line[i], width[i]);
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out += s + "\n";
  };
  emit(header);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.push_back(std::string(w, '-'));
  emit(rule);
  for (const auto& line : body) emit(line);
  return out;
}

std::string to_csv(const AggregateTable& table) {
  std::vector<std::string> header;
  for (GroupKey k : table.group_by) header.emplace_back(to_string(k));
  header.emplace_back("label");
  header.emplace_back(to_string(table.measure));
  header.emplace_back("n");
  std::string out = csv::format_row(header) + "\n";
  for (const AggregateRow& r : table.rows) {
    std::vector<std::string> line = r.key;
    line.push_back(r.label);
    line.push_back(table.measure == Measure::kCount ? format_value(table.measure, r.value)
                                                    : fmt::format("{:.17g}", r.value));
    line.push_back(std::to_string(r.n));
    out += csv::format_row(line) + "\n";
  }
  return out;
}

Json to_document(const AggregateTable& table) {
  Json group = Json::array();
  for (GroupKey k : table.group_by) group.push_back(to_string(k));
  Json rows = Json::array();
  for (const AggregateRow& r : table.rows) {
    Json row{{"key", r.key}, {"value", r.value}, {"n", r.n}};
    if (!r.label.empty()) row["label"] = r.label;
    rows.push_back(row);
  }
  return Json{{"group_by", group}, {"measure", to_string(table.measure)}, {"rows", rows}};
}

std::string render_bar_svg(const AggregateTable& table, const std::string& title) {
  constexpr int kBarHeight = 18, kGap = 6, kLabelWidth = 320, kPlotWidth = 400, kTop = 40;
  double lo = 0.0, hi = 0.0;
  for (const AggregateRow& r : table.rows) {
    lo = std::min(lo, r.value);
    hi = std::max(hi, r.value);
  }
  if (table.measure != Measure::kCount) {
    double bound = table.measure == Measure::kMeanFocus ? 1.0 : 5.0;
    lo = -bound;
    hi = bound;
  }
  if (hi == lo) hi = lo + 1.0;
  auto x_of = [&](double v) { return kLabelWidth + (v - lo) / (hi - lo) * kPlotWidth; };
  int height = kTop + static_cast<int>(table.rows.size()) * (kBarHeight + kGap) + 20;
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
      "font-size=\"12\">\n",
      kLabelWidth + kPlotWidth + 80, height);
  out += fmt::format("<text x=\"10\" y=\"20\" font-size=\"14\">{}</text>\n", xml_escape(title));
  double zero = x_of(0.0);
  out += fmt::format("<line x1=\"{:.1f}\" y1=\"{}\" x2=\"{:.1f}\" y2=\"{}\" stroke=\"#444\"/>\n", zero, kTop - 4, zero,
                     height - 16);
  int y = kTop;
  for (const AggregateRow& r : table.rows) {
    double x = x_of(r.value);
    double left = std::min(zero, x), w = std::abs(x - zero);
    const char* fill = r.value < 0 ? "#3b6fb6" : "#c0392b";
    if (table.measure == Measure::kCount) fill = "#7f8c8d";
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n", kLabelWidth - 8, y + 13,
                       xml_escape(row_label(r)));
    out += fmt::format("<rect x=\"{:.1f}\" y=\"{}\" width=\"{:.1f}\" height=\"{}\" fill=\"{}\"/>\n", left, y, w,
                       kBarHeight, fill);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{}\">{} (n={})</text>\n", std::max(x, zero) + 4, y + 13,
                       format_value(table.measure, r.value), r.n);
    y += kBarHeight + kGap;
  }
  out += "</svg>\n";
  return out;
}

std::string render_delta_svg(const HeadlineDeltaReport& report, bool tone) {
  constexpr int kSize = 400, kMargin = 50;
  auto pos = [&](double v) { return kMargin + (v + 5.0) / 10.0 * kSize; };
  auto neg = [&](double v) { return kMargin + (5.0 - v) / 10.0 * kSize; };
  std::string axis = tone ? "tone" : "lean";
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" font-family=\"sans-serif\" "
      "font-size=\"11\">\n",
      kSize + 2 * kMargin);
  out += fmt::format("<rect x=\"{0}\" y=\"{0}\" width=\"{1}\" height=\"{1}\" fill=\"none\" stroke=\"#444\"/>\n", kMargin,
                     kSize);
  out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{1}\" y2=\"{0}\" stroke=\"#999\" stroke-dasharray=\"4\"/>\n",
                     kMargin, kMargin + kSize);
  out += fmt::format("<text x=\"{}\" y=\"{}\">article {}</text>\n", kMargin + kSize / 2 - 30, kMargin + kSize + 30, axis);
  out += fmt::format("<text x=\"10\" y=\"{}\">headline {}</text>\n", kMargin - 10, axis);
  auto dot = [&](const DeltaPoint& p, const char* fill) {
    double x = pos(tone ? p.article_tone : p.article_lean);
    double y = neg(tone ? p.headline_tone : p.headline_lean);
    out += fmt::format("<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"5\" fill=\"{}\"/>\n", x, y, fill);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{} (n={})</text>\n", x + 7, y + 4, xml_escape(p.category), p.n);
  };
  for (const DeltaPoint& p : report.categories) dot(p, "#2c7fb8");
  if (report.overall.n) dot(report.overall, "#d95f0e");
  out += "</svg>\n";
  return out;
}

std::string format_table(const std::vector<HorseraceRow>& rows) {
  std::size_t w = std::string_view("publisher").size();
  for (const HorseraceRow& r : rows) w = std::max(w, r.publisher_id.size());
  std::string out = fmt::format("{:<{}}  {:>9}  {:>6}\n", "publisher", w, "horserace", "policy");
  for (const HorseraceRow& r : rows) out += fmt::format("{:<{}}  {:>9}  {:>6}\n", r.publisher_id, w, r.horserace, r.policy);
  return out;
}

}  // namespace biaslens

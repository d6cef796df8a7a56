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

#include "biaslens/validation/metrics.hpp"

#include <fmt/format.h>

#include <cmath>

namespace biaslens {

MeanSd mean_and_population_sd(const std::vector<double>& values) {
  if (values.empty()) throw InvalidArgument("mean of an empty list");
  double n = static_cast<double>(values.size());
  double sum = 0;
  for (double v : values) sum += v;
  MeanSd out;
  out.mean = sum / n;
  double ss = 0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.sd = std::sqrt(ss / n);
  return out;
}

AgreementReport agreement_report(const std::vector<KindedResponse>& responses, TaskKind dimension) {
  AgreementReport report;
  report.dimension = dimension;
  std::map<std::string, std::map<Verdict, std::size_t>> counts;
  std::map<std::string, std::size_t> totals;
  for (const KindedResponse& r : responses) {
    if (r.kind != dimension) continue;
    ++counts[r.response.annotator_id][r.response.verdict];
    ++totals[r.response.annotator_id];
    ++report.n;
  }
  if (report.n == 0) throw InvalidArgument(fmt::format("no responses for {}", to_string(dimension)));
  std::vector<Verdict> levels;
  for (Verdict v : {Verdict::kAgree, Verdict::kSomewhatAgree, Verdict::kNeither, Verdict::kSomewhatDisagree,
                    Verdict::kDisagree}) {
    if (verdict_allowed(dimension, v)) levels.push_back(v);
  }
  for (const auto& [annotator, by_verdict] : counts) {
    auto& fractions = report.per_annotator[annotator];
    for (Verdict v : levels) {
      auto it = by_verdict.find(v);
      std::size_t c = it == by_verdict.end() ? 0 : it->second;
      fractions[v] = static_cast<double>(c) / static_cast<double>(totals[annotator]);
    }
  }
  for (Verdict v : levels) {
    std::vector<double> values;
    for (const auto& [annotator, fractions] : report.per_annotator) values.push_back(fractions.at(v));
    report.levels.push_back({v, mean_and_population_sd(values)});
  }
  return report;
}

Json to_document(const AgreementReport& r) {
  Json levels = Json::array();
  for (const VerdictShare& s : r.levels) {
    levels.push_back({{"verdict", to_string(s.verdict)}, {"mean", s.across_annotators.mean}, {"sd", s.across_annotators.sd}});
  }
  Json annotators = Json::object();
  for (const auto& [a, fractions] : r.per_annotator) {
    Json f = Json::object();
    for (const auto& [v, x] : fractions) f[std::string(to_string(v))] = x;
    annotators[a] = f;
  }
  return Json{{"dimension", to_string(r.dimension)}, {"n", r.n}, {"levels", levels}, {"per_annotator", annotators}};
}

std::size_t ConfusionMatrix::trace() const {
  std::size_t t = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) t += counts[i][i];
  return t;
}

double ConfusionMatrix::accuracy() const {
  return total == 0 ? 0.0 : static_cast<double>(trace()) / static_cast<double>(total);
}

ConfusionMatrix confusion_matrix(const std::vector<std::pair<std::string, std::string>>& pairs,
                                 const std::vector<std::string>& label_space) {
  if (pairs.empty()) throw InvalidArgument("confusion matrix of no pairs");
  std::map<std::string, std::size_t> index;
  for (const std::string& l : label_space) {
    if (!index.emplace(l, index.size()).second) throw InvalidArgument(fmt::format("duplicate label '{}'", l));
  }
  ConfusionMatrix m;
  m.labels = label_space;
  m.counts.assign(label_space.size(), std::vector<std::size_t>(label_space.size(), 0));
  for (const auto& [model, human] : pairs) {
    auto r = index.find(model);
    auto c = index.find(human);
    if (r == index.end()) throw InvalidArgument(fmt::format("label '{}' outside the label space", model));
    if (c == index.end()) throw InvalidArgument(fmt::format("label '{}' outside the label space", human));
    ++m.counts[r->second][c->second];
    ++m.total;
  }
  return m;
}

Json to_document(const ConfusionMatrix& m) {
  return Json{{"labels", m.labels}, {"counts", m.counts}, {"total", m.total}, {"accuracy", m.accuracy()}};
}

ClusterPrf cluster_prf(const std::map<std::string, std::string>& assignments,
                       const std::map<std::string, std::optional<std::string>>& verdicts,
                       const std::set<std::string>& events) {
  ClusterPrf out;
  for (const auto& [article, event] : assignments) {
    if (!events.count(event)) throw InvalidArgument(fmt::format("assignment to unknown event '{}'", event));
    auto v = verdicts.find(article);
    if (v == verdicts.end()) throw InvalidArgument(fmt::format("clustered article '{}' has no verdict", article));
    ++out.clustered;
    if (v->second == event) ++out.confirmed;
  }
  for (const auto& [article, event] : verdicts) {
    if (!event) continue;
    if (!events.count(*event)) throw InvalidArgument(fmt::format("verdict names unknown event '{}'", *event));
    ++out.true_members;
  }
  if (out.clustered == 0) throw InvalidArgument("precision undefined: no clustered articles");
  if (out.true_members == 0) throw InvalidArgument("recall undefined: no event members identified");
  out.precision = static_cast<double>(out.confirmed) / static_cast<double>(out.clustered);
  out.recall = static_cast<double>(out.confirmed) / static_cast<double>(out.true_members);
  out.f1 = out.precision + out.recall == 0 ? 0.0 : 2 * out.precision * out.recall / (out.precision + out.recall);
  return out;
}

Json to_document(const ClusterPrf& p) {
  return Json{{"precision", p.precision}, {"recall", p.recall},       {"f1", p.f1},
              {"clustered", p.clustered}, {"confirmed", p.confirmed}, {"true_members", p.true_members}};
}

}  // namespace biaslens

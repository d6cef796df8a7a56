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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "biaslens/core/validation_types.hpp"

namespace biaslens {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // population standard deviation
};

// Throws InvalidArgument on an empty list.
MeanSd mean_and_population_sd(const std::vector<double>& values);

struct VerdictShare {
  Verdict verdict = Verdict::kAgree;
  MeanSd across_annotators;
};

struct AgreementReport {
  TaskKind dimension = TaskKind::kArticleLean;
  std::vector<VerdictShare> levels;  // the verdicts legal for the dimension
  std::map<std::string, std::map<Verdict, double>> per_annotator;  // fractions summing to 1
  std::size_t n = 0;                 // responses counted
};

struct KindedResponse {
  TaskKind kind = TaskKind::kArticleLean;
  ValidationResponse response;
};

// Responses of other kinds are ignored. Throws InvalidArgument when none
// remain.
AgreementReport agreement_report(const std::vector<KindedResponse>& responses, TaskKind dimension);
Json to_document(const AgreementReport& report);

// Rows are model labels, columns human labels, both in label_space order.
struct ConfusionMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<std::size_t>> counts;
  std::size_t total = 0;

  std::size_t trace() const;
  double accuracy() const;
};

// Throws InvalidArgument on empty input or a label outside label_space.
ConfusionMatrix confusion_matrix(const std::vector<std::pair<std::string, std::string>>& model_and_human,
                                 const std::vector<std::string>& label_space);
Json to_document(const ConfusionMatrix& matrix);

struct ClusterPrf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t clustered = 0;
  std::size_t confirmed = 0;
  std::size_t true_members = 0;
};

// assignments: clustered article -> event. verdicts: article -> the event a
// validator placed it in, or nullopt for none. Every clustered article needs
// a verdict; every event named must be in `events`. Throws InvalidArgument,
// including when precision or recall is undefined.
ClusterPrf cluster_prf(const std::map<std::string, std::string>& assignments,
                       const std::map<std::string, std::optional<std::string>>& verdicts,
                       const std::set<std::string>& events);
Json to_document(const ClusterPrf& prf);

}  // namespace biaslens

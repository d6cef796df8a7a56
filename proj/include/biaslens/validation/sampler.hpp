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
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "biaslens/core/schema.hpp"

namespace biaslens {

struct ScoreBucket {
  int lo = 0;  // inclusive
  int hi = 0;  // inclusive
};

struct StratificationSpec {
  static constexpr std::size_t kBuckets = 5;
  std::array<ScoreBucket, kBuckets> lean_buckets{{{-5, -4}, {-3, -2}, {-1, 1}, {2, 3}, {4, 5}}};
  std::array<ScoreBucket, kBuckets> tone_buckets{{{-5, -4}, {-3, -2}, {-1, 1}, {2, 3}, {4, 5}}};
  std::size_t per_cell = 2;

  // Buckets must tile [-5, 5] in order; per_cell >= 1.
  void check() const;
  std::size_t lean_bucket(int lean) const;
  std::size_t tone_bucket(int tone) const;
};

StratificationSpec stratification_spec_from_json(const Json& doc);

struct SampleCandidate {
  std::string article_id;
  int lean = 0;
  int tone = 0;
};

struct SampledItem {
  SampleCandidate candidate;
  std::size_t lean_bucket = 0;
  std::size_t tone_bucket = 0;
};

struct CellShortfall {
  std::size_t lean_bucket = 0;
  std::size_t tone_bucket = 0;
  std::size_t available = 0;
  std::size_t wanted = 0;
};

struct SampleBatch {
  std::uint64_t seed = 0;
  std::vector<SampledItem> items;  // cell order, lean bucket major
  std::vector<CellShortfall> underfilled;
};

// Uniform integer in [0, n) by rejection; independent of the standard
// library's distribution implementation.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n);

template <typename T>
void portable_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

// Within a cell, picks cycle over the distinct (lean, tone) pairs present so
// the underlying 11-point values stay balanced. Deterministic for a seed and
// independent of candidate order. Throws InvalidArgument on an empty or
// duplicated candidate list.
SampleBatch sample_stratified(std::vector<SampleCandidate> candidates, const StratificationSpec& spec,
                              std::uint64_t seed);

}  // namespace biaslens

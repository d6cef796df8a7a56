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

#include "biaslens/validation/sampler.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <limits>
#include <map>

namespace biaslens {

namespace {

void check_buckets(const std::array<ScoreBucket, StratificationSpec::kBuckets>& buckets, const char* name) {
  int next = LikertScore::kMin;
  for (const ScoreBucket& b : buckets) {
    if (b.lo != next || b.hi < b.lo) throw InvalidArgument(fmt::format("{} buckets do not tile [-5, 5]", name));
    next = b.hi + 1;
  }
  if (next != LikertScore::kMax + 1) throw InvalidArgument(fmt::format("{} buckets do not tile [-5, 5]", name));
}

std::size_t bucket_of(const std::array<ScoreBucket, StratificationSpec::kBuckets>& buckets, int v) {
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    if (v >= buckets[i].lo && v <= buckets[i].hi) return i;
  }
  throw InvalidArgument(fmt::format("score {} outside every bucket", v));
}

}  // namespace

void StratificationSpec::check() const {
  check_buckets(lean_buckets, "lean");
  check_buckets(tone_buckets, "tone");
  if (per_cell < 1) throw InvalidArgument("per_cell must be positive");
}

std::size_t StratificationSpec::lean_bucket(int lean) const { return bucket_of(lean_buckets, lean); }
std::size_t StratificationSpec::tone_bucket(int tone) const { return bucket_of(tone_buckets, tone); }

StratificationSpec stratification_spec_from_json(const Json& doc) {
  StratificationSpec spec;
  auto read = [&](const char* field, std::array<ScoreBucket, StratificationSpec::kBuckets>& out) {
    if (!doc.contains(field)) return;
    const Json& list = doc[field];
    if (!list.is_array() || list.size() != StratificationSpec::kBuckets) {
      throw SchemaError(field, "wrong-shape", "expected five [lo, hi] pairs");
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = {list[i].at(0).get<int>(), list[i].at(1).get<int>()};
  };
  read("lean_buckets", spec.lean_buckets);
  read("tone_buckets", spec.tone_buckets);
  spec.per_cell = doc.value("per_cell", spec.per_cell);
  spec.check();
  return spec;
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  if (n == 0) throw InvalidArgument("uniform_below(0)");
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  for (;;) {
    std::uint64_t x = rng();
    if (x < limit) return x % n;
  }
}

SampleBatch sample_stratified(std::vector<SampleCandidate> candidates, const StratificationSpec& spec,
                              std::uint64_t seed) {
  spec.check();
  if (candidates.empty()) throw InvalidArgument("no labeled articles to sample");
  std::sort(candidates.begin(), candidates.end(),
            [](const SampleCandidate& a, const SampleCandidate& b) { return a.article_id < b.article_id; });
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].article_id == candidates[i - 1].article_id) {
      throw InvalidArgument(fmt::format("duplicate candidate '{}'", candidates[i].article_id));
    }
  }

  // cell -> (lean, tone) -> candidates
  using Pair = std::pair<int, int>;
  std::map<std::pair<std::size_t, std::size_t>, std::map<Pair, std::vector<SampleCandidate>>> cells;
  for (SampleCandidate& c : candidates) {
    cells[{spec.lean_bucket(c.lean), spec.tone_bucket(c.tone)}][{c.lean, c.tone}].push_back(std::move(c));
  }

  SampleBatch batch;
  batch.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::size_t lb = 0; lb < StratificationSpec::kBuckets; ++lb) {
    for (std::size_t tb = 0; tb < StratificationSpec::kBuckets; ++tb) {
      auto it = cells.find({lb, tb});
      std::vector<std::vector<SampleCandidate>> groups;
      std::size_t available = 0;
      if (it != cells.end()) {
        for (auto& [pair, members] : it->second) {
          portable_shuffle(members, rng);
          available += members.size();
          groups.push_back(members);
        }
      }
      portable_shuffle(groups, rng);
      std::size_t taken = 0;
      for (std::size_t round = 0; taken < spec.per_cell && taken < available; ++round) {
        for (auto& g : groups) {
          if (taken == spec.per_cell) break;
          if (round < g.size()) {
            batch.items.push_back({g[round], lb, tb});
            ++taken;
          }
        }
      }
      if (taken < spec.per_cell) batch.underfilled.push_back({lb, tb, available, spec.per_cell});
    }
  }
  return batch;
}

}  // namespace biaslens

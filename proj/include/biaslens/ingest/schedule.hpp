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

#include <string>
#include <vector>

#include "biaslens/core/registry.hpp"

namespace biaslens {

struct SnapshotJob {
  std::string publisher_id;
  CivilDate date;
  int minutes_local = 0;
  Timestamp due_utc;

  SnapshotRef ref() const { return {publisher_id, due_utc, date}; }
  friend bool operator==(const SnapshotJob&, const SnapshotJob&) = default;
};

// All capture jobs of one local day, ordered by due time then publisher.
std::vector<SnapshotJob> plan_day(CivilDate day, const std::vector<Publisher>& publishers,
                                  const SnapshotSpec& spec);

// Cron-like trigger over the snapshot schedule.
class SnapshotScheduler {
 public:
  SnapshotScheduler(PublisherRegistry registry, SnapshotSpec spec);

  // Jobs with due time in (from, to], across local-day boundaries.
  std::vector<SnapshotJob> due_between(Timestamp from, Timestamp to) const;

 private:
  PublisherRegistry registry_;
  SnapshotSpec spec_;
};

}  // namespace biaslens

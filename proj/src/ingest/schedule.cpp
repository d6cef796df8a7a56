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

#include "biaslens/ingest/schedule.hpp"

#include <algorithm>

namespace biaslens {

std::vector<SnapshotJob> plan_day(CivilDate day, const std::vector<Publisher>& publishers, const SnapshotSpec& spec) {
  spec.check();
  TimeZone zone(spec.timezone_rule);
  std::vector<SnapshotJob> jobs;
  for (int minutes : spec.times_local) {
    Timestamp due = zone.to_utc(day, minutes);
    for (const Publisher& p : publishers) {
      if (p.enabled) jobs.push_back({p.id, day, minutes, due});
    }
  }
  std::stable_sort(jobs.begin(), jobs.end(), [](const SnapshotJob& a, const SnapshotJob& b) {
    if (a.due_utc != b.due_utc) return a.due_utc < b.due_utc;
    return a.publisher_id < b.publisher_id;
  });
  return jobs;
}

SnapshotScheduler::SnapshotScheduler(PublisherRegistry registry, SnapshotSpec spec)
    : registry_(std::move(registry)), spec_(std::move(spec)) {
  spec_.check();
}

std::vector<SnapshotJob> SnapshotScheduler::due_between(Timestamp from, Timestamp to) const {
  std::vector<SnapshotJob> out;
  if (to <= from) return out;
  TimeZone zone(spec_.timezone_rule);
  using std::chrono::days;
  std::chrono::sys_days first = std::chrono::sys_days(zone.local_date(from)) - days(1);
  std::chrono::sys_days last = std::chrono::sys_days(zone.local_date(to)) + days(1);
  std::vector<Publisher> publishers = registry_.enabled();
  for (std::chrono::sys_days d = first; d <= last; d += days(1)) {
    for (SnapshotJob& job : plan_day(CivilDate(d), publishers, spec_)) {
      if (job.due_utc > from && job.due_utc <= to) out.push_back(std::move(job));
    }
  }
  return out;
}

}  // namespace biaslens

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

#include <chrono>
#include <functional>
#include <string>
#include <string_view>

namespace biaslens {

using Timestamp = std::chrono::sys_seconds;
using CivilDate = std::chrono::year_month_day;

// "2024-10-01T10:00:00Z"
std::string format_timestamp(Timestamp t);
// Accepts "YYYY-MM-DDTHH:MM:SSZ" and "YYYY-MM-DDTHH:MM:SS+hh:mm". Throws
// InvalidArgument on anything else.
Timestamp parse_timestamp(std::string_view s);

std::string format_date(CivilDate d);
CivilDate parse_date(std::string_view s);

// Wall-clock source; tests and fixture runs inject a fixed one.
using Clock = std::function<Timestamp()>;
Clock system_clock();
Clock fixed_clock(Timestamp t);

// A local time zone described by a POSIX TZ rule, e.g. "EST5EDT,M3.2.0,M11.1.0".
// Offsets follow POSIX: positive means west of UTC.
class TimeZone {
 public:
  explicit TimeZone(std::string posix_rule);
  static TimeZone eastern();

  const std::string& rule() const { return rule_; }

  // UTC instant of local wall time `minutes_after_midnight` on `day`.
  Timestamp to_utc(CivilDate day, int minutes_after_midnight) const;
  // Local calendar date of a UTC instant.
  CivilDate local_date(Timestamp t) const;

 private:
  std::string rule_;
  std::string boost_rule_;
};

}  // namespace biaslens

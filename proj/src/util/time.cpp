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

#include "biaslens/util/time.hpp"

#include <boost/date_time/local_time/local_time.hpp>
#include <fmt/format.h>

#include <cctype>
#include <charconv>
#include <cstdlib>

#include "biaslens/util/error.hpp"

namespace biaslens {
namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidArgument(fmt::format("malformed date/time: '{}'", whole));
  }
  return v;
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

void expect_shape(std::string_view s, std::string_view shape, std::string_view whole) {
  if (s.size() < shape.size()) throw InvalidArgument(fmt::format("malformed date/time: '{}'", whole));
  for (std::size_t i = 0; i < shape.size(); ++i) {
    bool ok = shape[i] == 'd' ? is_digit(s[i]) : s[i] == shape[i];
    if (!ok) throw InvalidArgument(fmt::format("malformed date/time: '{}'", whole));
  }
}

}  // namespace

std::string format_timestamp(Timestamp t) {
  using namespace std::chrono;
  auto day = floor<days>(t);
  year_month_day ymd{day};
  hh_mm_ss hms{t - day};
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", int(ymd.year()),
                     unsigned(ymd.month()), unsigned(ymd.day()), hms.hours().count(),
                     hms.minutes().count(), hms.seconds().count());
}

Timestamp parse_timestamp(std::string_view s) {
  using namespace std::chrono;
  expect_shape(s, "dddd-dd-ddTdd:dd:dd", s);
  CivilDate d = parse_date(s.substr(0, 10));
  int hh = parse_int(s.substr(11, 2), s), mm = parse_int(s.substr(14, 2), s),
      ss = parse_int(s.substr(17, 2), s);
  if (hh > 23 || mm > 59 || ss > 60) throw InvalidArgument(fmt::format("malformed time: '{}'", s));
  std::string_view zone = s.substr(19);
  seconds offset{0};
  if (zone == "Z") {
  } else if (zone.size() == 6 && (zone[0] == '+' || zone[0] == '-') && zone[3] == ':') {
    int oh = parse_int(zone.substr(1, 2), s), om = parse_int(zone.substr(4, 2), s);
    offset = hours(oh) + minutes(om);
    if (zone[0] == '-') offset = -offset;
  } else {
    throw InvalidArgument(fmt::format("timestamp needs a zone designator: '{}'", s));
  }
  return sys_days{d} + hours(hh) + minutes(mm) + seconds(ss) - offset;
}

std::string format_date(CivilDate d) {
  return fmt::format("{:04d}-{:02d}-{:02d}", int(d.year()), unsigned(d.month()), unsigned(d.day()));
}

CivilDate parse_date(std::string_view s) {
  using namespace std::chrono;
  if (s.size() != 10) throw InvalidArgument(fmt::format("malformed date: '{}'", s));
  expect_shape(s, "dddd-dd-dd", s);
  CivilDate d{year{parse_int(s.substr(0, 4), s)}, month{unsigned(parse_int(s.substr(5, 2), s))},
              day{unsigned(parse_int(s.substr(8, 2), s))}};
  if (!d.ok()) throw InvalidArgument(fmt::format("invalid calendar date: '{}'", s));
  return d;
}

Clock system_clock() {
  return [] { return std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now()); };
}

Clock fixed_clock(Timestamp t) {
  return [t] { return t; };
}

namespace {

// Boost reads offsets as east-positive and the DST offset as a delta from
// standard time; POSIX TZ offsets are west-positive and absolute.
std::string boost_rule(std::string_view posix) {
  std::size_t i = 0;
  auto bad = [&] { return InvalidArgument(fmt::format("bad POSIX time zone rule '{}'", posix)); };
  auto name = [&] {
    std::size_t start = i;
    if (i < posix.size() && posix[i] == '<') {
      std::size_t close = posix.find('>', i);
      if (close == std::string_view::npos) throw bad();
      i = close + 1;
      return std::string(posix.substr(start + 1, close - start - 1));
    }
    while (i < posix.size() && std::isalpha(static_cast<unsigned char>(posix[i]))) ++i;
    if (i - start < 3) throw bad();
    return std::string(posix.substr(start, i - start));
  };
  auto offset_seconds = [&] {
    int sign = 1;
    if (i < posix.size() && (posix[i] == '+' || posix[i] == '-')) sign = posix[i++] == '-' ? -1 : 1;
    int parts[3] = {0, 0, 0};
    for (int p = 0; p < 3; ++p) {
      std::size_t start = i;
      while (i < posix.size() && std::isdigit(static_cast<unsigned char>(posix[i]))) ++i;
      if (i == start) throw bad();
      parts[p] = std::stoi(std::string(posix.substr(start, i - start)));
      if (i >= posix.size() || posix[i] != ':') break;
      ++i;
    }
    return sign * (parts[0] * 3600 + parts[1] * 60 + parts[2]);
  };
  auto format_offset = [](int seconds) {
    char sign = seconds < 0 ? '-' : '+';
    seconds = std::abs(seconds);
    return fmt::format("{}{:02}:{:02}", sign, seconds / 3600, seconds % 3600 / 60);
  };
  std::string std_name = name();
  if (i >= posix.size()) throw bad();
  int std_west = offset_seconds();
  std::string out = std_name + format_offset(-std_west);
  if (i == posix.size()) return out;
  std::string dst_name = name();
  int dst_west = std_west - 3600;
  if (i < posix.size() && posix[i] != ',') dst_west = offset_seconds();
  out += dst_name + format_offset(std_west - dst_west);
  if (i < posix.size()) out += std::string(posix.substr(i));
  return out;
}

}  // namespace

TimeZone::TimeZone(std::string posix_rule) : rule_(std::move(posix_rule)) {
  try {
    boost_rule_ = boost_rule(rule_);
    boost::local_time::posix_time_zone probe(boost_rule_);
  } catch (const InvalidArgument&) {
    throw;
  } catch (const std::exception& e) {
    throw InvalidArgument(fmt::format("bad POSIX time zone rule '{}': {}", rule_, e.what()));
  }
}

TimeZone TimeZone::eastern() { return TimeZone("EST5EDT,M3.2.0,M11.1.0"); }

Timestamp TimeZone::to_utc(CivilDate day, int minutes_after_midnight) const {
  namespace lt = boost::local_time;
  namespace pt = boost::posix_time;
  lt::time_zone_ptr zone(new lt::posix_time_zone(boost_rule_));
  boost::gregorian::date d(int(day.year()), unsigned(day.month()), unsigned(day.day()));
  lt::local_date_time local(d, pt::minutes(minutes_after_midnight), zone,
                            lt::local_date_time::NOT_DATE_TIME_ON_ERROR);
  if (local.is_not_a_date_time()) {
    // Wall time skipped by a DST transition; use the instant one hour later.
    local = lt::local_date_time(d, pt::minutes(minutes_after_midnight + 60), zone,
                                lt::local_date_time::NOT_DATE_TIME_ON_ERROR);
  }
  pt::ptime utc = local.utc_time();
  pt::time_duration since = utc - pt::ptime(boost::gregorian::date(1970, 1, 1));
  return Timestamp{std::chrono::seconds{since.total_seconds()}};
}

CivilDate TimeZone::local_date(Timestamp t) const {
  namespace lt = boost::local_time;
  namespace pt = boost::posix_time;
  lt::time_zone_ptr zone(new lt::posix_time_zone(boost_rule_));
  pt::ptime utc = pt::from_time_t(t.time_since_epoch().count());
  lt::local_date_time local(utc, zone);
  boost::gregorian::date d = local.local_time().date();
  return CivilDate{std::chrono::year{d.year()}, std::chrono::month{unsigned(d.month())},
                   std::chrono::day{unsigned(d.day())}};
}

}  // namespace biaslens

#pragma once

#include <cstdint>
#include <set>
#include <string>

namespace stocksig {

// Calendar date, proleptic Gregorian.
struct Date {
  int y = 0;
  int m = 0;  // 1..12
  int d = 0;  // 1..31

  auto operator<=>(const Date&) const = default;
};

// Days since 1970-01-01 (negative before). Howard Hinnant's civil-date
// algorithm, exact over the full int range we care about.
int64_t days_from_civil(const Date& date);
Date civil_from_days(int64_t days);

// 0 = Monday .. 6 = Sunday.
int weekday_monday0(const Date& date);
bool is_weekend(const Date& date);

// Month index for window arithmetic: year*12 + (month-1).
inline int month_index(const Date& d) { return d.y * 12 + (d.m - 1); }

// Exchange-local minute instant: days_from_civil(date) * 1440 + minute-of-day.
// All labeling, bar, and trading arithmetic runs on this scale.
using MinuteStamp = int64_t;

constexpr int kMinutesPerDay = 1440;
constexpr int kSessionOpenMinute = 9 * 60 + 30;   // 09:30
constexpr int kSessionCloseMinute = 16 * 60;      // 16:00

MinuteStamp make_stamp(const Date& date, int hour, int minute);
Date stamp_date(MinuteStamp s);
int stamp_minute_of_day(MinuteStamp s);

// "YYYY-MM-DDTHH:MM" (exchange-local, no zone designator).
std::string format_stamp(MinuteStamp s);
std::string format_date(const Date& d);

// Strict "YYYY-MM-DD". Throws DataError on malformed input.
Date parse_date(const std::string& text);

// Inverse of format_stamp: strict "YYYY-MM-DDTHH:MM", exchange-local.
MinuteStamp parse_stamp(const std::string& text);

// ISO-8601 with seconds, "Z" or "+HH:MM"/"-HH:MM" offset, optional
// fractional seconds (ignored). Returns UTC seconds since the epoch.
// Throws DataError on malformed input.
int64_t parse_iso8601_utc(const std::string& text);
std::string format_iso8601_utc(int64_t utc_seconds);

// US/Eastern conversion with the post-2007 DST rule (second Sunday of
// March 07:00 UTC through first Sunday of November 06:00 UTC), computed
// from civil arithmetic; no OS timezone database involved.
int64_t eastern_offset_seconds(int64_t utc_seconds);
int64_t utc_to_eastern_seconds(int64_t utc_seconds);
MinuteStamp utc_to_eastern_stamp(int64_t utc_seconds);

// Inverse conversion for a wall-clock instant known to be Eastern local
// time. Unambiguous outside the 01:00-03:00 transition window, which no
// market-hours instant ever falls in.
int64_t eastern_to_utc_seconds(int64_t eastern_wall_seconds);

// Trading days derived from the distinct dates of a bar file. Sessions
// are fixed 09:30-16:00.
class TradingCalendar {
 public:
  TradingCalendar() = default;
  explicit TradingCalendar(std::set<Date> days) : days_(std::move(days)) {}

  bool is_trading_day(const Date& d) const { return days_.count(d) > 0; }

  // True for 09:30 <= t <= 16:00 on a trading day. The 16:00 endpoint is
  // included so a position opened at 15:00 can be valued at the close.
  bool in_session(MinuteStamp s) const;

  const std::set<Date>& days() const { return days_; }
  bool empty() const { return days_.empty(); }

 private:
  std::set<Date> days_;
};

}  // namespace stocksig

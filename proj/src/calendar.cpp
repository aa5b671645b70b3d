#include "stocksig/calendar.hpp"

#include <cstdio>
#include <cstdlib>

#include "stocksig/errors.hpp"

namespace stocksig {

int64_t days_from_civil(const Date& date) {
  int64_t y = date.y;
  const int m = date.m;
  const int d = date.d;
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

Date civil_from_days(int64_t z) {
  z += 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t y = static_cast<int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;
  const unsigned m = mp + (mp < 10 ? 3 : -9);
  return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m),
              static_cast<int>(d)};
}

int weekday_monday0(const Date& date) {
  // 1970-01-01 was a Thursday (index 3 with Monday = 0).
  int64_t days = days_from_civil(date);
  int64_t w = (days + 3) % 7;
  if (w < 0) w += 7;
  return static_cast<int>(w);
}

bool is_weekend(const Date& date) { return weekday_monday0(date) >= 5; }

MinuteStamp make_stamp(const Date& date, int hour, int minute) {
  return days_from_civil(date) * kMinutesPerDay + hour * 60 + minute;
}

Date stamp_date(MinuteStamp s) {
  int64_t days = s / kMinutesPerDay;
  if (s < 0 && s % kMinutesPerDay != 0) --days;
  return civil_from_days(days);
}

int stamp_minute_of_day(MinuteStamp s) {
  int64_t m = s % kMinutesPerDay;
  if (m < 0) m += kMinutesPerDay;
  return static_cast<int>(m);
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.y, d.m, d.d);
  return buf;
}

std::string format_stamp(MinuteStamp s) {
  Date d = stamp_date(s);
  int mod = stamp_minute_of_day(s);
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d", d.y, d.m, d.d,
                mod / 60, mod % 60);
  return buf;
}

namespace {

bool all_digits(const std::string& s, size_t from, size_t to) {
  if (to > s.size()) return false;
  for (size_t i = from; i < to; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

int to_int(const std::string& s, size_t from, size_t to) {
  int v = 0;
  for (size_t i = from; i < to; ++i) v = v * 10 + (s[i] - '0');
  return v;
}

bool valid_ymd(int y, int m, int d) {
  if (m < 1 || m > 12 || d < 1) return false;
  static const int dim[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  int max_d = dim[m - 1];
  bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  if (m == 2 && leap) max_d = 29;
  return d <= max_d;
}

}  // namespace

Date parse_date(const std::string& text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
      !all_digits(text, 0, 4) || !all_digits(text, 5, 7) ||
      !all_digits(text, 8, 10)) {
    throw DataError("malformed date: '" + text + "' (expected YYYY-MM-DD)");
  }
  Date d{to_int(text, 0, 4), to_int(text, 5, 7), to_int(text, 8, 10)};
  if (!valid_ymd(d.y, d.m, d.d)) {
    throw DataError("invalid calendar date: '" + text + "'");
  }
  return d;
}

MinuteStamp parse_stamp(const std::string& text) {
  if (text.size() != 16 || text[10] != 'T' || text[13] != ':' ||
      !all_digits(text, 11, 13) || !all_digits(text, 14, 16)) {
    throw DataError("malformed local timestamp: '" + text +
                    "' (expected YYYY-MM-DDTHH:MM)");
  }
  Date d = parse_date(text.substr(0, 10));
  int hh = to_int(text, 11, 13);
  int mm = to_int(text, 14, 16);
  if (hh > 23 || mm > 59) {
    throw DataError("local timestamp out of range: '" + text + "'");
  }
  return make_stamp(d, hh, mm);
}

int64_t parse_iso8601_utc(const std::string& text) {
  // YYYY-MM-DDTHH:MM:SS[.frac](Z|+HH:MM|-HH:MM)
  if (text.size() < 20 || (text[10] != 'T' && text[10] != ' ')) {
    throw DataError("malformed timestamp: '" + text + "'");
  }
  Date d = parse_date(text.substr(0, 10));
  if (text[13] != ':' || text[16] != ':' || !all_digits(text, 11, 13) ||
      !all_digits(text, 14, 16) || !all_digits(text, 17, 19)) {
    throw DataError("malformed timestamp: '" + text + "'");
  }
  int hh = to_int(text, 11, 13);
  int mm = to_int(text, 14, 16);
  int ss = to_int(text, 17, 19);
  if (hh > 23 || mm > 59 || ss > 60) {
    throw DataError("timestamp out of range: '" + text + "'");
  }
  size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    size_t start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == start) throw DataError("malformed timestamp: '" + text + "'");
  }
  if (pos >= text.size()) {
    throw DataError("timestamp missing zone designator: '" + text + "'");
  }
  int64_t offset = 0;
  if (text[pos] == 'Z') {
    if (pos + 1 != text.size()) {
      throw DataError("malformed timestamp: '" + text + "'");
    }
  } else if (text[pos] == '+' || text[pos] == '-') {
    if (pos + 6 != text.size() || text[pos + 3] != ':' ||
        !all_digits(text, pos + 1, pos + 3) ||
        !all_digits(text, pos + 4, pos + 6)) {
      throw DataError("malformed timestamp offset: '" + text + "'");
    }
    int oh = to_int(text, pos + 1, pos + 3);
    int om = to_int(text, pos + 4, pos + 6);
    offset = static_cast<int64_t>(oh) * 3600 + om * 60;
    if (text[pos] == '-') offset = -offset;
  } else {
    throw DataError("malformed timestamp: '" + text + "'");
  }
  int64_t local = days_from_civil(d) * 86400 + hh * 3600 + mm * 60 + ss;
  return local - offset;
}

std::string format_iso8601_utc(int64_t utc_seconds) {
  int64_t days = utc_seconds / 86400;
  int64_t sod = utc_seconds % 86400;
  if (sod < 0) {
    sod += 86400;
    --days;
  }
  Date d = civil_from_days(days);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", d.y, d.m,
                d.d, static_cast<int>(sod / 3600),
                static_cast<int>((sod % 3600) / 60),
                static_cast<int>(sod % 60));
  return buf;
}

namespace {

// UTC second of the n-th given weekday of a month at a given UTC hour.
int64_t nth_weekday_utc(int year, int month, int nth, int weekday_mon0,
                        int utc_hour) {
  Date first{year, month, 1};
  int w = weekday_monday0(first);
  int delta = (weekday_mon0 - w + 7) % 7;
  int day = 1 + delta + (nth - 1) * 7;
  return days_from_civil(Date{year, month, day}) * 86400 +
         static_cast<int64_t>(utc_hour) * 3600;
}

}  // namespace

int64_t eastern_offset_seconds(int64_t utc_seconds) {
  int year = civil_from_days(utc_seconds >= 0 ? utc_seconds / 86400
                                              : (utc_seconds - 86399) / 86400)
                 .y;
  // DST: second Sunday of March 02:00 EST = 07:00 UTC, through first
  // Sunday of November 02:00 EDT = 06:00 UTC.
  int64_t dst_start = nth_weekday_utc(year, 3, 2, 6, 7);
  int64_t dst_end = nth_weekday_utc(year, 11, 1, 6, 6);
  bool dst = utc_seconds >= dst_start && utc_seconds < dst_end;
  return dst ? -4 * 3600 : -5 * 3600;
}

int64_t utc_to_eastern_seconds(int64_t utc_seconds) {
  return utc_seconds + eastern_offset_seconds(utc_seconds);
}

MinuteStamp utc_to_eastern_stamp(int64_t utc_seconds) {
  int64_t local = utc_to_eastern_seconds(utc_seconds);
  int64_t minutes = local / 60;
  if (local < 0 && local % 60 != 0) --minutes;
  return minutes;
}

int64_t eastern_to_utc_seconds(int64_t eastern_wall_seconds) {
  for (int64_t off : {-4 * 3600, -5 * 3600}) {
    int64_t utc = eastern_wall_seconds - off;
    if (eastern_offset_seconds(utc) == off) return utc;
  }
  // Spring-forward gap (nonexistent wall time): fall back to EST.
  return eastern_wall_seconds + 5 * 3600;
}

bool TradingCalendar::in_session(MinuteStamp s) const {
  int mod = stamp_minute_of_day(s);
  if (mod < kSessionOpenMinute || mod > kSessionCloseMinute) return false;
  return is_trading_day(stamp_date(s));
}

}  // namespace stocksig

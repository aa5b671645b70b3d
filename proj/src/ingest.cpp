#include "stocksig/ingest.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "stocksig/errors.hpp"
#include "stocksig/io_util.hpp"

namespace stocksig {

namespace {

bool is_ascii_letter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_word_char(char c) {
  return is_ascii_letter(c) || (c >= '0' && c <= '9') || c == '_';
}

}  // namespace

std::set<std::string> extract_cashtags(const std::string& text) {
  std::set<std::string> tags;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '$') continue;
    if (i > 0 && is_word_char(text[i - 1])) continue;
    size_t j = i + 1;
    while (j < text.size() && is_ascii_letter(text[j])) ++j;
    size_t len = j - (i + 1);
    if (len < 1 || len > 5) continue;
    if (j < text.size() && is_word_char(text[j])) continue;
    std::string tag = text.substr(i + 1, len);
    for (char& c : tag) c = static_cast<char>(std::toupper(
        static_cast<unsigned char>(c)));
    tags.insert(tag);
  }
  return tags;
}

ParsedTweets parse_tweets(const std::string& jsonl) {
  ParsedTweets out;
  std::vector<std::string> lines = split_lines(jsonl);
  size_t considered = 0;
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (i == 0 && j.is_object() && j.contains("_meta")) continue;
    ++considered;
    if (j.is_discarded() || !j.is_object()) {
      out.issues.push_back({i + 1, "not a JSON object"});
      continue;
    }
    if (!j.contains("id") || !j.contains("timestamp") || !j.contains("text") ||
        !j["id"].is_string() || !j["timestamp"].is_string() ||
        !j["text"].is_string()) {
      out.issues.push_back({i + 1, "missing or non-string id/timestamp/text"});
      continue;
    }
    Tweet t;
    t.id = j["id"].get<std::string>();
    t.text = j["text"].get<std::string>();
    try {
      t.utc_seconds = parse_iso8601_utc(j["timestamp"].get<std::string>());
    } catch (const DataError& e) {
      out.issues.push_back({i + 1, e.what()});
      continue;
    }
    t.cashtags = extract_cashtags(t.text);
    out.tweets.push_back(std::move(t));
  }
  if (considered > 0 &&
      static_cast<double>(out.issues.size()) >
          0.10 * static_cast<double>(considered)) {
    throw DataError("tweet file looks malformed: " +
                    std::to_string(out.issues.size()) + " of " +
                    std::to_string(considered) +
                    " lines failed to parse (threshold 10%)");
  }
  return out;
}

namespace {

int64_t parse_volume(const std::string& s, size_t row) {
  if (s.empty()) throw DataError("row " + std::to_string(row) +
                                 ": empty volume");
  int64_t v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') {
      throw DataError("row " + std::to_string(row) + ": bad volume '" + s +
                      "'");
    }
    v = v * 10 + (c - '0');
  }
  return v;
}

int parse_hhmm(const std::string& s, size_t row) {
  if (s.size() != 5 || s[2] != ':' || !std::isdigit((unsigned char)s[0]) ||
      !std::isdigit((unsigned char)s[1]) ||
      !std::isdigit((unsigned char)s[3]) ||
      !std::isdigit((unsigned char)s[4])) {
    throw DataError("row " + std::to_string(row) + ": bad time '" + s + "'");
  }
  int hh = (s[0] - '0') * 10 + (s[1] - '0');
  int mm = (s[3] - '0') * 10 + (s[4] - '0');
  if (hh > 23 || mm > 59) {
    throw DataError("row " + std::to_string(row) + ": time out of range '" +
                    s + "'");
  }
  return hh * 60 + mm;
}

}  // namespace

std::vector<MinuteBar> parse_bars(const std::string& csv) {
  std::vector<std::string> lines = split_lines(csv);
  std::vector<MinuteBar> bars;
  bool header_seen = false;
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    size_t row = i + 1;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "date,time,open,high,low,close,volume") {
        throw DataError("row " + std::to_string(row) +
                        ": expected header 'date,time,open,high,low,close,"
                        "volume', got '" + line + "'");
      }
      header_seen = true;
      continue;
    }
    std::vector<std::string> f = split_csv_row(line);
    if (f.size() != 7) {
      throw DataError("row " + std::to_string(row) + ": expected 7 fields, got " +
                      std::to_string(f.size()));
    }
    Date d;
    MinuteBar b;
    try {
      d = parse_date(f[0]);
      int mod = parse_hhmm(f[1], row);
      b.stamp = days_from_civil(d) * kMinutesPerDay + mod;
      b.open = parse_price(f[2]);
      b.high = parse_price(f[3]);
      b.low = parse_price(f[4]);
      b.close = parse_price(f[5]);
      b.volume = parse_volume(f[6], row);
    } catch (const DataError& e) {
      throw DataError("row " + std::to_string(row) + ": " + e.what());
    }
    if (is_weekend(d)) {
      throw DataError("row " + std::to_string(row) + ": weekend date " +
                      f[0]);
    }
    int mod = stamp_minute_of_day(b.stamp);
    if (mod < kSessionOpenMinute || mod > kSessionCloseMinute) {
      throw DataError("row " + std::to_string(row) + ": time " + f[1] +
                      " outside market hours 09:30-16:00");
    }
    if (b.low > b.high || b.open < b.low || b.open > b.high ||
        b.close < b.low || b.close > b.high) {
      throw DataError("row " + std::to_string(row) +
                      ": OHLC ordering violated (low <= open,close <= high)");
    }
    if (!bars.empty()) {
      if (b.stamp == bars.back().stamp) {
        throw DataError("row " + std::to_string(row) +
                        ": duplicate timestamp " + format_stamp(b.stamp));
      }
      if (b.stamp < bars.back().stamp) {
        throw DataError("row " + std::to_string(row) +
                        ": non-monotonic timestamp " + format_stamp(b.stamp));
      }
    }
    bars.push_back(b);
  }
  if (!header_seen) throw DataError("bar file has no header row");
  return bars;
}

std::string serialize_bars(const std::vector<MinuteBar>& bars,
                           const std::vector<std::string>& comments) {
  std::string out;
  for (const std::string& c : comments) {
    out += "# " + c + "\n";
  }
  out += "date,time,open,high,low,close,volume\n";
  char buf[16];
  for (const MinuteBar& b : bars) {
    Date d = stamp_date(b.stamp);
    int mod = stamp_minute_of_day(b.stamp);
    std::snprintf(buf, sizeof(buf), "%02d:%02d", mod / 60, mod % 60);
    out += format_date(d);
    out += ',';
    out += buf;
    out += ',';
    out += format_price(b.open);
    out += ',';
    out += format_price(b.high);
    out += ',';
    out += format_price(b.low);
    out += ',';
    out += format_price(b.close);
    out += ',';
    out += std::to_string(b.volume);
    out += '\n';
  }
  return out;
}

TradingCalendar calendar_from_bars(const std::vector<MinuteBar>& bars) {
  std::set<Date> days;
  for (const MinuteBar& b : bars) days.insert(stamp_date(b.stamp));
  return TradingCalendar(std::move(days));
}

SpamFilterResult spam_filter(const std::vector<Tweet>& tweets,
                             size_t max_cashtags) {
  SpamFilterResult r;
  r.kept.reserve(tweets.size());
  for (const Tweet& t : tweets) {
    if (t.cashtags.size() <= max_cashtags) {
      r.kept.push_back(t);
    } else {
      ++r.removed;
    }
  }
  r.removal_fraction =
      tweets.empty() ? 0.0
                     : static_cast<double>(r.removed) /
                           static_cast<double>(tweets.size());
  return r;
}

std::vector<Tweet> select_for_stock(const std::vector<Tweet>& tweets,
                                    const std::string& ticker) {
  std::vector<Tweet> out;
  for (const Tweet& t : tweets) {
    if (t.cashtags.count(ticker) > 0) out.push_back(t);
  }
  return out;
}

}  // namespace stocksig

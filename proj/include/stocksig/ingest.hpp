#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "stocksig/calendar.hpp"
#include "stocksig/price.hpp"

namespace stocksig {

struct Tweet {
  std::string id;
  int64_t utc_seconds = 0;
  std::string text;
  std::set<std::string> cashtags;  // uppercase tickers

  bool operator==(const Tweet&) const = default;
};

struct MinuteBar {
  MinuteStamp stamp = 0;  // exchange-local minute
  Price4 open = 0;
  Price4 high = 0;
  Price4 low = 0;
  Price4 close = 0;
  int64_t volume = 0;

  bool operator==(const MinuteBar&) const = default;
};

// `$` followed by 1-5 ASCII letters, word-bounded on both sides; stored
// uppercase. `$5` and six-letter runs do not match.
std::set<std::string> extract_cashtags(const std::string& text);

struct ParseIssue {
  size_t line_number = 0;  // 1-based
  std::string message;
};

struct ParsedTweets {
  std::vector<Tweet> tweets;  // file order
  std::vector<ParseIssue> issues;
};

// JSON Lines with fields `id`, `timestamp` (ISO-8601), `text`. A leading
// `{"_meta": ...}` line is provenance and skipped. Malformed lines are
// collected; more than 10% malformed aborts with DataError.
ParsedTweets parse_tweets(const std::string& jsonl);

// CSV with header `date,time,open,high,low,close,volume`; `#` lines are
// comments. Enforces strictly ascending timestamps, OHLC ordering,
// market-hours minutes, and weekday dates; violations throw DataError
// with the offending row number.
std::vector<MinuteBar> parse_bars(const std::string& csv);

std::string serialize_bars(const std::vector<MinuteBar>& bars,
                           const std::vector<std::string>& comments = {});

TradingCalendar calendar_from_bars(const std::vector<MinuteBar>& bars);

struct SpamFilterResult {
  std::vector<Tweet> kept;
  size_t removed = 0;
  double removal_fraction = 0.0;
};

SpamFilterResult spam_filter(const std::vector<Tweet>& tweets,
                             size_t max_cashtags = 2);

std::vector<Tweet> select_for_stock(const std::vector<Tweet>& tweets,
                                    const std::string& ticker);

}  // namespace stocksig

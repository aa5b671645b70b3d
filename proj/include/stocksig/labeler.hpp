#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stocksig/calendar.hpp"
#include "stocksig/ingest.hpp"
#include "stocksig/price.hpp"

namespace stocksig {

enum class SignalClass { Buy, Sell };

const char* to_string(SignalClass c);
SignalClass signal_from_string(const std::string& s);

enum class SkipReason {
  NonTradingDay,
  OutsideMarketHours,
  ExitAfterClose,
  EntryBeforeOpen,
  MissingData,
  UnchangedPrice,
};

const char* to_string(SkipReason r);

struct LabeledDocument {
  std::string tweet_id;
  std::string ticker;
  MinuteStamp stamp = 0;  // exchange-local tweet minute
  std::vector<std::string> tokens;
  SignalClass label = SignalClass::Sell;
  Price4 price_before = 0;  // at stamp - 60m
  Price4 price_at = 0;      // at stamp
  Price4 price_after = 0;   // at stamp + 60m
  int prior_trend = 0;      // 1 iff price_at > price_before
  int64_t hour_volume = 0;  // shares traded in [stamp - 60m, stamp)
  int volume_high = 0;      // 1 iff hour_volume > training-period mean
  int weekday = 0;          // 0 = Monday .. 4 = Friday
  std::string split;        // "train" | "validation" | "test"

  bool operator==(const LabeledDocument&) const = default;
};

// Close of the bar at `instant`, else the latest earlier bar of the same
// session (last observation carried forward). Throws DataError outside a
// session or when no bar at or before the instant exists in it.
Price4 price_at(const std::vector<MinuteBar>& bars, MinuteStamp instant,
                const TradingCalendar& cal);

// LOCF lookup that reports absence instead of throwing; assumes the
// caller already checked the instant is in session.
std::optional<Price4> try_price_at(const std::vector<MinuteBar>& bars,
                                   MinuteStamp instant);

int64_t hour_volume_before(const std::vector<MinuteBar>& bars,
                           MinuteStamp instant);

struct LabelOutcome {
  std::optional<LabeledDocument> doc;
  std::optional<SkipReason> skip;
};

// Buy iff the price one hour ahead is strictly above the price at the
// tweet; strictly below is Sell; equal is skipped. Tweets whose one-hour
// window would cross a session boundary are skipped, not extrapolated.
// Tokens and the contextual features are filled in separately.
LabelOutcome label_tweet(const Tweet& tweet, const std::string& ticker,
                         const std::vector<MinuteBar>& bars,
                         const TradingCalendar& cal);

// Fills prior_trend, hour_volume, volume_high, weekday.
void attach_context(LabeledDocument& doc, const std::vector<MinuteBar>& bars,
                    double training_mean_hour_volume);

double mean_hour_volume(const std::vector<LabeledDocument>& docs);

struct DatasetSplit {
  std::vector<LabeledDocument> train;
  std::vector<LabeledDocument> validation;
  std::vector<LabeledDocument> test;
  uint64_t seed = 0;
};

// Documents dated inside [test_start, test_end] become the test set; the
// remainder is shuffled with the seed and cut train_frac/-rest. Each
// returned document carries its split tag. Throws DataError when the
// non-test pool is empty.
DatasetSplit split(const std::vector<LabeledDocument>& docs,
                   double train_frac, uint64_t seed, Date test_start,
                   Date test_end);

struct ClassCounts {
  int64_t buy = 0;
  int64_t sell = 0;
};

struct TemporalDistribution {
  std::map<int, ClassCounts> by_hour;
  std::map<int, ClassCounts> by_weekday;
};

TemporalDistribution temporal_distribution(
    const std::vector<LabeledDocument>& docs);

// CSV "key,buy,sell" for either grouping.
std::string temporal_csv(const std::map<int, ClassCounts>& counts,
                         const std::string& key_name);

// JSON Lines persistence. The first line is a {"_meta": ...} object with
// provenance (config hash, seed, training volume mean, skip counts).
struct DocsFile {
  std::vector<LabeledDocument> docs;
  std::string config_hash;
  uint64_t seed = 0;
  double training_mean_hour_volume = 0.0;
  std::map<std::string, int64_t> skip_counts;
};

std::string docs_to_jsonl(const DocsFile& file);
DocsFile docs_from_jsonl(const std::string& text);

}  // namespace stocksig

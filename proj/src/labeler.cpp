#include "stocksig/labeler.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "stocksig/errors.hpp"
#include "stocksig/io_util.hpp"
#include "stocksig/rng.hpp"

namespace stocksig {

const char* to_string(SignalClass c) {
  return c == SignalClass::Buy ? "Buy" : "Sell";
}

SignalClass signal_from_string(const std::string& s) {
  if (s == "Buy") return SignalClass::Buy;
  if (s == "Sell") return SignalClass::Sell;
  throw DataError("unknown signal class: '" + s + "'");
}

const char* to_string(SkipReason r) {
  switch (r) {
    case SkipReason::NonTradingDay: return "non-trading-day";
    case SkipReason::OutsideMarketHours: return "outside-market-hours";
    case SkipReason::ExitAfterClose: return "exit-after-close";
    case SkipReason::EntryBeforeOpen: return "entry-before-open";
    case SkipReason::MissingData: return "missing-data";
    case SkipReason::UnchangedPrice: return "unchanged-price";
  }
  return "unknown";
}

std::optional<Price4> try_price_at(const std::vector<MinuteBar>& bars,
                                   MinuteStamp instant) {
  MinuteBar probe;
  probe.stamp = instant;
  auto it = std::upper_bound(
      bars.begin(), bars.end(), probe,
      [](const MinuteBar& a, const MinuteBar& b) { return a.stamp < b.stamp; });
  if (it == bars.begin()) return std::nullopt;
  --it;
  // Carry forward only within the same session.
  if (stamp_date(it->stamp) != stamp_date(instant)) return std::nullopt;
  return it->close;
}

Price4 price_at(const std::vector<MinuteBar>& bars, MinuteStamp instant,
                const TradingCalendar& cal) {
  if (!cal.in_session(instant)) {
    throw DataError("instant " + format_stamp(instant) +
                    " is outside any trading session");
  }
  std::optional<Price4> p = try_price_at(bars, instant);
  if (!p) {
    throw DataError("no bar at or before " + format_stamp(instant) +
                    " in its session");
  }
  return *p;
}

int64_t hour_volume_before(const std::vector<MinuteBar>& bars,
                           MinuteStamp instant) {
  MinuteBar probe;
  auto cmp = [](const MinuteBar& a, const MinuteBar& b) {
    return a.stamp < b.stamp;
  };
  probe.stamp = instant - 60;
  auto lo = std::lower_bound(bars.begin(), bars.end(), probe, cmp);
  probe.stamp = instant;
  auto hi = std::lower_bound(bars.begin(), bars.end(), probe, cmp);
  int64_t total = 0;
  for (auto it = lo; it != hi; ++it) total += it->volume;
  return total;
}

LabelOutcome label_tweet(const Tweet& tweet, const std::string& ticker,
                         const std::vector<MinuteBar>& bars,
                         const TradingCalendar& cal) {
  MinuteStamp t = utc_to_eastern_stamp(tweet.utc_seconds);
  Date date = stamp_date(t);
  int mod = stamp_minute_of_day(t);
  if (!cal.is_trading_day(date)) {
    return {std::nullopt, SkipReason::NonTradingDay};
  }
  if (mod < kSessionOpenMinute || mod > kSessionCloseMinute) {
    return {std::nullopt, SkipReason::OutsideMarketHours};
  }
  if (mod + 60 > kSessionCloseMinute) {
    return {std::nullopt, SkipReason::ExitAfterClose};
  }
  if (mod - 60 < kSessionOpenMinute) {
    return {std::nullopt, SkipReason::EntryBeforeOpen};
  }
  std::optional<Price4> before = try_price_at(bars, t - 60);
  std::optional<Price4> now = try_price_at(bars, t);
  std::optional<Price4> after = try_price_at(bars, t + 60);
  if (!before || !now || !after) {
    return {std::nullopt, SkipReason::MissingData};
  }
  if (*after == *now) {
    return {std::nullopt, SkipReason::UnchangedPrice};
  }
  LabeledDocument doc;
  doc.tweet_id = tweet.id;
  doc.ticker = ticker;
  doc.stamp = t;
  doc.label = *after > *now ? SignalClass::Buy : SignalClass::Sell;
  doc.price_before = *before;
  doc.price_at = *now;
  doc.price_after = *after;
  return {std::move(doc), std::nullopt};
}

void attach_context(LabeledDocument& doc, const std::vector<MinuteBar>& bars,
                    double training_mean_hour_volume) {
  doc.prior_trend = doc.price_at > doc.price_before ? 1 : 0;
  doc.hour_volume = hour_volume_before(bars, doc.stamp);
  doc.volume_high =
      static_cast<double>(doc.hour_volume) > training_mean_hour_volume ? 1 : 0;
  doc.weekday = weekday_monday0(stamp_date(doc.stamp));
}

double mean_hour_volume(const std::vector<LabeledDocument>& docs) {
  if (docs.empty()) throw DataError("mean hour volume of an empty set");
  double sum = 0;
  for (const LabeledDocument& d : docs) {
    sum += static_cast<double>(d.hour_volume);
  }
  return sum / static_cast<double>(docs.size());
}

namespace {

void sort_docs(std::vector<LabeledDocument>& docs) {
  std::sort(docs.begin(), docs.end(),
            [](const LabeledDocument& a, const LabeledDocument& b) {
              if (a.stamp != b.stamp) return a.stamp < b.stamp;
              return a.tweet_id < b.tweet_id;
            });
}

}  // namespace

DatasetSplit split(const std::vector<LabeledDocument>& docs,
                   double train_frac, uint64_t seed, Date test_start,
                   Date test_end) {
  if (train_frac <= 0.0 || train_frac >= 1.0) {
    throw ConfigError("train fraction must be in (0,1)");
  }
  DatasetSplit out;
  out.seed = seed;
  std::vector<LabeledDocument> pool;
  for (const LabeledDocument& d : docs) {
    Date date = stamp_date(d.stamp);
    if (date >= test_start && date <= test_end) {
      out.test.push_back(d);
      out.test.back().split = "test";
    } else {
      pool.push_back(d);
    }
  }
  if (pool.empty()) {
    throw DataError("no documents outside the test period to train on");
  }
  SplitMix64 rng(seed);
  for (size_t i = pool.size() - 1; i > 0; --i) {
    size_t j = rng.bounded(i + 1);
    std::swap(pool[i], pool[j]);
  }
  size_t n_train = static_cast<size_t>(
      std::llround(train_frac * static_cast<double>(pool.size())));
  for (size_t i = 0; i < pool.size(); ++i) {
    if (i < n_train) {
      out.train.push_back(std::move(pool[i]));
      out.train.back().split = "train";
    } else {
      out.validation.push_back(std::move(pool[i]));
      out.validation.back().split = "validation";
    }
  }
  sort_docs(out.train);
  sort_docs(out.validation);
  sort_docs(out.test);
  return out;
}

TemporalDistribution temporal_distribution(
    const std::vector<LabeledDocument>& docs) {
  TemporalDistribution td;
  for (const LabeledDocument& d : docs) {
    int hour = stamp_minute_of_day(d.stamp) / 60;
    ClassCounts& h = td.by_hour[hour];
    ClassCounts& w = td.by_weekday[d.weekday];
    if (d.label == SignalClass::Buy) {
      ++h.buy;
      ++w.buy;
    } else {
      ++h.sell;
      ++w.sell;
    }
  }
  return td;
}

std::string temporal_csv(const std::map<int, ClassCounts>& counts,
                         const std::string& key_name) {
  std::string out = key_name + ",buy,sell\n";
  for (const auto& [key, c] : counts) {
    out += std::to_string(key) + "," + std::to_string(c.buy) + "," +
           std::to_string(c.sell) + "\n";
  }
  return out;
}

std::string docs_to_jsonl(const DocsFile& file) {
  nlohmann::json meta;
  meta["config_hash"] = file.config_hash;
  meta["seed"] = file.seed;
  meta["training_mean_hour_volume"] = file.training_mean_hour_volume;
  meta["skip_counts"] = file.skip_counts;
  nlohmann::json head;
  head["_meta"] = meta;
  std::string out = head.dump() + "\n";
  for (const LabeledDocument& d : file.docs) {
    nlohmann::json j;
    j["tweet_id"] = d.tweet_id;
    j["ticker"] = d.ticker;
    j["timestamp"] = format_stamp(d.stamp);
    j["tokens"] = d.tokens;
    j["label"] = to_string(d.label);
    j["price_before"] = format_price(d.price_before);
    j["price_at"] = format_price(d.price_at);
    j["price_after"] = format_price(d.price_after);
    j["prior_trend"] = d.prior_trend;
    j["hour_volume"] = d.hour_volume;
    j["volume_high"] = d.volume_high;
    j["weekday"] = d.weekday;
    j["split"] = d.split;
    out += j.dump() + "\n";
  }
  return out;
}

DocsFile docs_from_jsonl(const std::string& text) {
  DocsFile file;
  std::vector<std::string> lines = split_lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::exception& e) {
      throw DataError("labeled data line " + std::to_string(i + 1) + ": " +
                      e.what());
    }
    if (i == 0 && j.contains("_meta")) {
      const nlohmann::json& m = j["_meta"];
      file.config_hash = m.value("config_hash", std::string());
      file.seed = m.value("seed", uint64_t{0});
      file.training_mean_hour_volume =
          m.value("training_mean_hour_volume", 0.0);
      if (m.contains("skip_counts")) {
        for (const auto& [k, v] : m["skip_counts"].items()) {
          file.skip_counts[k] = v.get<int64_t>();
        }
      }
      continue;
    }
    try {
      LabeledDocument d;
      d.tweet_id = j.at("tweet_id").get<std::string>();
      d.ticker = j.at("ticker").get<std::string>();
      d.stamp = parse_stamp(j.at("timestamp").get<std::string>());
      d.tokens = j.at("tokens").get<std::vector<std::string>>();
      d.label = signal_from_string(j.at("label").get<std::string>());
      d.price_before = parse_price(j.at("price_before").get<std::string>());
      d.price_at = parse_price(j.at("price_at").get<std::string>());
      d.price_after = parse_price(j.at("price_after").get<std::string>());
      d.prior_trend = j.at("prior_trend").get<int>();
      d.hour_volume = j.at("hour_volume").get<int64_t>();
      d.volume_high = j.at("volume_high").get<int>();
      d.weekday = j.at("weekday").get<int>();
      d.split = j.value("split", std::string());
      file.docs.push_back(std::move(d));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("labeled data line " + std::to_string(i + 1) + ": " +
                      e.what());
    }
  }
  return file;
}

}  // namespace stocksig

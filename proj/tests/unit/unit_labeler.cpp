#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "stocksig/calendar.hpp"
#include "stocksig/errors.hpp"
#include "stocksig/ingest.hpp"
#include "stocksig/labeler.hpp"

using namespace stocksig;

namespace {

MinuteBar bar(const Date& d, int hh, int mm, const char* close,
              int64_t volume = 100) {
  MinuteBar b;
  b.stamp = make_stamp(d, hh, mm);
  b.close = parse_price(close);
  b.open = b.high = b.low = b.close;
  b.volume = volume;
  return b;
}

Tweet tweet_at(const Date& d, int hh, int mm, const std::string& id = "t1") {
  // Eastern wall time in January is UTC-5.
  int64_t wall = days_from_civil(d) * 86400 + hh * 3600 + mm * 60;
  return Tweet{id, wall + 5 * 3600, "$FB text", {"FB"}};
}

// One session 2016-01-04 with a rising then falling close path.
std::vector<MinuteBar> session_bars() {
  Date d{2016, 1, 4};
  std::vector<MinuteBar> bars;
  for (int mod = kSessionOpenMinute; mod <= kSessionCloseMinute; ++mod) {
    int cents = mod <= 14 * 60 ? 10000 + (mod - kSessionOpenMinute)
                               : 10000 + (14 * 60 - kSessionOpenMinute) -
                                     (mod - 14 * 60);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%d.%02d", cents / 100, cents % 100);
    bars.push_back(bar(d, mod / 60, mod % 60, buf));
  }
  return bars;
}

}  // namespace

TEST_CASE("price lookup carries the last close forward within a session") {
  Date d{2016, 1, 4};
  std::vector<MinuteBar> bars = {bar(d, 9, 30, "100.00"),
                                 bar(d, 10, 0, "101.00"),
                                 bar(d, 10, 5, "102.00")};
  TradingCalendar cal({d});
  CHECK(price_at(bars, make_stamp(d, 10, 0), cal) == parse_price("101.00"));
  CHECK(price_at(bars, make_stamp(d, 10, 3), cal) == parse_price("101.00"));
  CHECK(price_at(bars, make_stamp(d, 11, 0), cal) == parse_price("102.00"));
  CHECK(price_at(bars, make_stamp(d, 9, 30), cal) == parse_price("100.00"));
  CHECK_THROWS_AS(price_at(bars, make_stamp(d, 9, 29), cal), DataError);
  CHECK_THROWS_AS(price_at(bars, make_stamp({2016, 1, 5}, 10, 0), cal),
                  DataError);
  CHECK(try_price_at(bars, make_stamp(d, 10, 3)) == parse_price("101.00"));
  CHECK_FALSE(try_price_at({bar(d, 10, 0, "1.00")}, make_stamp(d, 9, 45))
                  .has_value());
}

TEST_CASE("lookback does not cross into the previous session") {
  Date mon{2016, 1, 4}, tue{2016, 1, 5};
  std::vector<MinuteBar> bars = {bar(mon, 15, 0, "100.00"),
                                 bar(tue, 11, 0, "101.00")};
  CHECK_FALSE(try_price_at(bars, make_stamp(tue, 10, 30)).has_value());
  TradingCalendar cal({mon, tue});
  CHECK_THROWS_AS(price_at(bars, make_stamp(tue, 10, 30), cal), DataError);
}

TEST_CASE("hour volume sums the previous sixty minutes half-open") {
  Date d{2016, 1, 4};
  std::vector<MinuteBar> bars = {
      bar(d, 10, 0, "1.00", 100), bar(d, 10, 30, "1.00", 200),
      bar(d, 10, 59, "1.00", 300), bar(d, 11, 0, "1.00", 400)};
  CHECK(hour_volume_before(bars, make_stamp(d, 11, 0)) == 600);
  CHECK(hour_volume_before(bars, make_stamp(d, 11, 1)) == 900);
  CHECK(hour_volume_before(bars, make_stamp(d, 10, 0)) == 0);
  CHECK(hour_volume_before(bars, make_stamp(d, 9, 0)) == 0);
}

TEST_CASE("labels follow the strict one-hour price comparison") {
  std::vector<MinuteBar> bars = session_bars();
  TradingCalendar cal = calendar_from_bars(bars);

  // Rising segment: 11:00 -> 12:00 climbs.
  LabelOutcome up = label_tweet(tweet_at({2016, 1, 4}, 11, 0), "FB", bars, cal);
  REQUIRE(up.doc.has_value());
  CHECK(up.doc->label == SignalClass::Buy);
  CHECK(up.doc->price_at == price_at(bars, make_stamp({2016, 1, 4}, 11, 0), cal));
  CHECK(up.doc->price_after ==
        price_at(bars, make_stamp({2016, 1, 4}, 12, 0), cal));
  CHECK(up.doc->price_before ==
        price_at(bars, make_stamp({2016, 1, 4}, 10, 0), cal));
  CHECK(up.doc->tweet_id == "t1");
  CHECK(up.doc->ticker == "FB");
  CHECK(up.doc->tokens.empty());  // tokens are attached by the caller

  // Falling segment: 14:30 -> 15:30 drops.
  LabelOutcome dn =
      label_tweet(tweet_at({2016, 1, 4}, 14, 30), "FB", bars, cal);
  REQUIRE(dn.doc.has_value());
  CHECK(dn.doc->label == SignalClass::Sell);
}

TEST_CASE("skip reasons in priority order") {
  std::vector<MinuteBar> bars = session_bars();
  TradingCalendar cal = calendar_from_bars(bars);
  auto reason = [&](const Tweet& t) {
    LabelOutcome o = label_tweet(t, "FB", bars, cal);
    REQUIRE(o.skip.has_value());
    return *o.skip;
  };
  // Saturday.
  CHECK(reason(tweet_at({2016, 1, 9}, 11, 0)) == SkipReason::NonTradingDay);
  // Weekday with no bars.
  CHECK(reason(tweet_at({2016, 1, 5}, 11, 0)) == SkipReason::NonTradingDay);
  // Before the open / after the close.
  CHECK(reason(tweet_at({2016, 1, 4}, 9, 0)) ==
        SkipReason::OutsideMarketHours);
  CHECK(reason(tweet_at({2016, 1, 4}, 16, 30)) ==
        SkipReason::OutsideMarketHours);
  // In session but the exit would land past 16:00.
  CHECK(reason(tweet_at({2016, 1, 4}, 15, 1)) == SkipReason::ExitAfterClose);
  CHECK(reason(tweet_at({2016, 1, 4}, 16, 0)) == SkipReason::ExitAfterClose);
  // In session but the entry hour starts before 09:30.
  CHECK(reason(tweet_at({2016, 1, 4}, 10, 29)) == SkipReason::EntryBeforeOpen);
  // Boundary tweets at 10:30 and 15:00 are labelable.
  CHECK(label_tweet(tweet_at({2016, 1, 4}, 10, 30), "FB", bars, cal)
            .doc.has_value());
  CHECK(label_tweet(tweet_at({2016, 1, 4}, 15, 0), "FB", bars, cal)
            .doc.has_value());
}

TEST_CASE("missing data and unchanged price skips") {
  Date d{2016, 1, 4};
  // Bars begin at 11:00, so a 11:30 tweet has no price one hour back.
  std::vector<MinuteBar> late = {bar(d, 11, 0, "100.00"),
                                 bar(d, 11, 30, "100.00"),
                                 bar(d, 12, 30, "100.00")};
  TradingCalendar cal = calendar_from_bars(late);
  LabelOutcome missing =
      label_tweet(tweet_at(d, 11, 30), "FB", late, cal);
  REQUIRE(missing.skip.has_value());
  CHECK(*missing.skip == SkipReason::MissingData);

  // Flat prices: strict comparison labels nothing.
  LabelOutcome flat = label_tweet(tweet_at(d, 12, 30), "FB", late, cal);
  REQUIRE(flat.skip.has_value());
  CHECK(*flat.skip == SkipReason::UnchangedPrice);
}

TEST_CASE("context attachment fills trend volume and weekday") {
  std::vector<MinuteBar> bars = session_bars();
  TradingCalendar cal = calendar_from_bars(bars);
  LabelOutcome o = label_tweet(tweet_at({2016, 1, 4}, 11, 0), "FB", bars, cal);
  REQUIRE(o.doc.has_value());
  LabeledDocument doc = *o.doc;
  attach_context(doc, bars, 50.0);
  CHECK(doc.prior_trend == 1);  // rising all morning
  CHECK(doc.hour_volume == 60 * 100);
  CHECK(doc.volume_high == 1);  // 6000 > 50
  CHECK(doc.weekday == 0);      // Monday
  attach_context(doc, bars, 1e9);
  CHECK(doc.volume_high == 0);
  // Strictly greater: a mean equal to the volume is not "high".
  attach_context(doc, bars, 6000.0);
  CHECK(doc.volume_high == 0);

  LabelOutcome fall =
      label_tweet(tweet_at({2016, 1, 4}, 15, 0), "FB", bars, cal);
  REQUIRE(fall.doc.has_value());
  LabeledDocument fd = *fall.doc;
  attach_context(fd, bars, 50.0);
  CHECK(fd.prior_trend == 0);  // falling after 14:00
}

TEST_CASE("mean hour volume averages the documents") {
  LabeledDocument a, b;
  a.hour_volume = 100;
  b.hour_volume = 300;
  CHECK(mean_hour_volume({a, b}) == doctest::Approx(200.0));
  CHECK_THROWS_AS(mean_hour_volume({}), DataError);
}

namespace {

LabeledDocument doc_on(const Date& d, int hh, int mm, const std::string& id) {
  LabeledDocument doc;
  doc.tweet_id = id;
  doc.ticker = "FB";
  doc.stamp = make_stamp(d, hh, mm);
  doc.label = SignalClass::Buy;
  doc.price_before = 10000;
  doc.price_at = 10000;
  doc.price_after = 10100;
  return doc;
}

}  // namespace

TEST_CASE("split cuts a test window then shuffles the remainder") {
  std::vector<LabeledDocument> docs;
  for (int day = 4; day <= 8; ++day) {
    for (int i = 0; i < 4; ++i) {
      docs.push_back(doc_on({2016, 1, day}, 11, i, "t" + std::to_string(day) +
                                                       std::to_string(i)));
    }
  }
  DatasetSplit s =
      split(docs, 0.75, 9, Date{2016, 1, 8}, Date{2016, 1, 8});
  CHECK(s.test.size() == 4);
  for (const LabeledDocument& d : s.test) {
    CHECK(stamp_date(d.stamp) == Date{2016, 1, 8});
    CHECK(d.split == "test");
  }
  CHECK(s.train.size() == 12);  // llround(0.75 * 16)
  CHECK(s.validation.size() == 4);
  for (const LabeledDocument& d : s.train) CHECK(d.split == "train");
  for (const LabeledDocument& d : s.validation) CHECK(d.split == "validation");

  // Deterministic per seed.
  DatasetSplit again =
      split(docs, 0.75, 9, Date{2016, 1, 8}, Date{2016, 1, 8});
  CHECK(again.train == s.train);
  CHECK(again.validation == s.validation);

  // All documents survive, none duplicated.
  std::set<std::string> ids;
  for (const auto* part : {&s.train, &s.validation, &s.test}) {
    for (const LabeledDocument& d : *part) ids.insert(d.tweet_id);
  }
  CHECK(ids.size() == docs.size());
}

TEST_CASE("split rejects an empty non-test pool") {
  std::vector<LabeledDocument> docs = {doc_on({2016, 1, 4}, 11, 0, "a")};
  CHECK_THROWS_AS(split(docs, 0.8, 1, Date{2016, 1, 1}, Date{2016, 1, 31}),
                  DataError);
  CHECK_THROWS_AS(split({}, 0.8, 1, Date{9999, 1, 1}, Date{9999, 1, 2}),
                  DataError);
}

TEST_CASE("temporal distribution buckets by hour and weekday") {
  std::vector<LabeledDocument> docs = {doc_on({2016, 1, 4}, 11, 5, "a"),
                                       doc_on({2016, 1, 4}, 11, 50, "b"),
                                       doc_on({2016, 1, 5}, 14, 0, "c")};
  docs[2].label = SignalClass::Sell;
  docs[2].weekday = 1;
  TemporalDistribution t = temporal_distribution(docs);
  CHECK(t.by_hour.at(11).buy == 2);
  CHECK(t.by_hour.at(14).sell == 1);
  CHECK(t.by_weekday.at(0).buy == 2);
  CHECK(t.by_weekday.at(1).sell == 1);
  std::string csv = temporal_csv(t.by_hour, "hour");
  CHECK(csv == "hour,buy,sell\n11,2,0\n14,0,1\n");
}

TEST_CASE("documents round-trip through jsonl") {
  std::vector<MinuteBar> bars = session_bars();
  TradingCalendar cal = calendar_from_bars(bars);
  DocsFile file;
  for (int mm : {0, 10, 20}) {
    LabelOutcome o =
        label_tweet(tweet_at({2016, 1, 4}, 11, mm, "t" + std::to_string(mm)),
                    "FB", bars, cal);
    REQUIRE(o.doc.has_value());
    o.doc->tokens = {"alpha", "beta"};
    o.doc->split = "train";
    attach_context(*o.doc, bars, 10.0);
    file.docs.push_back(*o.doc);
  }
  file.config_hash = "deadbeef";
  file.seed = 99;
  file.training_mean_hour_volume = 123.5;
  file.skip_counts = {{"unchanged-price", 2}};
  std::string text = docs_to_jsonl(file);
  DocsFile back = docs_from_jsonl(text);
  CHECK(back.docs == file.docs);
  CHECK(back.config_hash == file.config_hash);
  CHECK(back.seed == file.seed);
  CHECK(back.training_mean_hour_volume ==
        doctest::Approx(file.training_mean_hour_volume));
  CHECK(back.skip_counts == file.skip_counts);
  CHECK_THROWS_AS(docs_from_jsonl("not json\n"), DataError);
}

TEST_CASE("signal class and skip reason names") {
  CHECK(std::string(to_string(SignalClass::Buy)) == "Buy");
  CHECK(std::string(to_string(SignalClass::Sell)) == "Sell");
  CHECK(signal_from_string("Buy") == SignalClass::Buy);
  CHECK(signal_from_string("Sell") == SignalClass::Sell);
  CHECK_THROWS_AS(signal_from_string("Hold"), DataError);
  CHECK(std::string(to_string(SkipReason::UnchangedPrice)) ==
        "unchanged-price");
}

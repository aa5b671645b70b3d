#include <doctest.h>

#include <string>
#include <unordered_set>
#include <vector>

#include "stocksig/calendar.hpp"
#include "stocksig/errors.hpp"
#include "stocksig/ingest.hpp"
#include "stocksig/labeler.hpp"
#include "stocksig/synth.hpp"
#include "stocksig/tokenizer.hpp"

using namespace stocksig;

namespace {

SynthSpec small_spec() {
  SynthSpec spec;
  spec.seed = 11;
  spec.start_date = {2016, 1, 4};
  spec.end_date = {2016, 1, 8};
  spec.n_tweets = 300;
  spec.n_buy_words = 5;
  spec.n_sell_words = 5;
  spec.n_noise_words = 20;
  return spec;
}

// The planted directional word is the first token after the cashtag.
std::string planted_word(const Tweet& t) {
  size_t space = t.text.find(' ');
  REQUIRE(space != std::string::npos);
  size_t end = t.text.find(' ', space + 1);
  return t.text.substr(space + 1, end == std::string::npos
                                      ? std::string::npos
                                      : end - space - 1);
}

// Realized direction of the hour following the tweet: +1 up, -1 down.
int realized_move(const SynthOutput& out, const Tweet& t) {
  MinuteStamp stamp = utc_to_eastern_stamp(t.utc_seconds);
  auto now = try_price_at(out.bars, stamp);
  auto later = try_price_at(out.bars, stamp + 60);
  REQUIRE(now.has_value());
  REQUIRE(later.has_value());
  REQUIRE(*now != *later);
  return *later > *now ? 1 : -1;
}

}  // namespace

TEST_CASE("identical specs generate byte-identical corpora") {
  SynthOutput a = generate(small_spec());
  SynthOutput b = generate(small_spec());
  CHECK(a.tweets == b.tweets);
  CHECK(a.bars == b.bars);
  CHECK(a.buy_words == b.buy_words);
  CHECK(a.resampled == b.resampled);
  CHECK(tweets_jsonl(a.tweets) == tweets_jsonl(b.tweets));

  SynthSpec other = small_spec();
  other.seed = 12;
  CHECK_FALSE(generate(other).tweets == a.tweets);
}

TEST_CASE("generated bars pass ingest validation unchanged") {
  SynthOutput out = generate(small_spec());
  // 5 weekdays, one bar per session minute.
  CHECK(out.bars.size() == 5 * 391);
  CHECK(stamp_minute_of_day(out.bars.front().stamp) == 570);
  CHECK(stamp_minute_of_day(out.bars.back().stamp) == 960);
  std::vector<MinuteBar> reparsed = parse_bars(serialize_bars(out.bars));
  CHECK(reparsed == out.bars);
  for (const MinuteBar& b : out.bars) {
    CHECK(b.volume >= 1000);
    CHECK(b.volume <= 10000);
    CHECK(b.close % 100 == 0);  // whole cents
  }
}

TEST_CASE("tweets are sorted, in-session, and sequentially numbered") {
  SynthOutput out = generate(small_spec());
  REQUIRE(out.tweets.size() == 300);
  CHECK(out.tweets.front().id == "t0000001");
  CHECK(out.tweets.back().id == "t0000300");
  int64_t prev = 0;
  for (const Tweet& t : out.tweets) {
    CHECK(t.utc_seconds >= prev);
    prev = t.utc_seconds;
    MinuteStamp stamp = utc_to_eastern_stamp(t.utc_seconds);
    CHECK_FALSE(is_weekend(stamp_date(stamp)));
    int mod = stamp_minute_of_day(stamp);
    CHECK(mod >= 630);
    CHECK(mod <= 900);
    CHECK(t.cashtags.count("SYNTH") == 1);
  }
}

TEST_CASE("planted words survive tokenization and avoid letter runs") {
  SynthOutput out = generate(small_spec());
  CHECK(out.buy_words.front() == "bwaaba");
  CHECK(out.sell_words.front() == "swaaba");
  CHECK(out.noise_words.front() == "nwaaba");
  std::vector<std::vector<std::string>> lists = {
      out.buy_words, out.sell_words, out.noise_words};
  for (const auto& list : lists) {
    for (const std::string& w : list) {
      CHECK(tokenize(w) == std::vector<std::string>{w});
    }
  }
}

TEST_CASE("planted agreement tracks the signal strength") {
  SynthSpec spec;
  spec.seed = 4;
  spec.start_date = {2016, 1, 4};
  spec.end_date = {2016, 2, 26};
  spec.n_tweets = 20000;
  spec.signal_strength = 0.7;
  SynthOutput out = generate(spec);
  int64_t agree = 0;
  for (const Tweet& t : out.tweets) {
    std::string word = planted_word(t);
    bool is_buy = word.rfind("bw", 0) == 0;
    bool up = realized_move(out, t) > 0;
    if (is_buy == up) ++agree;
  }
  double fraction =
      static_cast<double>(agree) / static_cast<double>(out.tweets.size());
  CHECK(fraction > 0.68);
  CHECK(fraction < 0.72);
}

TEST_CASE("a flip date inverts planted semantics before it") {
  SynthSpec spec;
  spec.seed = 9;
  spec.start_date = {2016, 1, 4};
  spec.end_date = {2016, 1, 15};
  spec.n_tweets = 400;
  spec.signal_strength = 1.0;
  spec.flip_date = Date{2016, 1, 11};
  SynthOutput out = generate(spec);
  int64_t before = 0, after = 0;
  for (const Tweet& t : out.tweets) {
    std::string word = planted_word(t);
    bool is_buy = word.rfind("bw", 0) == 0;
    bool up = realized_move(out, t) > 0;
    Date d = stamp_date(utc_to_eastern_stamp(t.utc_seconds));
    if (d < *spec.flip_date) {
      ++before;
      CHECK(is_buy != up);  // inverted regime
    } else {
      ++after;
      CHECK(is_buy == up);
    }
  }
  CHECK(before > 0);
  CHECK(after > 0);
}

TEST_CASE("zero tweet count derives from the hourly rate") {
  SynthSpec spec = small_spec();
  spec.n_tweets = 0;
  spec.tweets_per_hour = 10.0;
  // 4.5 tweetable hours per day over 5 weekdays.
  CHECK(generate(spec).tweets.size() == 225);
}

TEST_CASE("spec validation") {
  SynthSpec bad = small_spec();
  bad.ticker = "";
  CHECK_THROWS_AS(generate(bad), ConfigError);
  bad = small_spec();
  bad.ticker = "TOOLONG";
  CHECK_THROWS_AS(generate(bad), ConfigError);
  bad = small_spec();
  bad.ticker = "AB1";
  CHECK_THROWS_AS(generate(bad), ConfigError);
  bad = small_spec();
  bad.end_date = {2015, 12, 31};
  CHECK_THROWS_AS(generate(bad), ConfigError);
  bad = small_spec();
  bad.n_buy_words = 0;
  CHECK_THROWS_AS(generate(bad), ConfigError);
  bad = small_spec();
  bad.n_noise_words = -1;
  CHECK_THROWS_AS(generate(bad), ConfigError);
  bad = small_spec();
  bad.signal_strength = 0.4;
  CHECK_THROWS_AS(generate(bad), ConfigError);
  bad = small_spec();
  bad.signal_strength = 1.1;
  CHECK_THROWS_AS(generate(bad), ConfigError);
  bad = small_spec();
  bad.volatility = 0.0;
  CHECK_THROWS_AS(generate(bad), ConfigError);
  bad = small_spec();
  bad.volatility = 0.5;
  CHECK_THROWS_AS(generate(bad), ConfigError);
  bad = small_spec();
  bad.n_tweets = -1;
  CHECK_THROWS_AS(generate(bad), ConfigError);
  bad = small_spec();
  bad.n_tweets = 0;
  bad.tweets_per_hour = 0.0;
  CHECK_THROWS_AS(generate(bad), ConfigError);
  bad = small_spec();
  bad.start_price = 0;
  CHECK_THROWS_AS(generate(bad), ConfigError);
  // A weekend-only range has nowhere to put bars.
  bad = small_spec();
  bad.start_date = {2016, 1, 9};
  bad.end_date = {2016, 1, 10};
  CHECK_THROWS_AS(generate(bad), ConfigError);
  // More ids than the run-free word space can supply.
  bad = small_spec();
  bad.n_noise_words = 26 * 26 * 26 * 26;
  CHECK_THROWS_AS(generate(bad), ConfigError);
}

TEST_CASE("tweet jsonl uses compact iso-8601 rows") {
  Tweet t;
  t.id = "t1";
  t.utc_seconds =
      days_from_civil({2016, 1, 4}) * 86400 + 15 * 3600 + 39 * 60 + 6;
  t.text = "hello";
  CHECK(tweets_jsonl({t}) ==
        "{\"id\":\"t1\",\"timestamp\":\"2016-01-04T15:39:06Z\","
        "\"text\":\"hello\"}\n");
}

TEST_CASE("wordlist text is newline-delimited with comments first") {
  CHECK(wordlist_text({"alpha", "beta"}, {"planted"}) ==
        "# planted\nalpha\nbeta\n");
  CHECK(wordlist_text({}) == "");
}

TEST_CASE("recovery score is the planted hit rate of the top k") {
  std::vector<std::string> ranked = {"a", "b", "c", "d"};
  std::vector<std::string> planted = {"b", "d", "x"};
  CHECK(recovery_score(ranked, planted, 2) == doctest::Approx(0.5));
  CHECK(recovery_score(ranked, planted, 10) == doctest::Approx(2.0 / 3.0));
  CHECK(recovery_score(ranked, planted, 4) == doctest::Approx(2.0 / 3.0));
  CHECK(recovery_score(ranked, {"a"}, 3) == doctest::Approx(1.0));
  CHECK(recovery_score(ranked, planted, 0) == doctest::Approx(0.0));
  CHECK(recovery_score(ranked, {}, 5) == doctest::Approx(0.0));
  CHECK(recovery_score({}, planted, 5) == doctest::Approx(0.0));
}

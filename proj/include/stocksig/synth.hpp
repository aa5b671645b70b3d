#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stocksig/calendar.hpp"
#include "stocksig/ingest.hpp"
#include "stocksig/price.hpp"

namespace stocksig {

// Inputs for the planted-correlation corpus generator. Every random draw
// flows from `seed` through one splitmix stream, so identical specs give
// byte-identical output.
struct SynthSpec {
  uint64_t seed = 1;
  std::string ticker = "SYNTH";
  Date start_date{2016, 1, 4};
  Date end_date{2016, 3, 31};
  // 0 derives the count from tweets_per_hour over the tweetable span.
  int64_t n_tweets = 0;
  double tweets_per_hour = 10.0;
  int n_buy_words = 25;
  int n_sell_words = 25;
  int n_noise_words = 1000;
  // Probability that a tweet's planted word agrees with the price move
  // over the following hour.
  double signal_strength = 0.7;
  // Per-hour move scale; each hour moves by volatility * [0.5, 1.5).
  double volatility = 0.004;
  Price4 start_price = 100 * kPrice4Scale;
  // Tweets dated before this get inverted planted-word semantics.
  std::optional<Date> flip_date;
};

struct SynthOutput {
  std::vector<Tweet> tweets;  // sorted by timestamp
  std::vector<MinuteBar> bars;
  std::vector<std::string> buy_words;
  std::vector<std::string> sell_words;
  std::vector<std::string> noise_words;
  int64_t resampled = 0;  // placements retried over flat windows
};

// Builds the price path first (hourly anchor walk, cent-rounded minute
// interpolation with sign-preserving noise), then draws tweet times and
// plants one directional word per tweet agreeing with that tweet's
// realized next-hour move with probability signal_strength, plus noise
// words. Weekdays only; tweet minutes span 10:30-15:00 so every tweet
// is labelable.
SynthOutput generate(const SynthSpec& spec);

// JSON Lines with id, timestamp, text per tweet; no provenance line.
std::string tweets_jsonl(const std::vector<Tweet>& tweets);

std::string wordlist_text(const std::vector<std::string>& words,
                          const std::vector<std::string>& comments = {});

// |top-k of ranked ∩ planted| / min(k, |planted|).
double recovery_score(const std::vector<std::string>& ranked_terms,
                      const std::vector<std::string>& planted, int k);

}  // namespace stocksig

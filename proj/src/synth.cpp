#include "stocksig/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "stocksig/errors.hpp"
#include "stocksig/rng.hpp"

namespace stocksig {

namespace {

constexpr int kAnchorMinutes[] = {570, 600, 660, 720, 780, 840, 900, 960};
constexpr int kSegments = 7;
constexpr int kFirstTweetMinute = 630;
constexpr int kLastTweetMinute = 900;
constexpr int kMaxPlacementAttempts = 100;

std::string base26(int value, int width) {
  std::string s(static_cast<size_t>(width), 'a');
  for (int i = width - 1; i >= 0; --i) {
    s[static_cast<size_t>(i)] = static_cast<char>('a' + value % 26);
    value /= 26;
  }
  return s;
}

bool has_triple_run(const std::string& s) {
  for (size_t i = 2; i < s.size(); ++i) {
    if (s[i] == s[i - 1] && s[i] == s[i - 2]) return true;
  }
  return false;
}

// Words must survive tokenization unchanged so the emitted truth lists
// compare directly against vocabulary tokens.
std::vector<std::string> make_words(const std::string& prefix, int count) {
  std::vector<std::string> out;
  out.reserve(static_cast<size_t>(count));
  constexpr int kSpace = 26 * 26 * 26 * 26;
  for (int value = 0; value < kSpace && std::ssize(out) < count; ++value) {
    std::string word = prefix + base26(value, 4);
    if (!has_triple_run(word)) out.push_back(std::move(word));
  }
  if (std::ssize(out) < count) {
    throw ConfigError("vocabulary request exceeds the run-free word space");
  }
  return out;
}

void validate(const SynthSpec& spec) {
  if (spec.ticker.empty() || spec.ticker.size() > 5) {
    throw ConfigError("ticker must be 1-5 letters");
  }
  for (char c : spec.ticker) {
    if (!((c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'))) {
      throw ConfigError("ticker must be 1-5 letters");
    }
  }
  if (spec.end_date < spec.start_date) {
    throw ConfigError("date range is reversed");
  }
  if (spec.n_buy_words <= 0 || spec.n_sell_words <= 0) {
    throw ConfigError("planted vocabulary must be non-empty on both sides");
  }
  if (spec.n_noise_words < 0) {
    throw ConfigError("noise vocabulary count must be non-negative");
  }
  int max_words = 26 * 26 * 26 * 26;
  if (spec.n_buy_words > max_words || spec.n_sell_words > max_words ||
      spec.n_noise_words > max_words) {
    throw ConfigError("vocabulary count exceeds the word-id space");
  }
  if (!(spec.signal_strength >= 0.5 && spec.signal_strength <= 1.0)) {
    throw ConfigError("signal strength must lie in [0.5, 1]");
  }
  if (!(spec.volatility > 0.0 && spec.volatility <= 0.4)) {
    throw ConfigError("volatility must lie in (0, 0.4]");
  }
  if (!(spec.tweets_per_hour > 0.0)) {
    throw ConfigError("tweet rate must be positive");
  }
  if (spec.n_tweets < 0) {
    throw ConfigError("tweet count must be non-negative");
  }
  if (spec.start_price <= 0) {
    throw ConfigError("start price must be positive");
  }
}

Price4 round_to_cents(double dollars) {
  return std::llround(dollars * 100.0) * 100;
}

std::string upper(std::string s) {
  for (char& c : s) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return s;
}

}  // namespace

SynthOutput generate(const SynthSpec& spec) {
  validate(spec);

  std::vector<Date> days;
  for (int64_t d = days_from_civil(spec.start_date);
       d <= days_from_civil(spec.end_date); ++d) {
    Date date = civil_from_days(d);
    if (!is_weekend(date)) days.push_back(date);
  }
  if (days.empty()) {
    throw ConfigError("date range contains no weekdays");
  }

  int64_t n_tweets = spec.n_tweets;
  if (n_tweets == 0) {
    double hours = static_cast<double>(kLastTweetMinute - kFirstTweetMinute) /
                   60.0;
    n_tweets = std::max<int64_t>(
        1, std::llround(spec.tweets_per_hour * hours *
                        static_cast<double>(days.size())));
  }

  SynthOutput out;
  out.buy_words = make_words("bw", spec.n_buy_words);
  out.sell_words = make_words("sw", spec.n_sell_words);
  out.noise_words = make_words("nw", spec.n_noise_words);

  SplitMix64 rng(spec.seed);

  // Price path: hourly anchor walk, minute closes interpolated with
  // triangular-envelope noise that cannot cross the anchor levels' move.
  int minutes_per_day = kSessionCloseMinute - kSessionOpenMinute + 1;
  std::vector<std::vector<Price4>> closes(
      days.size(), std::vector<Price4>(static_cast<size_t>(minutes_per_day)));
  double level = price_to_double(spec.start_price);
  out.bars.reserve(days.size() * static_cast<size_t>(minutes_per_day));
  for (size_t di = 0; di < days.size(); ++di) {
    double anchors[kSegments + 1];
    anchors[0] = level;
    for (int seg = 0; seg < kSegments; ++seg) {
      double direction = rng.bounded(2) == 1 ? 1.0 : -1.0;
      double magnitude = spec.volatility * (0.5 + rng.uniform());
      anchors[seg + 1] = anchors[seg] * (1.0 + direction * magnitude);
    }
    level = anchors[kSegments];
    Price4 prev_close = 0;
    int seg = 0;
    for (int minute = kSessionOpenMinute; minute <= kSessionCloseMinute;
         ++minute) {
      while (minute > kAnchorMinutes[seg + 1]) ++seg;
      Price4 close;
      if (minute == kAnchorMinutes[seg] || minute == kAnchorMinutes[seg + 1]) {
        int a = minute == kAnchorMinutes[seg] ? seg : seg + 1;
        close = round_to_cents(anchors[a]);
      } else {
        double a = kAnchorMinutes[seg], b = kAnchorMinutes[seg + 1];
        double frac = (minute - a) / (b - a);
        double base =
            anchors[seg] + (anchors[seg + 1] - anchors[seg]) * frac;
        double envelope = 1.0 - std::fabs(2.0 * frac - 1.0);
        double amp = 0.15 * std::fabs(anchors[seg + 1] - anchors[seg]) *
                     envelope;
        double u = rng.uniform();
        close = round_to_cents(base + (2.0 * u - 1.0) * amp);
      }
      if (close <= 0) {
        throw DataError("price path collapsed to zero; lower the volatility");
      }
      int64_t volume = 1000 + static_cast<int64_t>(rng.bounded(9001));
      MinuteBar bar;
      bar.stamp = make_stamp(days[di], minute / 60, minute % 60);
      bar.open = prev_close == 0 ? close : prev_close;
      bar.close = close;
      bar.high = std::max(bar.open, bar.close);
      bar.low = std::min(bar.open, bar.close);
      bar.volume = volume;
      out.bars.push_back(bar);
      closes[di][static_cast<size_t>(minute - kSessionOpenMinute)] = close;
      prev_close = close;
    }
  }

  // Tweets: placement retried while the realized one-hour move is flat.
  struct Draft {
    int64_t utc_seconds;
    size_t order;
    std::string text;
  };
  std::vector<Draft> drafts;
  drafts.reserve(static_cast<size_t>(n_tweets));
  std::string cashtag = "$" + upper(spec.ticker);
  for (int64_t i = 0; i < n_tweets; ++i) {
    size_t di = 0;
    int minute = 0, second = 0;
    int realized = 0;
    bool placed = false;
    for (int attempt = 0; attempt < kMaxPlacementAttempts; ++attempt) {
      di = static_cast<size_t>(rng.bounded(days.size()));
      minute = kFirstTweetMinute +
               static_cast<int>(rng.bounded(
                   static_cast<uint64_t>(kLastTweetMinute -
                                         kFirstTweetMinute + 1)));
      second = static_cast<int>(rng.bounded(60));
      Price4 now = closes[di][static_cast<size_t>(minute -
                                                  kSessionOpenMinute)];
      Price4 later = closes[di][static_cast<size_t>(minute + 60 -
                                                    kSessionOpenMinute)];
      if (later == now) {
        ++out.resampled;
        continue;
      }
      realized = later > now ? 1 : -1;
      placed = true;
      break;
    }
    if (!placed) {
      throw DataError(
          "could not place a tweet over a moving window; raise volatility");
    }
    bool flipped =
        spec.flip_date.has_value() && days[di] < *spec.flip_date;
    bool aligned = rng.uniform() < spec.signal_strength;
    bool pick_realized_side = aligned != flipped;
    bool buy_word = pick_realized_side ? realized > 0 : realized < 0;
    const std::vector<std::string>& side =
        buy_word ? out.buy_words : out.sell_words;
    std::string text =
        cashtag + " " + side[rng.bounded(side.size())];
    if (spec.n_noise_words > 0) {
      uint64_t extra = rng.bounded(3);
      for (uint64_t e = 0; e < extra; ++e) {
        text += " " + out.noise_words[rng.bounded(out.noise_words.size())];
      }
    }
    int64_t eastern_wall =
        days_from_civil(days[di]) * 86400 + minute * 60 + second;
    drafts.push_back(
        {eastern_to_utc_seconds(eastern_wall), drafts.size(),
         std::move(text)});
  }
  std::sort(drafts.begin(), drafts.end(), [](const Draft& a, const Draft& b) {
    return a.utc_seconds != b.utc_seconds ? a.utc_seconds < b.utc_seconds
                                          : a.order < b.order;
  });
  out.tweets.reserve(drafts.size());
  char id_buf[32];
  for (size_t i = 0; i < drafts.size(); ++i) {
    Tweet t;
    std::snprintf(id_buf, sizeof(id_buf), "t%07zu", i + 1);
    t.id = id_buf;
    t.utc_seconds = drafts[i].utc_seconds;
    t.text = std::move(drafts[i].text);
    t.cashtags = extract_cashtags(t.text);
    out.tweets.push_back(std::move(t));
  }
  return out;
}

std::string tweets_jsonl(const std::vector<Tweet>& tweets) {
  std::string out;
  for (const Tweet& t : tweets) {
    nlohmann::ordered_json j;
    j["id"] = t.id;
    j["timestamp"] = format_iso8601_utc(t.utc_seconds);
    j["text"] = t.text;
    out += j.dump() + "\n";
  }
  return out;
}

std::string wordlist_text(const std::vector<std::string>& words,
                          const std::vector<std::string>& comments) {
  std::string out;
  for (const std::string& c : comments) out += "# " + c + "\n";
  for (const std::string& w : words) out += w + "\n";
  return out;
}

double recovery_score(const std::vector<std::string>& ranked_terms,
                      const std::vector<std::string>& planted, int k) {
  if (k <= 0 || planted.empty()) return 0.0;
  std::unordered_set<std::string> truth(planted.begin(), planted.end());
  int64_t hits = 0;
  int64_t considered = std::min<int64_t>(k, ranked_terms.size());
  for (int64_t i = 0; i < considered; ++i) {
    if (truth.count(ranked_terms[static_cast<size_t>(i)])) ++hits;
  }
  int64_t denom = std::min<int64_t>(k, static_cast<int64_t>(truth.size()));
  return static_cast<double>(hits) / static_cast<double>(denom);
}

}  // namespace stocksig

#include "stocksig/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "stocksig/errors.hpp"

namespace stocksig {

namespace {

void check_options(const BacktestOptions& options) {
  if (!(options.threshold >= 0.0 && options.threshold <= 1.0)) {
    throw ConfigError("threshold must lie in [0, 1]");
  }
  if (options.shares <= 0) throw ConfigError("shares must be positive");
  if (options.margin < 0.0) throw ConfigError("margin must be non-negative");
  if (options.fee_rate < 0.0) {
    throw ConfigError("fee rate must be non-negative");
  }
  int first = options.first_decision_hour * 60;
  int last = options.last_decision_hour * 60;
  if (first > last) {
    throw ConfigError("first decision hour is after the last");
  }
  if (first < kSessionOpenMinute || last + 60 > kSessionCloseMinute) {
    throw ConfigError(
        "decision hours must keep entry and exit inside the session");
  }
}

Cents exact_cents(int64_t pnl_p4) {
  if (pnl_p4 % 100 != 0) {
    throw NumericError("trade pnl is not a whole number of cents");
  }
  return pnl_p4 / 100;
}

}  // namespace

Cents size_account(const std::vector<MinuteBar>& bars, int shares,
                   double margin) {
  if (bars.empty()) throw DataError("cannot size an account from no bars");
  if (shares <= 0) throw ConfigError("shares must be positive");
  if (margin < 0.0) throw ConfigError("margin must be non-negative");
  Price4 max_high = 0;
  for (const MinuteBar& b : bars) max_high = std::max(max_high, b.high);
  int64_t multiplier =
      std::llround((1.0 + margin) * static_cast<double>(shares));
  int64_t account_p4 = max_high * multiplier;
  if (account_p4 <= 0) throw DataError("account size must be positive");
  return (account_p4 + 50) / 100;
}

void compute_returns(BacktestReport& report) {
  if (report.account_size <= 0) {
    throw DataError("account size must be positive");
  }
  report.return_rate = static_cast<double>(report.gross_pnl) /
                       static_cast<double>(report.account_size);
  report.net_return_rate = report.return_rate - report.fee_rate;
  report.annualized = std::pow(1.0 + report.return_rate, 12.0) - 1.0;
}

TradeBreakdown breakdown(const std::vector<Trade>& trades) {
  TradeBreakdown b;
  for (const Trade& t : trades) {
    DirectionStats& side =
        t.direction == SignalClass::Buy ? b.buy : b.sell;
    side.placed += 1;
    if (t.pnl > 0) side.correct += 1;
  }
  b.total_placed = b.buy.placed + b.sell.placed;
  b.total_correct = b.buy.correct + b.sell.correct;
  if (b.total_placed > 0) {
    double total = static_cast<double>(b.total_placed);
    b.buy.placed_pct = 100.0 * static_cast<double>(b.buy.placed) / total;
    b.sell.placed_pct = 100.0 * static_cast<double>(b.sell.placed) / total;
    b.total_correct_pct =
        100.0 * static_cast<double>(b.total_correct) / total;
  }
  if (b.buy.placed > 0) {
    b.buy.correct_pct = 100.0 * static_cast<double>(b.buy.correct) /
                        static_cast<double>(b.buy.placed);
  }
  if (b.sell.placed > 0) {
    b.sell.correct_pct = 100.0 * static_cast<double>(b.sell.correct) /
                         static_cast<double>(b.sell.placed);
  }
  return b;
}

BacktestReport run_backtest(const std::vector<LabeledDocument>& docs,
                            const std::vector<MinuteBar>& bars,
                            const DocClassifier& classify,
                            const BacktestOptions& options) {
  check_options(options);
  if (!classify) throw ConfigError("no classifier supplied");
  TradingCalendar cal = calendar_from_bars(bars);
  if (cal.empty()) throw DataError("no trading days in the bar data");

  std::vector<const LabeledDocument*> ordered;
  ordered.reserve(docs.size());
  for (const LabeledDocument& d : docs) ordered.push_back(&d);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const LabeledDocument* a, const LabeledDocument* b) {
                     return a->stamp < b->stamp;
                   });
  std::vector<MinuteStamp> stamps;
  stamps.reserve(ordered.size());
  for (const LabeledDocument* d : ordered) stamps.push_back(d->stamp);

  BacktestReport report;
  report.ticker = options.ticker;
  report.fee_rate = options.fee_rate;
  for (const Date& day : cal.days()) {
    for (int hour = options.first_decision_hour;
         hour <= options.last_decision_hour; ++hour) {
      MinuteStamp t = make_stamp(day, hour, 0);
      auto lo = std::lower_bound(stamps.begin(), stamps.end(), t - 60);
      auto hi = std::lower_bound(stamps.begin(), stamps.end(), t);
      int64_t tweet_count = hi - lo;
      if (tweet_count == 0) {
        report.skipped.push_back({t, "no documents in window", 0});
        continue;
      }
      int64_t classified = 0, buy_votes = 0;
      for (auto it = lo; it != hi; ++it) {
        const LabeledDocument* d = ordered[it - stamps.begin()];
        std::optional<SignalClass> vote = classify(*d);
        if (!vote) continue;
        ++classified;
        if (*vote == SignalClass::Buy) ++buy_votes;
      }
      if (classified == 0) {
        report.skipped.push_back(
            {t, "no classified documents in window", tweet_count});
        continue;
      }
      double buy_fraction =
          static_cast<double>(buy_votes) / static_cast<double>(classified);
      SignalClass direction = buy_fraction >= options.threshold
                                  ? SignalClass::Buy
                                  : SignalClass::Sell;
      std::optional<Price4> entry = try_price_at(bars, t);
      if (!entry) {
        report.skipped.push_back({t, "missing entry price", tweet_count});
        continue;
      }
      std::optional<Price4> exit = try_price_at(bars, t + 60);
      if (!exit) {
        report.skipped.push_back({t, "missing exit price", tweet_count});
        continue;
      }
      Trade trade;
      trade.ticker = options.ticker;
      trade.decision_stamp = t;
      trade.direction = direction;
      trade.shares = options.shares;
      trade.entry = *entry;
      trade.exit = *exit;
      int64_t diff = *exit - *entry;
      if (direction == SignalClass::Sell) diff = -diff;
      trade.pnl = exact_cents(diff * options.shares);
      trade.tweet_count = tweet_count;
      trade.buy_fraction = buy_fraction;
      report.trades.push_back(std::move(trade));
    }
  }
  for (const Trade& t : report.trades) report.gross_pnl += t.pnl;
  report.account_size = size_account(bars, options.shares, options.margin);
  compute_returns(report);
  report.directions = breakdown(report.trades);
  return report;
}

std::vector<Cents> cumulative_pnl(const std::vector<Trade>& trades) {
  std::vector<Cents> curve;
  curve.reserve(trades.size());
  Cents running = 0;
  for (const Trade& t : trades) {
    running += t.pnl;
    curve.push_back(running);
  }
  return curve;
}

std::map<Date, Cents> daily_pnl(const std::vector<Trade>& trades) {
  std::map<Date, Cents> out;
  for (const Trade& t : trades) {
    out[stamp_date(t.decision_stamp)] += t.pnl;
  }
  return out;
}

std::string trades_csv(const std::vector<Trade>& trades,
                       const std::vector<std::string>& comments) {
  std::string out;
  for (const std::string& c : comments) out += "# " + c + "\n";
  out +=
      "ticker,decision_time,direction,shares,entry,exit,pnl,"
      "tweet_count,buy_fraction\n";
  char buf[64];
  for (const Trade& t : trades) {
    out += t.ticker + "," + format_stamp(t.decision_stamp) + "," +
           to_string(t.direction) + "," + std::to_string(t.shares) + "," +
           format_price(t.entry) + "," + format_price(t.exit) + "," +
           format_cents(t.pnl) + "," + std::to_string(t.tweet_count) + ",";
    std::snprintf(buf, sizeof(buf), "%.10g\n", t.buy_fraction);
    out += buf;
  }
  return out;
}

std::string equity_curve_csv(const std::vector<Trade>& trades,
                             const std::vector<std::string>& comments) {
  std::string out;
  for (const std::string& c : comments) out += "# " + c + "\n";
  out += "trade,decision_time,cumulative_pnl\n";
  std::vector<Cents> curve = cumulative_pnl(trades);
  for (size_t i = 0; i < trades.size(); ++i) {
    out += std::to_string(i + 1) + "," +
           format_stamp(trades[i].decision_stamp) + "," +
           format_cents(curve[i]) + "\n";
  }
  return out;
}

std::string equity_curve_svg(const std::vector<EquitySeries>& series) {
  const double width = 900, height = 420;
  const double left = 70, right = 20, top = 34, bottom = 42;
  Cents lo = 0, hi = 0;
  size_t max_len = 0;
  for (const EquitySeries& s : series) {
    max_len = std::max(max_len, s.cumulative.size());
    for (Cents v : s.cumulative) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (lo == hi) {
    lo -= 100;
    hi += 100;
  }
  double span = static_cast<double>(hi - lo);
  double plot_w = width - left - right;
  double plot_h = height - top - bottom;
  // Every curve starts at the origin point before its first trade.
  size_t points = max_len + 1;
  auto x_of = [&](size_t i) {
    if (points <= 1) return left + plot_w / 2;
    return left + plot_w * static_cast<double>(i) /
                      static_cast<double>(points - 1);
  };
  auto y_of = [&](double cents) {
    return top + plot_h * (static_cast<double>(hi) - cents) / span;
  };

  static const char* kColors[] = {"#1f6fb4", "#c23b22", "#2a8f4e", "#b8860b"};
  char buf[256];
  std::string svg;
  std::snprintf(buf, sizeof(buf),
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
                "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                width, height, width, height);
  svg += buf;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Axes and horizontal grid with dollar labels.
  for (int tick = 0; tick <= 4; ++tick) {
    double cents = static_cast<double>(lo) + span * tick / 4.0;
    double y = y_of(cents);
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"#dddddd\"/>\n",
                  left, y, width - right, y);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"11\" "
                  "text-anchor=\"end\" fill=\"#444444\">%.2f</text>\n",
                  left - 6, y + 4, cents / 100.0);
    svg += buf;
  }
  if (lo < 0 && hi > 0) {
    double y = y_of(0.0);
    std::snprintf(buf, sizeof(buf),
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                  "stroke=\"#888888\" stroke-dasharray=\"4 3\"/>\n",
                  left, y, width - right, y);
    svg += buf;
  }
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" "
                "stroke=\"#333333\"/>\n",
                left, height - bottom, width - right, height - bottom);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" "
                "text-anchor=\"middle\" fill=\"#333333\">trade</text>\n",
                left + plot_w / 2, height - 10);
  svg += buf;
  std::snprintf(buf, sizeof(buf),
                "<text x=\"14\" y=\"%.1f\" font-size=\"12\" fill=\"#333333\" "
                "transform=\"rotate(-90 14 %.1f)\" text-anchor=\"middle\">"
                "cumulative pnl ($)</text>\n",
                top + plot_h / 2, top + plot_h / 2);
  svg += buf;

  for (size_t s = 0; s < series.size(); ++s) {
    const char* color = kColors[s % 4];
    std::string pts;
    std::snprintf(buf, sizeof(buf), "%.1f,%.1f", x_of(0), y_of(0.0));
    pts += buf;
    for (size_t i = 0; i < series[s].cumulative.size(); ++i) {
      std::snprintf(buf, sizeof(buf), " %.1f,%.1f", x_of(i + 1),
                    y_of(static_cast<double>(series[s].cumulative[i])));
      pts += buf;
    }
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.6\" points=\"" + pts + "\"/>\n";
    double lx = left + 8 + static_cast<double>(s) * 170;
    std::snprintf(buf, sizeof(buf),
                  "<rect x=\"%.1f\" y=\"10\" width=\"12\" height=\"12\" "
                  "fill=\"%s\"/>\n",
                  lx, color);
    svg += buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"20\" font-size=\"12\" "
                  "fill=\"#333333\">%s</text>\n",
                  lx + 16, series[s].name.c_str());
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

std::string backtest_report_json(const BacktestReport& report) {
  nlohmann::ordered_json j;
  j["ticker"] = report.ticker;
  j["account_size"] = format_cents(report.account_size);
  j["account_size_cents"] = report.account_size;
  j["gross_pnl"] = format_cents(report.gross_pnl);
  j["gross_pnl_cents"] = report.gross_pnl;
  j["fee_rate"] = report.fee_rate;
  j["return_rate"] = report.return_rate;
  j["net_return_rate"] = report.net_return_rate;
  j["annualized"] = report.annualized;
  auto side = [](const DirectionStats& s) {
    nlohmann::ordered_json d;
    d["placed"] = s.placed;
    d["placed_pct"] = s.placed_pct;
    d["correct"] = s.correct;
    d["correct_pct"] = s.correct_pct;
    return d;
  };
  j["breakdown"]["buy"] = side(report.directions.buy);
  j["breakdown"]["sell"] = side(report.directions.sell);
  j["breakdown"]["total_placed"] = report.directions.total_placed;
  j["breakdown"]["total_correct"] = report.directions.total_correct;
  j["breakdown"]["total_correct_pct"] = report.directions.total_correct_pct;
  j["trades"] = nlohmann::ordered_json::array();
  for (const Trade& t : report.trades) {
    nlohmann::ordered_json row;
    row["decision_time"] = format_stamp(t.decision_stamp);
    row["direction"] = to_string(t.direction);
    row["shares"] = t.shares;
    row["entry"] = format_price(t.entry);
    row["exit"] = format_price(t.exit);
    row["pnl"] = format_cents(t.pnl);
    row["pnl_cents"] = t.pnl;
    row["tweet_count"] = t.tweet_count;
    row["buy_fraction"] = t.buy_fraction;
    j["trades"].push_back(std::move(row));
  }
  j["skipped_windows"] = nlohmann::ordered_json::array();
  for (const SkippedWindow& s : report.skipped) {
    nlohmann::ordered_json row;
    row["decision_time"] = format_stamp(s.decision_stamp);
    row["reason"] = s.reason;
    row["tweet_count"] = s.tweet_count;
    j["skipped_windows"].push_back(std::move(row));
  }
  j["equity_curve_cents"] = cumulative_pnl(report.trades);
  return j.dump(2) + "\n";
}

}  // namespace stocksig

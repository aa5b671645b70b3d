#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stocksig/calendar.hpp"
#include "stocksig/ingest.hpp"
#include "stocksig/labeler.hpp"
#include "stocksig/price.hpp"

namespace stocksig {

struct Trade {
  std::string ticker;
  MinuteStamp decision_stamp = 0;  // on the hour
  SignalClass direction = SignalClass::Buy;
  int shares = 100;
  Price4 entry = 0;
  Price4 exit = 0;
  Cents pnl = 0;  // (exit-entry)*shares for Buy, negated for Sell
  int64_t tweet_count = 0;  // all documents in the window
  double buy_fraction = 0.0;  // over classified documents only
};

struct SkippedWindow {
  MinuteStamp decision_stamp = 0;
  std::string reason;
  int64_t tweet_count = 0;
};

struct DirectionStats {
  int64_t placed = 0;
  int64_t correct = 0;  // strictly positive pnl
  double placed_pct = 0.0;   // of all trades, 0..100
  double correct_pct = 0.0;  // of this direction's trades, 0..100
};

struct TradeBreakdown {
  DirectionStats buy;
  DirectionStats sell;
  int64_t total_placed = 0;
  int64_t total_correct = 0;
  double total_correct_pct = 0.0;
};

struct BacktestReport {
  std::string ticker;
  std::vector<Trade> trades;
  std::vector<SkippedWindow> skipped;
  Cents gross_pnl = 0;
  Cents account_size = 0;
  double fee_rate = 0.0096;
  double return_rate = 0.0;
  double net_return_rate = 0.0;
  double annualized = 0.0;
  TradeBreakdown directions;
};

// Returns the document's class vote, or nullopt when it contributes no
// signal (lexicon methods leave many documents unclassified).
using DocClassifier =
    std::function<std::optional<SignalClass>(const LabeledDocument&)>;

struct BacktestOptions {
  std::string ticker;
  double threshold = 0.5;  // buy_fraction >= threshold places a Buy
  int first_decision_hour = 10;
  int last_decision_hour = 15;
  int shares = 100;
  double margin = 0.10;
  double fee_rate = 0.0096;
};

// Walks every trading day in the bars, one decision per hour. Each
// decision at t votes over documents stamped in [t-60min, t), enters at
// the t close and exits at the t+60min close. Windows without documents,
// without classified documents, or without prices are recorded as
// skipped. Account sizing and returns are filled in.
BacktestReport run_backtest(const std::vector<LabeledDocument>& docs,
                            const std::vector<MinuteBar>& bars,
                            const DocClassifier& classify,
                            const BacktestOptions& options);

// (1 + margin) * max bar high * shares, rounded to the nearest cent.
Cents size_account(const std::vector<MinuteBar>& bars, int shares,
                   double margin);

// Fills return_rate (gross pnl / account), net_return_rate (minus the
// monthly fee) and annualized ((1+r)^12 - 1) from the report's pnl.
void compute_returns(BacktestReport& report);

TradeBreakdown breakdown(const std::vector<Trade>& trades);

std::vector<Cents> cumulative_pnl(const std::vector<Trade>& trades);

std::map<Date, Cents> daily_pnl(const std::vector<Trade>& trades);

std::string trades_csv(const std::vector<Trade>& trades,
                       const std::vector<std::string>& comments = {});

std::string equity_curve_csv(const std::vector<Trade>& trades,
                             const std::vector<std::string>& comments = {});

struct EquitySeries {
  std::string name;
  std::vector<Cents> cumulative;
};

// Self-contained line chart of cumulative pnl per series, shared x axis
// of trade ordinals.
std::string equity_curve_svg(const std::vector<EquitySeries>& series);

std::string backtest_report_json(const BacktestReport& report);

}  // namespace stocksig

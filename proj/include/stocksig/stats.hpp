#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "stocksig/calendar.hpp"
#include "stocksig/ingest.hpp"
#include "stocksig/price.hpp"

namespace stocksig {

// Binomial distribution in log space, stable for n up to 1e6.
double binom_log_pmf(int64_t n, int64_t k, double p);
double binom_pmf(int64_t n, int64_t k, double p);

// P(X >= k_min) for X ~ Binomial(n, p), summed in log-sum-exp.
double binom_survival(int64_t n, int64_t k_min, double p);

// Discounts a favorable-period selection over `frames` candidate windows.
// Linear (Bonferroni-style) multiplication, clipped at 1.
double frame_adjust(double prob, double frames);

// Alternative treating the frames as independent trials.
double frame_adjust_independent(double prob, double frames);

struct SignificanceReport {
  int64_t n = 0;
  int64_t k = 0;
  double p = 0.5;
  double frames = 1.0;
  double pmf = 0.0;
  double survival_at_k = 0.0;        // P(X >= k)
  double survival_above_k = 0.0;     // P(X >= k+1)
  double frame_adjusted_pmf = 0.0;
  double frame_adjusted_survival = 0.0;        // from survival_at_k
  double frame_adjusted_survival_above = 0.0;  // from survival_above_k
  double independent_periods_variant = 0.0;    // 1-(1-survival_at_k)^frames
};

SignificanceReport significance(int64_t n, int64_t k, double p, double frames);

std::string significance_json(const SignificanceReport& r);

struct SharpeResult {
  double mean_diff = 0.0;
  double std_diff = 0.0;
  double sharpe = 0.0;
  int64_t periods = 0;
};

// d_t = strategy_t - benchmark_t; sharpe = mean(d) / sample std(d).
// Throws DataError on length mismatch or < 2 periods, NumericError on a
// constant differential.
SharpeResult sharpe(const std::vector<double>& strategy,
                    const std::vector<double>& benchmark);

// Close-to-close daily returns in bar order, one per consecutive
// trading-day pair.
std::vector<double> daily_close_returns(const std::vector<MinuteBar>& bars);

struct AlignedReturns {
  std::vector<Date> days;
  std::vector<double> strategy;
  std::vector<double> benchmark;
};

// Aligns strategy daily returns (day pnl / account size, zero on days
// without trades) with benchmark daily close-to-close returns. The
// benchmark's first day only seeds its first return, so strategy pnl on
// that day is not representable and the day is dropped.
AlignedReturns align_daily_returns(const std::map<Date, Cents>& pnl_by_day,
                                   Cents account_size,
                                   const std::vector<MinuteBar>& benchmark);

}  // namespace stocksig

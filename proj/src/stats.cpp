#include "stocksig/stats.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "stocksig/errors.hpp"

namespace stocksig {

namespace {

void check_binom_domain(int64_t n, int64_t k, double p) {
  if (n < 0) throw ConfigError("n must be non-negative");
  if (k < 0 || k > n) throw ConfigError("k must lie in [0, n]");
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("p must lie in (0, 1)");
}

}  // namespace

double binom_log_pmf(int64_t n, int64_t k, double p) {
  check_binom_domain(n, k, p);
  double dn = static_cast<double>(n), dk = static_cast<double>(k);
  return std::lgamma(dn + 1.0) - std::lgamma(dk + 1.0) -
         std::lgamma(dn - dk + 1.0) + dk * std::log(p) +
         (dn - dk) * std::log1p(-p);
}

double binom_pmf(int64_t n, int64_t k, double p) {
  return std::exp(binom_log_pmf(n, k, p));
}

double binom_survival(int64_t n, int64_t k_min, double p) {
  if (n < 0) throw ConfigError("n must be non-negative");
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("p must lie in (0, 1)");
  if (k_min <= 0) return 1.0;
  if (k_min > n) return 0.0;
  std::vector<double> logs;
  logs.reserve(static_cast<size_t>(n - k_min + 1));
  for (int64_t j = k_min; j <= n; ++j) logs.push_back(binom_log_pmf(n, j, p));
  double top = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (double l : logs) sum += std::exp(l - top);
  return std::exp(top + std::log(sum));
}

double frame_adjust(double prob, double frames) {
  return std::min(1.0, prob * frames);
}

double frame_adjust_independent(double prob, double frames) {
  if (prob >= 1.0) return 1.0;
  return 1.0 - std::exp(frames * std::log1p(-prob));
}

SignificanceReport significance(int64_t n, int64_t k, double p,
                                double frames) {
  check_binom_domain(n, k, p);
  if (frames < 1.0) throw ConfigError("frames must be at least 1");
  SignificanceReport r;
  r.n = n;
  r.k = k;
  r.p = p;
  r.frames = frames;
  r.pmf = binom_pmf(n, k, p);
  r.survival_at_k = binom_survival(n, k, p);
  r.survival_above_k = binom_survival(n, k + 1, p);
  r.frame_adjusted_pmf = frame_adjust(r.pmf, frames);
  r.frame_adjusted_survival = frame_adjust(r.survival_at_k, frames);
  r.frame_adjusted_survival_above = frame_adjust(r.survival_above_k, frames);
  r.independent_periods_variant =
      frame_adjust_independent(r.survival_at_k, frames);
  return r;
}

std::string significance_json(const SignificanceReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["p"] = r.p;
  j["frames"] = r.frames;
  j["pmf"] = r.pmf;
  j["survival"] = r.survival_at_k;
  j["survival_above"] = r.survival_above_k;
  j["frame_adjusted_pmf"] = r.frame_adjusted_pmf;
  j["frame_adjusted_survival"] = r.frame_adjusted_survival;
  j["frame_adjusted_survival_above"] = r.frame_adjusted_survival_above;
  j["independent_periods_variant"] = r.independent_periods_variant;
  return j.dump(2) + "\n";
}

SharpeResult sharpe(const std::vector<double>& strategy,
                    const std::vector<double>& benchmark) {
  if (strategy.size() != benchmark.size()) {
    throw DataError("strategy and benchmark series lengths differ");
  }
  if (strategy.size() < 2) {
    throw DataError("need at least two return periods");
  }
  SharpeResult r;
  r.periods = static_cast<int64_t>(strategy.size());
  std::vector<double> d(strategy.size());
  for (size_t i = 0; i < d.size(); ++i) d[i] = strategy[i] - benchmark[i];
  double mean = 0.0;
  for (double x : d) mean += x;
  mean /= static_cast<double>(d.size());
  double ss = 0.0;
  for (double x : d) ss += (x - mean) * (x - mean);
  double var = ss / static_cast<double>(d.size() - 1);
  r.mean_diff = mean;
  r.std_diff = std::sqrt(var);
  if (r.std_diff == 0.0) {
    throw NumericError(
        "differential return series is constant; risk is undefined");
  }
  r.sharpe = mean / r.std_diff;
  return r;
}

std::vector<double> daily_close_returns(const std::vector<MinuteBar>& bars) {
  if (bars.empty()) throw DataError("benchmark bar series is empty");
  std::vector<std::pair<Date, Price4>> day_close;
  for (const MinuteBar& b : bars) {
    Date d = stamp_date(b.stamp);
    if (!day_close.empty() && day_close.back().first == d) {
      day_close.back().second = b.close;
    } else {
      day_close.push_back({d, b.close});
    }
  }
  std::vector<double> returns;
  returns.reserve(day_close.size() > 0 ? day_close.size() - 1 : 0);
  for (size_t i = 1; i < day_close.size(); ++i) {
    if (day_close[i - 1].second <= 0) {
      throw NumericError("benchmark close must be positive for returns");
    }
    returns.push_back(
        static_cast<double>(day_close[i].second - day_close[i - 1].second) /
        static_cast<double>(day_close[i - 1].second));
  }
  return returns;
}

AlignedReturns align_daily_returns(const std::map<Date, Cents>& pnl_by_day,
                                   Cents account_size,
                                   const std::vector<MinuteBar>& benchmark) {
  if (account_size <= 0) throw DataError("account size must be positive");
  std::vector<Date> bench_days;
  for (const MinuteBar& b : benchmark) {
    Date d = stamp_date(b.stamp);
    if (bench_days.empty() || !(bench_days.back() == d)) {
      bench_days.push_back(d);
    }
  }
  std::vector<double> bench_returns = daily_close_returns(benchmark);
  if (bench_returns.empty()) {
    throw DataError("benchmark covers fewer than two trading days");
  }
  AlignedReturns out;
  out.benchmark = bench_returns;
  out.days.assign(bench_days.begin() + 1, bench_days.end());
  out.strategy.assign(out.days.size(), 0.0);
  for (const auto& [day, pnl] : pnl_by_day) {
    auto it = std::lower_bound(out.days.begin(), out.days.end(), day);
    if (it == out.days.end() || !(*it == day)) {
      if (day == bench_days.front()) continue;  // seeds the first return only
      throw DataError("trade day " + format_date(day) +
                      " is missing from the benchmark bars");
    }
    out.strategy[static_cast<size_t>(it - out.days.begin())] =
        static_cast<double>(pnl) / static_cast<double>(account_size);
  }
  return out;
}

}  // namespace stocksig

#include "stocksig/select.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "stocksig/errors.hpp"

namespace stocksig {

namespace {

struct ClassTotals {
  int64_t n_buy = 0;
  int64_t n_sell = 0;
};

ClassTotals count_classes(const std::vector<SignalClass>& labels) {
  ClassTotals t;
  for (SignalClass c : labels) {
    if (c == SignalClass::Buy) {
      ++t.n_buy;
    } else {
      ++t.n_sell;
    }
  }
  if (t.n_buy == 0 || t.n_sell == 0) {
    throw DataError("feature ranking needs both classes present");
  }
  return t;
}

void check_shape(const DocTermMatrix& m,
                 const std::vector<SignalClass>& labels) {
  if (m.n_rows() != labels.size()) {
    throw DataError("matrix rows and label count differ");
  }
}

}  // namespace

std::vector<int> ranked_indices(const RankerScores& scores) {
  std::vector<int> idx(scores.scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (scores.scores[a] != scores.scores[b]) {
      return scores.scores[a] > scores.scores[b];
    }
    return a < b;
  });
  return idx;
}

RankerScores chi2_scores(const DocTermMatrix& m,
                         const std::vector<SignalClass>& labels) {
  check_shape(m, labels);
  ClassTotals t = count_classes(labels);
  std::vector<int64_t> present_buy(m.n_cols, 0), present_sell(m.n_cols, 0);
  for (size_t r = 0; r < m.rows.size(); ++r) {
    bool buy = labels[r] == SignalClass::Buy;
    for (const MatrixEntry& e : m.rows[r]) {
      if (e.weight > 0.0) {
        if (buy) {
          ++present_buy[e.col];
        } else {
          ++present_sell[e.col];
        }
      }
    }
  }
  double n = static_cast<double>(t.n_buy + t.n_sell);
  RankerScores out{"cs", std::vector<double>(m.n_cols, 0.0)};
  for (int c = 0; c < m.n_cols; ++c) {
    double cells[2][2] = {
        {static_cast<double>(t.n_sell - present_sell[c]),
         static_cast<double>(t.n_buy - present_buy[c])},
        {static_cast<double>(present_sell[c]),
         static_cast<double>(present_buy[c])},
    };
    double row_sum[2] = {cells[0][0] + cells[0][1],
                         cells[1][0] + cells[1][1]};
    double col_sum[2] = {cells[0][0] + cells[1][0],
                         cells[0][1] + cells[1][1]};
    double chi2 = 0.0;
    for (int et = 0; et < 2; ++et) {
      for (int ec = 0; ec < 2; ++ec) {
        double expected = row_sum[et] * col_sum[ec] / n;
        if (expected > 0.0) {
          double diff = cells[et][ec] - expected;
          chi2 += diff * diff / expected;
        }
      }
    }
    out.scores[c] = chi2;
  }
  return out;
}

RankerScores f_scores(const DocTermMatrix& m,
                      const std::vector<SignalClass>& labels) {
  check_shape(m, labels);
  ClassTotals t = count_classes(labels);
  int cols = m.n_cols;
  std::vector<double> sum_buy(cols, 0.0), sum_sell(cols, 0.0);
  for (size_t r = 0; r < m.rows.size(); ++r) {
    bool buy = labels[r] == SignalClass::Buy;
    for (const MatrixEntry& e : m.rows[r]) {
      (buy ? sum_buy : sum_sell)[e.col] += e.weight;
    }
  }
  double nb = static_cast<double>(t.n_buy);
  double ns = static_cast<double>(t.n_sell);
  double n = nb + ns;
  std::vector<double> mean_buy(cols), mean_sell(cols), ssw(cols, 0.0);
  std::vector<int64_t> nnz_buy(cols, 0), nnz_sell(cols, 0);
  for (int c = 0; c < cols; ++c) {
    mean_buy[c] = sum_buy[c] / nb;
    mean_sell[c] = sum_sell[c] / ns;
  }
  // Within-group sum of squares, two-pass: explicit entries plus the
  // implicit zeros of each class.
  for (size_t r = 0; r < m.rows.size(); ++r) {
    bool buy = labels[r] == SignalClass::Buy;
    for (const MatrixEntry& e : m.rows[r]) {
      double d = e.weight - (buy ? mean_buy : mean_sell)[e.col];
      ssw[e.col] += d * d;
      ++(buy ? nnz_buy : nnz_sell)[e.col];
    }
  }
  RankerScores out{"fv", std::vector<double>(cols, 0.0)};
  std::vector<bool> degenerate(cols, false);
  double max_finite = 0.0;
  for (int c = 0; c < cols; ++c) {
    double zeros_buy = nb - static_cast<double>(nnz_buy[c]);
    double zeros_sell = ns - static_cast<double>(nnz_sell[c]);
    double ssw_total = ssw[c] + zeros_buy * mean_buy[c] * mean_buy[c] +
                       zeros_sell * mean_sell[c] * mean_sell[c];
    double grand = (sum_buy[c] + sum_sell[c]) / n;
    double db = mean_buy[c] - grand;
    double ds = mean_sell[c] - grand;
    double ssb = nb * db * db + ns * ds * ds;
    if (ssb == 0.0) {
      out.scores[c] = 0.0;
    } else if (ssw_total <= 0.0) {
      degenerate[c] = true;
    } else {
      out.scores[c] = ssb / (ssw_total / (n - 2.0));
      max_finite = std::max(max_finite, out.scores[c]);
    }
  }
  for (int c = 0; c < cols; ++c) {
    if (degenerate[c]) out.scores[c] = max_finite + 1.0;
  }
  return out;
}

RankerScores mi_scores(const DocTermMatrix& m,
                       const std::vector<SignalClass>& labels) {
  check_shape(m, labels);
  ClassTotals t = count_classes(labels);
  std::vector<int64_t> present_buy(m.n_cols, 0), present_sell(m.n_cols, 0);
  for (size_t r = 0; r < m.rows.size(); ++r) {
    bool buy = labels[r] == SignalClass::Buy;
    for (const MatrixEntry& e : m.rows[r]) {
      if (e.weight > 0.0) {
        if (buy) {
          ++present_buy[e.col];
        } else {
          ++present_sell[e.col];
        }
      }
    }
  }
  double n = static_cast<double>(t.n_buy + t.n_sell);
  double p_buy = static_cast<double>(t.n_buy) / n;
  RankerScores out{"mi", std::vector<double>(m.n_cols, 0.0)};
  for (int c = 0; c < m.n_cols; ++c) {
    double joint[2][2] = {
        {static_cast<double>(t.n_sell - present_sell[c]) / n,
         static_cast<double>(t.n_buy - present_buy[c]) / n},
        {static_cast<double>(present_sell[c]) / n,
         static_cast<double>(present_buy[c]) / n},
    };
    double p_present = joint[1][0] + joint[1][1];
    double p_term[2] = {1.0 - p_present, p_present};
    double p_class[2] = {1.0 - p_buy, p_buy};
    double mi = 0.0;
    for (int et = 0; et < 2; ++et) {
      for (int ec = 0; ec < 2; ++ec) {
        double p = joint[et][ec];
        if (p > 0.0) mi += p * std::log(p / (p_term[et] * p_class[ec]));
      }
    }
    out.scores[c] = mi;
  }
  return out;
}

RankerScores rfe_scores(const ImportanceFn& trainer, const DocTermMatrix& m,
                        const std::vector<SignalClass>& labels, int target_k,
                        double step_frac) {
  check_shape(m, labels);
  if (target_k <= 0) throw ConfigError("rfe target size must be positive");
  if (step_frac <= 0.0 || step_frac >= 1.0) {
    throw ConfigError("rfe step fraction must be in (0,1)");
  }
  std::vector<int> alive(m.n_cols);
  std::iota(alive.begin(), alive.end(), 0);
  RankerScores out{"rfe", std::vector<double>(m.n_cols, 0.0)};
  int round = 1;
  while (static_cast<int>(alive.size()) > target_k) {
    DocTermMatrix sub = take_columns(m, alive);
    std::vector<double> importance = trainer(sub, labels);
    if (importance.size() != alive.size()) {
      throw NumericError("importance vector size mismatch in rfe");
    }
    size_t drop = static_cast<size_t>(std::ceil(
        step_frac * static_cast<double>(alive.size())));
    drop = std::min(drop, alive.size() - static_cast<size_t>(target_k));
    std::vector<size_t> pos(alive.size());
    std::iota(pos.begin(), pos.end(), size_t{0});
    std::stable_sort(pos.begin(), pos.end(), [&](size_t a, size_t b) {
      if (importance[a] != importance[b]) {
        return importance[a] < importance[b];
      }
      return alive[a] < alive[b];
    });
    std::vector<bool> dead(alive.size(), false);
    for (size_t i = 0; i < drop; ++i) {
      dead[pos[i]] = true;
      out.scores[alive[pos[i]]] = static_cast<double>(round);
    }
    std::vector<int> next;
    next.reserve(alive.size() - drop);
    for (size_t i = 0; i < alive.size(); ++i) {
      if (!dead[i]) next.push_back(alive[i]);
    }
    alive = std::move(next);
    ++round;
  }
  for (int col : alive) out.scores[col] = static_cast<double>(round);
  return out;
}

Selection top_k(const DocTermMatrix& m, const RankerScores& scores, int k) {
  if (k <= 0) throw ConfigError("feature subset size must be positive");
  if (static_cast<int>(scores.scores.size()) != m.n_cols) {
    throw DataError("score vector length and column count differ");
  }
  k = std::min(k, m.n_cols);
  std::vector<int> order = ranked_indices(scores);
  Selection sel;
  sel.kept.assign(order.begin(), order.begin() + k);
  sel.matrix = take_columns(m, sel.kept);
  return sel;
}

std::string dictionary_csv(const Vocabulary& vocab,
                           const std::vector<int>& kept,
                           const RankerScores& scores,
                           const std::vector<double>& buy_weights,
                           const std::vector<double>& sell_weights) {
  if (buy_weights.size() != kept.size() ||
      sell_weights.size() != kept.size()) {
    throw DataError("dictionary weights must align with kept columns");
  }
  std::string out = "rank,term,score,buy_weight,sell_weight\n";
  char buf[128];
  for (size_t i = 0; i < kept.size(); ++i) {
    int col = kept[i];
    std::snprintf(buf, sizeof(buf), "%zu,%s,%.10g,%.10g,%.10g\n", i + 1,
                  vocab.terms[col].c_str(), scores.scores[col],
                  buy_weights[i], sell_weights[i]);
    out += buf;
  }
  return out;
}

}  // namespace stocksig

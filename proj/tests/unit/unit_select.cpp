#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "stocksig/errors.hpp"
#include "stocksig/rng.hpp"
#include "stocksig/select.hpp"
#include "stocksig/vectorizer.hpp"

using namespace stocksig;

namespace {

DocTermMatrix dense(const std::vector<std::vector<double>>& values) {
  DocTermMatrix m;
  m.n_cols = values.empty() ? 0 : static_cast<int>(values[0].size());
  m.word_cols = m.n_cols;
  for (const auto& r : values) {
    std::vector<MatrixEntry> row;
    for (int c = 0; c < static_cast<int>(r.size()); ++c) {
      if (r[c] != 0.0) row.push_back({c, r[c]});
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

std::vector<SignalClass> classes(const std::string& pattern) {
  std::vector<SignalClass> out;
  for (char c : pattern) {
    out.push_back(c == 'B' ? SignalClass::Buy : SignalClass::Sell);
  }
  return out;
}

// Direct 2x2 formula evaluation over the presence table.
double chi2_reference(const std::vector<std::vector<double>>& values,
                      const std::vector<SignalClass>& labels, int col) {
  double obs[2][2] = {{0, 0}, {0, 0}};
  for (size_t i = 0; i < values.size(); ++i) {
    int present = values[i][static_cast<size_t>(col)] > 0.0 ? 1 : 0;
    int buy = labels[i] == SignalClass::Buy ? 1 : 0;
    obs[present][buy] += 1.0;
  }
  double n = static_cast<double>(values.size());
  double stat = 0.0;
  for (int p = 0; p < 2; ++p) {
    for (int b = 0; b < 2; ++b) {
      double row = obs[p][0] + obs[p][1];
      double colsum = obs[0][b] + obs[1][b];
      double expect = row * colsum / n;
      if (expect > 0.0) {
        stat += (obs[p][b] - expect) * (obs[p][b] - expect) / expect;
      }
    }
  }
  return stat;
}

double mi_reference(const std::vector<std::vector<double>>& values,
                    const std::vector<SignalClass>& labels, int col) {
  double joint[2][2] = {{0, 0}, {0, 0}};
  double n = static_cast<double>(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    int present = values[i][static_cast<size_t>(col)] > 0.0 ? 1 : 0;
    int buy = labels[i] == SignalClass::Buy ? 1 : 0;
    joint[present][buy] += 1.0 / n;
  }
  double mi = 0.0;
  for (int p = 0; p < 2; ++p) {
    for (int b = 0; b < 2; ++b) {
      double pj = joint[p][b];
      if (pj <= 0.0) continue;
      double pp = joint[p][0] + joint[p][1];
      double pb = joint[0][b] + joint[1][b];
      mi += pj * std::log(pj / (pp * pb));
    }
  }
  return mi;
}

// Group-variance ANOVA with k=2.
double f_reference(const std::vector<std::vector<double>>& values,
                   const std::vector<SignalClass>& labels, int col,
                   double sentinel_base) {
  double sum[2] = {0, 0};
  double count[2] = {0, 0};
  for (size_t i = 0; i < values.size(); ++i) {
    int g = labels[i] == SignalClass::Buy ? 1 : 0;
    sum[g] += values[i][static_cast<size_t>(col)];
    count[g] += 1.0;
  }
  double n = count[0] + count[1];
  double grand = (sum[0] + sum[1]) / n;
  double ssb = 0.0, ssw = 0.0;
  for (int g = 0; g < 2; ++g) {
    double mean = sum[g] / count[g];
    ssb += count[g] * (mean - grand) * (mean - grand);
  }
  for (size_t i = 0; i < values.size(); ++i) {
    int g = labels[i] == SignalClass::Buy ? 1 : 0;
    double d = values[i][static_cast<size_t>(col)] - sum[g] / count[g];
    ssw += d * d;
  }
  if (ssb <= 0.0) return 0.0;
  if (ssw <= 0.0) return sentinel_base;
  return (ssb / 1.0) / (ssw / (n - 2.0));
}

}  // namespace

TEST_CASE("chi2 equals n for a perfectly separating balanced term") {
  std::vector<std::vector<double>> values;
  std::string pattern;
  for (int i = 0; i < 10; ++i) {
    values.push_back({1.0});
    pattern += 'B';
  }
  for (int i = 0; i < 10; ++i) {
    values.push_back({0.0});
    pattern += 'S';
  }
  RankerScores s = chi2_scores(dense(values), classes(pattern));
  CHECK(s.ranker == "cs");
  CHECK(s.scores[0] == doctest::Approx(20.0).epsilon(1e-12));
}

TEST_CASE("chi2 is zero for an independent term") {
  std::vector<std::vector<double>> values = {
      {1.0}, {0.0}, {1.0}, {0.0}};
  RankerScores s = chi2_scores(dense(values), classes("BBSS"));
  CHECK(s.scores[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("chi2 requires both classes") {
  CHECK_THROWS_AS(chi2_scores(dense({{1.0}, {0.0}}), classes("BB")),
                  DataError);
}

TEST_CASE("anova f reproduces the hand computation") {
  // Buy weights {2,4}, Sell {1,3}: SSB=1, SSW=4 -> F = 0.5.
  std::vector<std::vector<double>> values = {{2.0}, {4.0}, {1.0}, {3.0}};
  RankerScores s = f_scores(dense(values), classes("BBSS"));
  CHECK(s.ranker == "fv");
  CHECK(s.scores[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("anova f degenerate policies") {
  // Identical in both classes: zero between-variance -> 0, even with
  // zero within-variance.
  RankerScores same =
      f_scores(dense({{1.0}, {1.0}, {1.0}, {1.0}}), classes("BBSS"));
  CHECK(same.scores[0] == 0.0);
  // Buy {1,1}, Sell {0,0}: zero within-variance -> sentinel above any
  // finite score.
  std::vector<std::vector<double>> values = {
      {1.0, 2.0}, {1.0, 4.0}, {0.0, 1.0}, {0.0, 3.0}};
  RankerScores s = f_scores(dense(values), classes("BBSS"));
  CHECK(s.scores[1] == doctest::Approx(0.5));
  CHECK(s.scores[0] > s.scores[1]);
  CHECK(std::isfinite(s.scores[0]));
}

TEST_CASE("mutual information at the perfect-dependence bound") {
  std::vector<std::vector<double>> values = {{1.0}, {1.0}, {0.0}, {0.0}};
  RankerScores s = mi_scores(dense(values), classes("BBSS"));
  CHECK(s.ranker == "mi");
  CHECK(s.scores[0] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("mutual information of an independent term is zero") {
  std::vector<std::vector<double>> values = {{1.0}, {0.0}, {1.0}, {0.0}};
  RankerScores s = mi_scores(dense(values), classes("BBSS"));
  CHECK(s.scores[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("mutual information of a one-sided term") {
  // Buy docs {present, absent}, Sell docs {absent, absent}.
  std::vector<std::vector<double>> values = {{1.0}, {0.0}, {0.0}, {0.0}};
  RankerScores s = mi_scores(dense(values), classes("BBSS"));
  CHECK(s.scores[0] ==
        doctest::Approx(0.21576155433883565).epsilon(1e-12));
}

TEST_CASE("rankers match brute-force references on random corpora") {
  SplitMix64 rng(314159);
  for (int trial = 0; trial < 60; ++trial) {
    size_t n_docs = 4 + rng.bounded(17);   // 4..20
    int n_feats = 1 + static_cast<int>(rng.bounded(5));
    std::vector<std::vector<double>> values(n_docs);
    std::string pattern;
    for (size_t i = 0; i < n_docs; ++i) {
      // Guarantee both classes.
      pattern += (i == 0) ? 'B' : (i == 1) ? 'S'
                                           : (rng.bounded(2) ? 'B' : 'S');
      for (int c = 0; c < n_feats; ++c) {
        values[i].push_back(rng.bounded(3) == 0 ? 0.0
                                                : 0.25 * (1 + rng.bounded(8)));
      }
    }
    std::vector<SignalClass> labels = classes(pattern);
    DocTermMatrix m = dense(values);
    RankerScores cs = chi2_scores(m, labels);
    RankerScores fv = f_scores(m, labels);
    RankerScores mi = mi_scores(m, labels);
    double sentinel = 0.0;
    for (int c = 0; c < n_feats; ++c) {
      double ref = f_reference(values, labels, c, -1.0);
      if (ref > sentinel) sentinel = ref;
    }
    sentinel += 1.0;
    auto close = [](double a, double b) {
      return std::abs(a - b) < 1e-9 * std::max(1.0, std::abs(b));
    };
    for (int c = 0; c < n_feats; ++c) {
      REQUIRE(close(cs.scores[static_cast<size_t>(c)],
                    chi2_reference(values, labels, c)));
      REQUIRE(close(mi.scores[static_cast<size_t>(c)],
                    mi_reference(values, labels, c)));
      REQUIRE(close(fv.scores[static_cast<size_t>(c)],
                    f_reference(values, labels, c, sentinel)));
    }
  }
}

TEST_CASE("presence rankers are invariant to positive rescaling") {
  std::vector<std::vector<double>> values = {
      {0.4, 0.0}, {0.1, 0.2}, {0.0, 0.9}, {0.7, 0.3}};
  std::vector<std::vector<double>> scaled = values;
  for (auto& row : scaled) {
    for (double& v : row) v *= 17.5;
  }
  std::vector<SignalClass> labels = classes("BBSS");
  CHECK(chi2_scores(dense(values), labels).scores ==
        chi2_scores(dense(scaled), labels).scores);
  CHECK(mi_scores(dense(values), labels).scores ==
        mi_scores(dense(scaled), labels).scores);
}

TEST_CASE("rankers ignore document order") {
  std::vector<std::vector<double>> values = {
      {1.0, 0.0}, {0.5, 0.5}, {0.0, 1.0}, {0.25, 0.0}};
  std::vector<SignalClass> labels = classes("BSBS");
  std::vector<std::vector<double>> rev(values.rbegin(), values.rend());
  std::vector<SignalClass> rlabels(labels.rbegin(), labels.rend());
  for (auto fn : {chi2_scores, f_scores, mi_scores}) {
    RankerScores a = fn(dense(values), labels);
    RankerScores b = fn(dense(rev), rlabels);
    REQUIRE(a.scores.size() == b.scores.size());
    for (size_t i = 0; i < a.scores.size(); ++i) {
      CHECK(a.scores[i] == doctest::Approx(b.scores[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("ranking is descending score with index ties ascending") {
  RankerScores s{"cs", {1.0, 3.0, 3.0, 0.5}};
  CHECK(ranked_indices(s) == std::vector<int>{1, 2, 0, 3});
}

TEST_CASE("top_k keeps the best columns in rank order") {
  std::vector<std::vector<double>> values = {
      {0.1, 0.2, 0.3}, {0.4, 0.0, 0.6}};
  DocTermMatrix m = dense(values);
  RankerScores s{"cs", {1.0, 5.0, 3.0}};
  Selection sel = top_k(m, s, 2);
  CHECK(sel.kept == std::vector<int>{1, 2});
  CHECK(sel.matrix.n_cols == 2);
  REQUIRE(sel.matrix.rows[0].size() == 2);
  CHECK(sel.matrix.rows[0][0].weight == doctest::Approx(0.2));
  CHECK(sel.matrix.rows[0][1].weight == doctest::Approx(0.3));
  REQUIRE(sel.matrix.rows[1].size() == 1);
  CHECK(sel.matrix.rows[1][0].col == 1);

  // k above the column count clamps; k <= 0 is a config error.
  CHECK(top_k(m, s, 99).kept.size() == 3);
  CHECK_THROWS_AS(top_k(m, s, 0), ConfigError);
  CHECK_THROWS_AS(top_k(m, s, -1), ConfigError);
}

TEST_CASE("top_k is idempotent at fixed k") {
  std::vector<std::vector<double>> values = {
      {0.1, 0.2, 0.3, 0.4}, {0.4, 0.0, 0.6, 0.1}};
  RankerScores s{"cs", {1.0, 5.0, 3.0, 2.0}};
  Selection once = top_k(dense(values), s, 2);
  RankerScores reduced{"cs", {5.0, 3.0}};
  Selection twice = top_k(once.matrix, reduced, 2);
  CHECK(twice.matrix.rows == once.matrix.rows);
  CHECK(twice.kept == std::vector<int>{0, 1});
}

TEST_CASE("rfe eliminates by round and keeps exactly target_k") {
  // Importance = column weight sum; feature 0 is pure noise (weight 0).
  ImportanceFn trainer = [](const DocTermMatrix& m,
                            const std::vector<SignalClass>&) {
    std::vector<double> imp(static_cast<size_t>(m.n_cols), 0.0);
    for (const auto& row : m.rows) {
      for (const MatrixEntry& e : row) {
        imp[static_cast<size_t>(e.col)] += e.weight;
      }
    }
    return imp;
  };
  std::vector<std::vector<double>> values = {
      {0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 1.0, 2.0, 3.0, 4.0}};
  DocTermMatrix m = dense(values);
  std::vector<SignalClass> labels = classes("BS");
  RankerScores s = rfe_scores(trainer, m, labels, 2, 0.4);
  CHECK(s.ranker == "rfe");
  // Round 1 drops ceil(0.4*5)=2 weakest (cols 0,1); round 2 drops one
  // (col 2, clamped to reach target); survivors score one higher.
  CHECK(s.scores == std::vector<double>{1.0, 1.0, 2.0, 3.0, 3.0});
  std::vector<int> ranked = ranked_indices(s);
  CHECK(ranked[0] == 3);
  CHECK(ranked[1] == 4);
  // Exactly target_k features carry the top score.
  int survivors = 0;
  for (double v : s.scores) {
    if (v == 3.0) ++survivors;
  }
  CHECK(survivors == 2);
}

TEST_CASE("rfe noise feature goes in round one") {
  ImportanceFn trainer = [](const DocTermMatrix& m,
                            const std::vector<SignalClass>&) {
    std::vector<double> imp(static_cast<size_t>(m.n_cols), 0.0);
    for (const auto& row : m.rows) {
      for (const MatrixEntry& e : row) {
        imp[static_cast<size_t>(e.col)] += std::abs(e.weight);
      }
    }
    return imp;
  };
  std::vector<std::vector<double>> values = {
      {0.0, 1.0, 1.0}, {0.0, 1.0, 1.0}, {0.0, 1.0, 1.0}};
  RankerScores s =
      rfe_scores(trainer, dense(values), classes("BSB"), 2, 0.1);
  CHECK(s.scores[0] == 1.0);
  CHECK(s.scores[1] > s.scores[0]);
  CHECK(s.scores[2] > s.scores[0]);
}

TEST_CASE("rfe with target at or above the feature count is one round") {
  ImportanceFn trainer = [](const DocTermMatrix& m,
                            const std::vector<SignalClass>&) {
    return std::vector<double>(static_cast<size_t>(m.n_cols), 1.0);
  };
  std::vector<std::vector<double>> values = {{1.0, 2.0}, {3.0, 4.0}};
  RankerScores s = rfe_scores(trainer, dense(values), classes("BS"), 2);
  CHECK(s.scores == std::vector<double>{1.0, 1.0});
  RankerScores s2 = rfe_scores(trainer, dense(values), classes("BS"), 5);
  CHECK(s2.scores == std::vector<double>{1.0, 1.0});
}

TEST_CASE("dictionary csv lines up ranks terms and weights") {
  Vocabulary v = fit_vocabulary({{"alpha", "beta", "gamma"}});
  RankerScores s{"cs", {1.0, 9.0, 4.0}};
  std::string csv =
      dictionary_csv(v, {1, 2}, s, {0.5, 0.25}, {-0.5, -0.25});
  CHECK(csv.find("rank,term,score,buy_weight,sell_weight\n") == 0);
  CHECK(csv.find("1,beta,9,0.5,-0.5\n") != std::string::npos);
  CHECK(csv.find("2,gamma,4,0.25,-0.25\n") != std::string::npos);
}

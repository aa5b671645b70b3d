#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "stocksig/labeler.hpp"

namespace stocksig {

// Term <-> dense index mapping in first-seen order, with per-term document
// frequencies. Built from training documents only.
struct Vocabulary {
  std::vector<std::string> terms;
  std::unordered_map<std::string, int> index;
  std::vector<int64_t> df;
  int64_t n_docs = 0;

  int size() const { return static_cast<int>(terms.size()); }
};

Vocabulary fit_vocabulary(const std::vector<std::vector<std::string>>& docs);

// Smoothed idf: ln((1+N)/(1+df)) + 1.
double idf(const Vocabulary& vocab, int term_index);

struct MatrixEntry {
  int col = 0;
  double weight = 0.0;

  bool operator==(const MatrixEntry&) const = default;
};

// Sparse rows of (column, weight), sorted by column, no explicit zeros.
// The leading word_cols columns are the TF-IDF block, L2-normalized per
// row; any columns after it are stock features on their own scale.
struct DocTermMatrix {
  std::vector<std::vector<MatrixEntry>> rows;
  int n_cols = 0;
  int word_cols = 0;

  size_t n_rows() const { return rows.size(); }
};

// Raw term counts scaled by idf, then the row L2-normalized. Tokens
// outside the vocabulary are ignored; an all-out-of-vocabulary document
// yields a zero row.
DocTermMatrix transform(const std::vector<std::vector<std::string>>& docs,
                        const Vocabulary& vocab);
std::vector<MatrixEntry> transform_row(const std::vector<std::string>& tokens,
                                       const Vocabulary& vocab);

enum class StockFeature { PriorTrend, VolumeInt, VolumeBinary, Weekday };

// Accepts "prior_trend", "volume_int", "volume_binary", "weekday";
// throws ConfigError otherwise. Result is deduplicated, canonical order.
std::vector<StockFeature> parse_stock_features(
    const std::vector<std::string>& names);
std::vector<std::string> stock_feature_names(
    const std::vector<StockFeature>& which);

// Appends feature columns after the word block, in canonical order:
// prior_trend {0,1}, volume_int (hour_volume / training mean),
// volume_binary {0,1}, weekday (5 one-hot columns). The word block's
// normalization is untouched. Row order of m must match docs.
DocTermMatrix append_stock_features(DocTermMatrix m,
                                    const std::vector<LabeledDocument>& docs,
                                    const std::vector<StockFeature>& which,
                                    double training_mean_hour_volume);
void append_stock_features_row(std::vector<MatrixEntry>& row, int word_cols,
                               const LabeledDocument& doc,
                               const std::vector<StockFeature>& which,
                               double training_mean_hour_volume);

// Restricts a word-only matrix (word_cols == n_cols) to the given columns,
// in the given order.
DocTermMatrix take_columns(const DocTermMatrix& m,
                           const std::vector<int>& kept);

// Coordinate-format debug dump: "row,col,value" lines.
std::string matrix_to_coo(const DocTermMatrix& m);

}  // namespace stocksig

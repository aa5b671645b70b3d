#include "stocksig/vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "stocksig/errors.hpp"

namespace stocksig {

Vocabulary fit_vocabulary(const std::vector<std::vector<std::string>>& docs) {
  if (docs.empty()) throw DataError("cannot fit a vocabulary on an empty corpus");
  Vocabulary v;
  v.n_docs = static_cast<int64_t>(docs.size());
  for (const std::vector<std::string>& doc : docs) {
    // df counts documents, not occurrences: count each term once per doc.
    std::vector<int> seen;
    for (const std::string& tok : doc) {
      auto [it, inserted] = v.index.try_emplace(tok, v.size());
      if (inserted) {
        v.terms.push_back(tok);
        v.df.push_back(0);
      }
      int idx = it->second;
      if (std::find(seen.begin(), seen.end(), idx) == seen.end()) {
        seen.push_back(idx);
        ++v.df[idx];
      }
    }
  }
  return v;
}

double idf(const Vocabulary& vocab, int term_index) {
  return std::log(static_cast<double>(1 + vocab.n_docs) /
                  static_cast<double>(1 + vocab.df[term_index])) +
         1.0;
}

std::vector<MatrixEntry> transform_row(const std::vector<std::string>& tokens,
                                       const Vocabulary& vocab) {
  std::unordered_map<int, int64_t> counts;
  for (const std::string& tok : tokens) {
    auto it = vocab.index.find(tok);
    if (it != vocab.index.end()) ++counts[it->second];
  }
  std::vector<MatrixEntry> row;
  row.reserve(counts.size());
  for (const auto& [col, tf] : counts) {
    row.push_back({col, static_cast<double>(tf) * idf(vocab, col)});
  }
  std::sort(row.begin(), row.end(),
            [](const MatrixEntry& a, const MatrixEntry& b) {
              return a.col < b.col;
            });
  double norm_sq = 0.0;
  for (const MatrixEntry& e : row) norm_sq += e.weight * e.weight;
  if (norm_sq > 0.0) {
    double inv = 1.0 / std::sqrt(norm_sq);
    for (MatrixEntry& e : row) e.weight *= inv;
  }
  return row;
}

DocTermMatrix transform(const std::vector<std::vector<std::string>>& docs,
                        const Vocabulary& vocab) {
  DocTermMatrix m;
  m.n_cols = vocab.size();
  m.word_cols = vocab.size();
  m.rows.reserve(docs.size());
  for (const std::vector<std::string>& doc : docs) {
    m.rows.push_back(transform_row(doc, vocab));
  }
  return m;
}

std::vector<StockFeature> parse_stock_features(
    const std::vector<std::string>& names) {
  std::vector<StockFeature> out;
  auto add = [&](StockFeature f) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  };
  for (const std::string& n : names) {
    if (n == "prior_trend") {
      add(StockFeature::PriorTrend);
    } else if (n == "volume_int") {
      add(StockFeature::VolumeInt);
    } else if (n == "volume_binary") {
      add(StockFeature::VolumeBinary);
    } else if (n == "weekday") {
      add(StockFeature::Weekday);
    } else {
      throw ConfigError("unknown stock feature: '" + n + "'");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> stock_feature_names(
    const std::vector<StockFeature>& which) {
  std::vector<std::string> out;
  for (StockFeature f : which) {
    switch (f) {
      case StockFeature::PriorTrend: out.push_back("prior_trend"); break;
      case StockFeature::VolumeInt: out.push_back("volume_int"); break;
      case StockFeature::VolumeBinary: out.push_back("volume_binary"); break;
      case StockFeature::Weekday: out.push_back("weekday"); break;
    }
  }
  return out;
}

namespace {

int feature_width(StockFeature f) {
  return f == StockFeature::Weekday ? 5 : 1;
}

}  // namespace

void append_stock_features_row(std::vector<MatrixEntry>& row, int word_cols,
                               const LabeledDocument& doc,
                               const std::vector<StockFeature>& which,
                               double training_mean_hour_volume) {
  int col = word_cols;
  for (StockFeature f : which) {
    switch (f) {
      case StockFeature::PriorTrend:
        if (doc.prior_trend != 0) row.push_back({col, 1.0});
        break;
      case StockFeature::VolumeInt: {
        if (training_mean_hour_volume <= 0.0) {
          throw DataError("volume_int feature needs a positive training "
                          "mean hourly volume");
        }
        double scaled = static_cast<double>(doc.hour_volume) /
                        training_mean_hour_volume;
        if (scaled != 0.0) row.push_back({col, scaled});
        break;
      }
      case StockFeature::VolumeBinary:
        if (doc.volume_high != 0) row.push_back({col, 1.0});
        break;
      case StockFeature::Weekday:
        row.push_back({col + doc.weekday, 1.0});
        break;
    }
    col += feature_width(f);
  }
}

DocTermMatrix append_stock_features(DocTermMatrix m,
                                    const std::vector<LabeledDocument>& docs,
                                    const std::vector<StockFeature>& which,
                                    double training_mean_hour_volume) {
  if (m.n_rows() != docs.size()) {
    throw DataError("matrix rows and document count differ");
  }
  int extra = 0;
  for (StockFeature f : which) extra += feature_width(f);
  for (size_t i = 0; i < m.rows.size(); ++i) {
    append_stock_features_row(m.rows[i], m.word_cols, docs[i], which,
                              training_mean_hour_volume);
  }
  m.n_cols = m.word_cols + extra;
  return m;
}

DocTermMatrix take_columns(const DocTermMatrix& m,
                           const std::vector<int>& kept) {
  if (m.word_cols != m.n_cols) {
    throw DataError("column selection applies to the word block only; "
                    "append stock features after selecting");
  }
  std::vector<int> remap(m.n_cols, -1);
  for (size_t i = 0; i < kept.size(); ++i) {
    int col = kept[i];
    if (col < 0 || col >= m.n_cols) {
      throw DataError("kept column index out of range");
    }
    remap[col] = static_cast<int>(i);
  }
  DocTermMatrix out;
  out.n_cols = static_cast<int>(kept.size());
  out.word_cols = out.n_cols;
  out.rows.reserve(m.rows.size());
  for (const std::vector<MatrixEntry>& row : m.rows) {
    std::vector<MatrixEntry> r;
    for (const MatrixEntry& e : row) {
      if (remap[e.col] >= 0) r.push_back({remap[e.col], e.weight});
    }
    std::sort(r.begin(), r.end(), [](const MatrixEntry& a,
                                     const MatrixEntry& b) {
      return a.col < b.col;
    });
    out.rows.push_back(std::move(r));
  }
  return out;
}

std::string matrix_to_coo(const DocTermMatrix& m) {
  std::string out = "row,col,value\n";
  char buf[64];
  for (size_t r = 0; r < m.rows.size(); ++r) {
    for (const MatrixEntry& e : m.rows[r]) {
      std::snprintf(buf, sizeof(buf), "%zu,%d,%.17g\n", r, e.col, e.weight);
      out += buf;
    }
  }
  return out;
}

}  // namespace stocksig

#pragma once

#include <string>
#include <vector>

#include "stocksig/calendar.hpp"
#include "stocksig/labeler.hpp"
#include "stocksig/models.hpp"
#include "stocksig/vectorizer.hpp"

namespace stocksig {

// One cell of the model x ranker x subset-size accuracy grid.
struct SweepCell {
  std::string model;
  std::string ranker;
  int size_requested = 0;
  int size_effective = 0;
  bool skipped = false;
  double accuracy = 0.0;
  std::string note;
};

struct SweepOptions {
  std::vector<std::string> models = {"mnb", "lr"};
  std::vector<std::string> rankers = {"cs", "fv", "mi", "rfe"};
  std::vector<int> sizes = {1000, 2000, 3000, 4000, 5000,
                            6000, 7000, 8000, 9000, 10000};
  double alpha = 1.0;
  LrOptions lr;
  std::vector<StockFeature> stock_features;
  // Mean hourly volume over the training split; <= 0 means compute it
  // from train_docs.
  double training_mean_hour_volume = 0.0;
};

// Trains one model per grid cell on the training documents and scores it
// on the validation documents. Requested sizes larger than the vocabulary
// are clamped with a note; cells that cannot run are marked skipped with
// the reason instead of aborting the grid.
std::vector<SweepCell> feature_sweep(
    const std::vector<LabeledDocument>& train_docs,
    const std::vector<LabeledDocument>& val_docs, const SweepOptions& options);

// CSV rows `model,ranker,size,accuracy` (requested size). Skipped cells
// become comment lines so every data row parses numerically.
std::string sweep_csv(const std::vector<SweepCell>& cells,
                      const std::vector<std::string>& comments = {});

struct WindowCell {
  int window_months = 0;
  bool missing = false;
  double accuracy = 0.0;
  std::string note;
};

struct WindowSweepOptions {
  std::string model = "mnb";
  std::string ranker = "cs";
  int k = 5000;
  double alpha = 1.0;
  LrOptions lr;
  std::vector<StockFeature> stock_features;
  int max_window_months = 12;
};

// For each window length 1..max_window_months, trains on the trailing
// whole months strictly before val_start's month and evaluates on the
// documents dated within [val_start, val_end]. A window containing a
// month with zero documents (or only one class) is marked missing.
// Throws DataError when the longest window reaches past the earliest
// available month or the validation period is empty.
std::vector<WindowCell> window_sweep(const std::vector<LabeledDocument>& docs,
                                     Date val_start, Date val_end,
                                     const WindowSweepOptions& options);

// CSV rows `window_months,accuracy`, "NA" for missing cells.
std::string window_csv(const std::vector<WindowCell>& cells,
                       const std::vector<std::string>& comments = {});

}  // namespace stocksig

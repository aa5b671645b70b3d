#include "stocksig/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

#include "stocksig/errors.hpp"
#include "stocksig/select.hpp"

namespace stocksig {

namespace {

const std::set<std::string> kKnownModels = {"mnb", "lr"};
const std::set<std::string> kKnownRankers = {"cs", "fv", "mi", "rfe"};

struct GridContext {
  const std::vector<LabeledDocument>* train_docs = nullptr;
  const std::vector<LabeledDocument>* val_docs = nullptr;
  Vocabulary vocab;
  DocTermMatrix base;
  std::vector<SignalClass> labels;
  double mean_volume = 0.0;
  double alpha = 1.0;
  LrOptions lr;
  std::vector<StockFeature> stock_features;
  std::map<std::string, RankerScores> stat_scores;
  std::map<std::string, RankerScores> rfe_cache;
};

GridContext make_context(const std::vector<LabeledDocument>& train_docs,
                         const std::vector<LabeledDocument>& val_docs,
                         double alpha, const LrOptions& lr,
                         const std::vector<StockFeature>& stock_features,
                         double mean_volume) {
  GridContext ctx;
  ctx.train_docs = &train_docs;
  ctx.val_docs = &val_docs;
  std::vector<std::vector<std::string>> token_lists;
  token_lists.reserve(train_docs.size());
  for (const LabeledDocument& d : train_docs) token_lists.push_back(d.tokens);
  ctx.vocab = fit_vocabulary(token_lists);
  ctx.base = transform(token_lists, ctx.vocab);
  ctx.labels.reserve(train_docs.size());
  for (const LabeledDocument& d : train_docs) ctx.labels.push_back(d.label);
  ctx.mean_volume =
      mean_volume > 0.0 ? mean_volume : mean_hour_volume(train_docs);
  ctx.alpha = alpha;
  ctx.lr = lr;
  // A grid cell that fails to converge is reported with a note, not an
  // aborted sweep.
  ctx.lr.error_on_nonconvergence = false;
  ctx.stock_features = stock_features;
  return ctx;
}

ImportanceFn importance_for(const std::string& model, const GridContext& ctx) {
  if (model == "mnb") {
    double alpha = ctx.alpha;
    return [alpha](const DocTermMatrix& m,
                   const std::vector<SignalClass>& labels) {
      return mnb_feature_importance(train_mnb(m, labels, alpha));
    };
  }
  LrOptions lr = ctx.lr;
  return [lr](const DocTermMatrix& m,
              const std::vector<SignalClass>& labels) {
    return lr_feature_importance(train_lr(m, labels, lr));
  };
}

const RankerScores& scores_for(GridContext& ctx, const std::string& model,
                               const std::string& ranker, int k_eff) {
  if (ranker == "rfe") {
    std::string key = model + "/" + std::to_string(k_eff);
    auto it = ctx.rfe_cache.find(key);
    if (it == ctx.rfe_cache.end()) {
      it = ctx.rfe_cache
               .emplace(key, rfe_scores(importance_for(model, ctx), ctx.base,
                                        ctx.labels, k_eff))
               .first;
    }
    return it->second;
  }
  auto it = ctx.stat_scores.find(ranker);
  if (it == ctx.stat_scores.end()) {
    RankerScores rs;
    if (ranker == "cs") {
      rs = chi2_scores(ctx.base, ctx.labels);
    } else if (ranker == "fv") {
      rs = f_scores(ctx.base, ctx.labels);
    } else if (ranker == "mi") {
      rs = mi_scores(ctx.base, ctx.labels);
    } else {
      throw ConfigError("unknown ranker: '" + ranker + "'");
    }
    it = ctx.stat_scores.emplace(ranker, std::move(rs)).first;
  }
  return it->second;
}

struct CellOutcome {
  double accuracy = 0.0;
  int k_eff = 0;
  std::string train_note;

  std::string note_for(int size_requested) const {
    std::string note;
    if (k_eff < size_requested) {
      note = "clamped to vocabulary size " + std::to_string(k_eff);
    }
    if (!train_note.empty()) {
      if (!note.empty()) note += "; ";
      note += train_note;
    }
    return note;
  }
};

CellOutcome run_cell(GridContext& ctx, const std::string& model,
                     const std::string& ranker, int size) {
  CellOutcome out;
  out.k_eff = std::min(size, ctx.base.n_cols);
  Selection sel =
      top_k(ctx.base, scores_for(ctx, model, ranker, out.k_eff), out.k_eff);
  DocTermMatrix m = append_stock_features(
      std::move(sel.matrix), *ctx.train_docs, ctx.stock_features,
      ctx.mean_volume);

  TrainedBundle bundle;
  bundle.model_kind = model;
  bundle.vocab = ctx.vocab;
  bundle.selected = sel.kept;
  bundle.ranker = ranker;
  bundle.k = out.k_eff;
  bundle.stock_features = ctx.stock_features;
  bundle.training_mean_hour_volume = ctx.mean_volume;
  if (model == "mnb") {
    bundle.mnb = train_mnb(m, ctx.labels, ctx.alpha);
  } else {
    bundle.lr = train_lr(m, ctx.labels, ctx.lr);
    if (!bundle.lr.converged) out.train_note = "lr stopped before convergence";
  }
  finalize_bundle(bundle);

  std::vector<SignalClass> predicted, truth;
  predicted.reserve(ctx.val_docs->size());
  truth.reserve(ctx.val_docs->size());
  for (const LabeledDocument& d : *ctx.val_docs) {
    predicted.push_back(predict_document(bundle, d).label);
    truth.push_back(d.label);
  }
  out.accuracy = evaluate(predicted, truth).accuracy;
  return out;
}

void check_grid_axes(const SweepOptions& options) {
  if (options.models.empty() || options.rankers.empty() ||
      options.sizes.empty()) {
    throw ConfigError("sweep grid needs at least one model, ranker and size");
  }
  for (const std::string& m : options.models) {
    if (!kKnownModels.count(m)) throw ConfigError("unknown model: '" + m + "'");
  }
  for (const std::string& r : options.rankers) {
    if (!kKnownRankers.count(r)) {
      throw ConfigError("unknown ranker: '" + r + "'");
    }
  }
  for (int s : options.sizes) {
    if (s <= 0) throw ConfigError("subset sizes must be positive");
  }
}

}  // namespace

std::vector<SweepCell> feature_sweep(
    const std::vector<LabeledDocument>& train_docs,
    const std::vector<LabeledDocument>& val_docs,
    const SweepOptions& options) {
  check_grid_axes(options);
  if (val_docs.empty()) throw DataError("no validation documents");
  GridContext ctx =
      make_context(train_docs, val_docs, options.alpha, options.lr,
                   options.stock_features, options.training_mean_hour_volume);
  bool buy = false, sell = false;
  for (SignalClass c : ctx.labels) {
    (c == SignalClass::Buy ? buy : sell) = true;
  }
  if (!buy || !sell) {
    throw DataError("training split has a single class");
  }

  std::vector<SweepCell> cells;
  std::map<std::string, CellOutcome> done;
  for (const std::string& model : options.models) {
    for (const std::string& ranker : options.rankers) {
      for (int size : options.sizes) {
        SweepCell cell;
        cell.model = model;
        cell.ranker = ranker;
        cell.size_requested = size;
        int k_eff = std::min(size, ctx.base.n_cols);
        std::string key = model + "/" + ranker + "/" + std::to_string(k_eff);
        try {
          auto it = done.find(key);
          if (it == done.end()) {
            it = done.emplace(key, run_cell(ctx, model, ranker, size)).first;
          }
          cell.size_effective = it->second.k_eff;
          cell.accuracy = it->second.accuracy;
          cell.note = it->second.note_for(size);
        } catch (const std::exception& e) {
          cell.skipped = true;
          cell.size_effective = k_eff;
          cell.note = e.what();
        }
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

std::string sweep_csv(const std::vector<SweepCell>& cells,
                      const std::vector<std::string>& comments) {
  std::string out;
  for (const std::string& c : comments) out += "# " + c + "\n";
  out += "model,ranker,size,accuracy\n";
  char buf[160];
  for (const SweepCell& cell : cells) {
    if (cell.skipped) {
      out += "# skipped " + cell.model + "," + cell.ranker + "," +
             std::to_string(cell.size_requested) + ": " + cell.note + "\n";
      continue;
    }
    std::snprintf(buf, sizeof(buf), "%s,%s,%d,%.10g\n", cell.model.c_str(),
                  cell.ranker.c_str(), cell.size_requested, cell.accuracy);
    out += buf;
    if (!cell.note.empty()) {
      out += "# note " + cell.model + "," + cell.ranker + "," +
             std::to_string(cell.size_requested) + ": " + cell.note + "\n";
    }
  }
  return out;
}

std::vector<WindowCell> window_sweep(const std::vector<LabeledDocument>& docs,
                                     Date val_start, Date val_end,
                                     const WindowSweepOptions& options) {
  if (!kKnownModels.count(options.model)) {
    throw ConfigError("unknown model: '" + options.model + "'");
  }
  if (!kKnownRankers.count(options.ranker)) {
    throw ConfigError("unknown ranker: '" + options.ranker + "'");
  }
  if (options.k <= 0) throw ConfigError("subset size must be positive");
  if (options.max_window_months <= 0) {
    throw ConfigError("window count must be positive");
  }
  if (val_end < val_start) {
    throw ConfigError("validation period ends before it starts");
  }

  std::vector<LabeledDocument> val;
  std::map<int64_t, std::vector<LabeledDocument>> by_month;
  int64_t val_month = month_index(val_start);
  for (const LabeledDocument& d : docs) {
    Date date = stamp_date(d.stamp);
    if (!(date < val_start) && !(val_end < date)) val.push_back(d);
    int64_t m = month_index(date);
    if (m < val_month) by_month[m].push_back(d);
  }
  if (val.empty()) {
    throw DataError("no documents inside the validation period");
  }
  if (by_month.empty()) {
    throw DataError("no training history before the validation period");
  }
  int64_t earliest = by_month.begin()->first;
  if (val_month - options.max_window_months < earliest) {
    throw DataError("longest window (" +
                    std::to_string(options.max_window_months) +
                    " months) reaches past the available history");
  }

  std::vector<WindowCell> cells;
  for (int k = 1; k <= options.max_window_months; ++k) {
    WindowCell cell;
    cell.window_months = k;
    std::vector<LabeledDocument> train;
    std::string empty_month;
    for (int64_t m = val_month - k; m < val_month; ++m) {
      auto it = by_month.find(m);
      if (it == by_month.end()) {
        int year = static_cast<int>(m / 12);
        int month = static_cast<int>(m % 12) + 1;
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
        empty_month = buf;
        break;
      }
      train.insert(train.end(), it->second.begin(), it->second.end());
    }
    if (!empty_month.empty()) {
      cell.missing = true;
      cell.note = "no documents in " + empty_month;
      cells.push_back(std::move(cell));
      continue;
    }
    bool buy = false, sell = false;
    for (const LabeledDocument& d : train) {
      (d.label == SignalClass::Buy ? buy : sell) = true;
    }
    if (!buy || !sell) {
      cell.missing = true;
      cell.note = "training window has a single class";
      cells.push_back(std::move(cell));
      continue;
    }
    std::sort(train.begin(), train.end(),
              [](const LabeledDocument& a, const LabeledDocument& b) {
                return a.stamp != b.stamp ? a.stamp < b.stamp
                                          : a.tweet_id < b.tweet_id;
              });
    try {
      GridContext ctx = make_context(train, val, options.alpha, options.lr,
                                     options.stock_features, 0.0);
      CellOutcome out = run_cell(ctx, options.model, options.ranker,
                                 options.k);
      cell.accuracy = out.accuracy;
      cell.note = out.note_for(options.k);
    } catch (const std::exception& e) {
      cell.missing = true;
      cell.note = e.what();
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

std::string window_csv(const std::vector<WindowCell>& cells,
                       const std::vector<std::string>& comments) {
  std::string out;
  for (const std::string& c : comments) out += "# " + c + "\n";
  out += "window_months,accuracy\n";
  char buf[64];
  for (const WindowCell& cell : cells) {
    if (cell.missing) {
      out += std::to_string(cell.window_months) + ",NA\n";
    } else {
      std::snprintf(buf, sizeof(buf), "%d,%.10g\n", cell.window_months,
                    cell.accuracy);
      out += buf;
    }
    if (!cell.note.empty()) {
      out += "# note window " + std::to_string(cell.window_months) + ": " +
             cell.note + "\n";
    }
  }
  return out;
}

}  // namespace stocksig

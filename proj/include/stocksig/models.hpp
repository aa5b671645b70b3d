#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stocksig/labeler.hpp"
#include "stocksig/vectorizer.hpp"

namespace stocksig {

struct Prediction {
  SignalClass label;
  double p_buy;
};

// Multinomial Naive Bayes over non-negative (TF-IDF) weights treated as
// counts, with additive smoothing alpha.
struct MnbModel {
  double log_prior_buy = 0.0;
  double log_prior_sell = 0.0;
  std::vector<double> log_cond_buy;
  std::vector<double> log_cond_sell;
  double alpha = 1.0;
  int n_features = 0;
};

MnbModel train_mnb(const DocTermMatrix& m,
                   const std::vector<SignalClass>& labels,
                   double alpha = 1.0);
Prediction predict(const MnbModel& model, const std::vector<MatrixEntry>& row);

// Per-feature importance for recursive elimination:
// |log P(t|Buy) - log P(t|Sell)|.
std::vector<double> mnb_feature_importance(const MnbModel& model);

struct LrOptions {
  double lambda = 1.0;       // L2 strength; the intercept is unpenalized
  double tolerance = 1e-6;   // gradient infinity-norm target
  int max_iters = 2000;
  bool error_on_nonconvergence = true;
};

// L2-regularized logistic regression, labels encoded Buy = +1, Sell = -1,
// trained by deterministic full-batch gradient descent with backtracking
// line search from theta = 0.
struct LrModel {
  std::vector<double> theta;
  double intercept = 0.0;
  double lambda = 1.0;
  bool converged = false;
  int iterations = 0;
  double final_grad_norm = 0.0;
  std::vector<double> cost_history;  // initial cost, then one per step
};

LrModel train_lr(const DocTermMatrix& m,
                 const std::vector<SignalClass>& labels,
                 const LrOptions& options = {});
Prediction predict(const LrModel& model, const std::vector<MatrixEntry>& row);
std::vector<double> lr_feature_importance(const LrModel& model);

// Objective and analytic gradient, exposed so the finite-difference
// check can target exactly what the optimizer descends.
double lr_cost(const DocTermMatrix& m, const std::vector<SignalClass>& labels,
               const std::vector<double>& theta, double intercept,
               double lambda);
void lr_gradient(const DocTermMatrix& m,
                 const std::vector<SignalClass>& labels,
                 const std::vector<double>& theta, double intercept,
                 double lambda, std::vector<double>& grad_theta,
                 double& grad_intercept);

struct EvaluationReport {
  size_t n = 0;
  size_t n_buy = 0;
  size_t n_sell = 0;
  size_t correct_buy = 0;
  size_t correct_sell = 0;
  size_t predicted_buy = 0;
  size_t predicted_sell = 0;
  double accuracy = 0.0;
  std::optional<double> tbr;  // correct Buy / actual Buy, absent if no Buys
  std::optional<double> tsr;
  std::optional<double> tbr_tsr_gap;
};

EvaluationReport evaluate(const std::vector<SignalClass>& predicted,
                          const std::vector<SignalClass>& truth);

// Everything needed to classify a raw document: vocabulary (with idf
// counts), selected word columns in rank order, stock-feature layout, and
// the fitted model.
struct TrainedBundle {
  std::string model_kind;  // "mnb" | "lr"
  Vocabulary vocab;
  std::vector<int> selected;
  std::string ranker;
  int k = 0;
  std::vector<StockFeature> stock_features;
  double training_mean_hour_volume = 0.0;
  MnbModel mnb;
  LrModel lr;
  uint64_t seed = 0;
  std::string config_hash;
  std::string ticker;

  std::vector<int> col_remap;  // derived: full vocab column -> reduced, -1 out
};

void finalize_bundle(TrainedBundle& bundle);
Prediction predict_document(const TrainedBundle& bundle,
                            const LabeledDocument& doc);

std::string bundle_to_json(const TrainedBundle& bundle);
TrainedBundle bundle_from_json(const std::string& text);

}  // namespace stocksig

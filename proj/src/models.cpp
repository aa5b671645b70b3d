#include "stocksig/models.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "stocksig/errors.hpp"

namespace stocksig {

namespace {

void check_shape(const DocTermMatrix& m,
                 const std::vector<SignalClass>& labels) {
  if (m.n_rows() != labels.size()) {
    throw DataError("matrix rows and label count differ");
  }
  if (labels.empty()) throw DataError("empty training set");
}

void check_both_classes(const std::vector<SignalClass>& labels) {
  bool buy = false, sell = false;
  for (SignalClass c : labels) {
    (c == SignalClass::Buy ? buy : sell) = true;
  }
  if (!buy || !sell) {
    throw DataError("training needs both classes present");
  }
}

// log(1 + exp(x)) without overflow.
double log1pexp(double x) {
  if (x > 0.0) return x + std::log1p(std::exp(-x));
  return std::log1p(std::exp(x));
}

double sigmoid(double x) {
  if (x >= 0.0) {
    return 1.0 / (1.0 + std::exp(-x));
  }
  double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

MnbModel train_mnb(const DocTermMatrix& m,
                   const std::vector<SignalClass>& labels, double alpha) {
  check_shape(m, labels);
  check_both_classes(labels);
  if (alpha <= 0.0) throw ConfigError("smoothing alpha must be positive");
  MnbModel model;
  model.alpha = alpha;
  model.n_features = m.n_cols;
  std::vector<double> sum_buy(m.n_cols, 0.0), sum_sell(m.n_cols, 0.0);
  double total_buy = 0.0, total_sell = 0.0;
  int64_t docs_buy = 0, docs_sell = 0;
  for (size_t r = 0; r < m.rows.size(); ++r) {
    bool buy = labels[r] == SignalClass::Buy;
    (buy ? docs_buy : docs_sell) += 1;
    for (const MatrixEntry& e : m.rows[r]) {
      if (e.weight < 0.0) {
        throw NumericError("multinomial model requires non-negative weights");
      }
      (buy ? sum_buy : sum_sell)[e.col] += e.weight;
      (buy ? total_buy : total_sell) += e.weight;
    }
  }
  double v = static_cast<double>(m.n_cols);
  double denom_buy = alpha * v + total_buy;
  double denom_sell = alpha * v + total_sell;
  model.log_cond_buy.resize(m.n_cols);
  model.log_cond_sell.resize(m.n_cols);
  for (int c = 0; c < m.n_cols; ++c) {
    model.log_cond_buy[c] = std::log((alpha + sum_buy[c]) / denom_buy);
    model.log_cond_sell[c] = std::log((alpha + sum_sell[c]) / denom_sell);
  }
  double n = static_cast<double>(labels.size());
  model.log_prior_buy = std::log(static_cast<double>(docs_buy) / n);
  model.log_prior_sell = std::log(static_cast<double>(docs_sell) / n);
  return model;
}

Prediction predict(const MnbModel& model,
                   const std::vector<MatrixEntry>& row) {
  double score_buy = model.log_prior_buy;
  double score_sell = model.log_prior_sell;
  for (const MatrixEntry& e : row) {
    if (e.col < 0 || e.col >= model.n_features) {
      throw DataError("row width does not match the model");
    }
    score_buy += e.weight * model.log_cond_buy[e.col];
    score_sell += e.weight * model.log_cond_sell[e.col];
  }
  double p_buy = sigmoid(score_buy - score_sell);
  SignalClass label =
      p_buy > 0.5 ? SignalClass::Buy : SignalClass::Sell;  // tie -> Sell
  return {label, p_buy};
}

std::vector<double> mnb_feature_importance(const MnbModel& model) {
  std::vector<double> out(model.log_cond_buy.size());
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = std::fabs(model.log_cond_buy[i] - model.log_cond_sell[i]);
  }
  return out;
}

namespace {

std::vector<double> raw_scores(const DocTermMatrix& m,
                               const std::vector<double>& theta,
                               double intercept) {
  std::vector<double> z(m.n_rows(), intercept);
  for (size_t r = 0; r < m.rows.size(); ++r) {
    for (const MatrixEntry& e : m.rows[r]) {
      z[r] += e.weight * theta[e.col];
    }
  }
  return z;
}

double signed_class(SignalClass c) {
  return c == SignalClass::Buy ? 1.0 : -1.0;
}

}  // namespace

double lr_cost(const DocTermMatrix& m, const std::vector<SignalClass>& labels,
               const std::vector<double>& theta, double intercept,
               double lambda) {
  std::vector<double> z = raw_scores(m, theta, intercept);
  double cost = 0.0;
  for (size_t r = 0; r < z.size(); ++r) {
    cost += log1pexp(-signed_class(labels[r]) * z[r]);
  }
  double reg = 0.0;
  for (double t : theta) reg += t * t;
  return cost + lambda * reg;
}

void lr_gradient(const DocTermMatrix& m,
                 const std::vector<SignalClass>& labels,
                 const std::vector<double>& theta, double intercept,
                 double lambda, std::vector<double>& grad_theta,
                 double& grad_intercept) {
  std::vector<double> z = raw_scores(m, theta, intercept);
  grad_theta.assign(theta.size(), 0.0);
  grad_intercept = 0.0;
  for (size_t r = 0; r < z.size(); ++r) {
    double c = signed_class(labels[r]);
    double coef = -c * sigmoid(-c * z[r]);
    for (const MatrixEntry& e : m.rows[r]) {
      grad_theta[e.col] += coef * e.weight;
    }
    grad_intercept += coef;
  }
  for (size_t j = 0; j < theta.size(); ++j) {
    grad_theta[j] += 2.0 * lambda * theta[j];
  }
}

LrModel train_lr(const DocTermMatrix& m,
                 const std::vector<SignalClass>& labels,
                 const LrOptions& options) {
  check_shape(m, labels);
  check_both_classes(labels);
  if (options.lambda < 0.0) throw ConfigError("lambda must be non-negative");
  if (options.tolerance < 0.0) {
    throw ConfigError("tolerance must be non-negative");
  }
  if (options.max_iters <= 0) throw ConfigError("max_iters must be positive");
  LrModel model;
  model.lambda = options.lambda;
  model.theta.assign(m.n_cols, 0.0);
  model.intercept = 0.0;

  double cost = lr_cost(m, labels, model.theta, model.intercept,
                        options.lambda);
  model.cost_history.push_back(cost);
  std::vector<double> grad;
  double grad_b = 0.0;
  double step = 1.0;
  std::vector<double> trial(m.n_cols);
  for (int iter = 0; iter < options.max_iters; ++iter) {
    lr_gradient(m, labels, model.theta, model.intercept, options.lambda,
                grad, grad_b);
    double inf_norm = std::fabs(grad_b);
    double sq_norm = grad_b * grad_b;
    for (double g : grad) {
      inf_norm = std::max(inf_norm, std::fabs(g));
      sq_norm += g * g;
    }
    model.final_grad_norm = inf_norm;
    if (inf_norm <= options.tolerance) {
      model.converged = true;
      break;
    }
    // Backtracking Armijo line search; the previous accepted step seeds
    // the next search so the step adapts in both directions.
    step = std::min(step * 2.0, 1e6);
    bool accepted = false;
    while (step > 1e-20) {
      for (size_t j = 0; j < trial.size(); ++j) {
        trial[j] = model.theta[j] - step * grad[j];
      }
      double trial_b = model.intercept - step * grad_b;
      double trial_cost =
          lr_cost(m, labels, trial, trial_b, options.lambda);
      if (trial_cost <= cost - 1e-4 * step * sq_norm) {
        model.theta = trial;
        model.intercept = trial_b;
        cost = trial_cost;
        model.cost_history.push_back(cost);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    model.iterations = iter + 1;
    if (!accepted) break;  // no descent direction progress at any step size
  }
  if (!model.converged) {
    // Re-check: the loop may have exhausted iterations right at the goal.
    lr_gradient(m, labels, model.theta, model.intercept, options.lambda,
                grad, grad_b);
    double inf_norm = std::fabs(grad_b);
    for (double g : grad) inf_norm = std::max(inf_norm, std::fabs(g));
    model.final_grad_norm = inf_norm;
    model.converged = inf_norm <= options.tolerance;
  }
  if (!model.converged && options.error_on_nonconvergence) {
    throw NumericError(
        "logistic regression did not converge: gradient norm " +
        std::to_string(model.final_grad_norm) + " after " +
        std::to_string(model.iterations) + " iterations (tolerance " +
        std::to_string(options.tolerance) + ")");
  }
  return model;
}

Prediction predict(const LrModel& model, const std::vector<MatrixEntry>& row) {
  double z = model.intercept;
  for (const MatrixEntry& e : row) {
    if (e.col < 0 || e.col >= static_cast<int>(model.theta.size())) {
      throw DataError("row width does not match the model");
    }
    z += e.weight * model.theta[e.col];
  }
  double p_buy = sigmoid(z);
  SignalClass label =
      p_buy > 0.5 ? SignalClass::Buy : SignalClass::Sell;  // tie -> Sell
  return {label, p_buy};
}

std::vector<double> lr_feature_importance(const LrModel& model) {
  std::vector<double> out(model.theta.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = std::fabs(model.theta[i]);
  return out;
}

EvaluationReport evaluate(const std::vector<SignalClass>& predicted,
                          const std::vector<SignalClass>& truth) {
  if (predicted.size() != truth.size()) {
    throw DataError("prediction and truth lengths differ");
  }
  if (truth.empty()) throw DataError("empty evaluation set");
  EvaluationReport r;
  r.n = truth.size();
  for (size_t i = 0; i < truth.size(); ++i) {
    bool actual_buy = truth[i] == SignalClass::Buy;
    bool pred_buy = predicted[i] == SignalClass::Buy;
    (actual_buy ? r.n_buy : r.n_sell) += 1;
    (pred_buy ? r.predicted_buy : r.predicted_sell) += 1;
    if (actual_buy && pred_buy) ++r.correct_buy;
    if (!actual_buy && !pred_buy) ++r.correct_sell;
  }
  r.accuracy = static_cast<double>(r.correct_buy + r.correct_sell) /
               static_cast<double>(r.n);
  if (r.n_buy > 0) {
    r.tbr = static_cast<double>(r.correct_buy) / static_cast<double>(r.n_buy);
  }
  if (r.n_sell > 0) {
    r.tsr =
        static_cast<double>(r.correct_sell) / static_cast<double>(r.n_sell);
  }
  if (r.tbr && r.tsr) r.tbr_tsr_gap = std::fabs(*r.tbr - *r.tsr);
  return r;
}

void finalize_bundle(TrainedBundle& bundle) {
  bundle.col_remap.assign(bundle.vocab.size(), -1);
  for (size_t i = 0; i < bundle.selected.size(); ++i) {
    int col = bundle.selected[i];
    if (col < 0 || col >= static_cast<int>(bundle.vocab.size())) {
      throw DataError("selected column outside the vocabulary");
    }
    bundle.col_remap[col] = static_cast<int>(i);
  }
}

Prediction predict_document(const TrainedBundle& bundle,
                            const LabeledDocument& doc) {
  std::vector<MatrixEntry> full = transform_row(doc.tokens, bundle.vocab);
  std::vector<MatrixEntry> row;
  row.reserve(full.size());
  for (const MatrixEntry& e : full) {
    int mapped = bundle.col_remap[e.col];
    if (mapped >= 0) row.push_back({mapped, e.weight});
  }
  std::sort(row.begin(), row.end(),
            [](const MatrixEntry& a, const MatrixEntry& b) {
              return a.col < b.col;
            });
  append_stock_features_row(row, static_cast<int>(bundle.selected.size()),
                            doc, bundle.stock_features,
                            bundle.training_mean_hour_volume);
  if (bundle.model_kind == "mnb") return predict(bundle.mnb, row);
  if (bundle.model_kind == "lr") return predict(bundle.lr, row);
  throw DataError("unknown model kind: '" + bundle.model_kind + "'");
}

std::string bundle_to_json(const TrainedBundle& b) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["model"] = b.model_kind;
  j["ticker"] = b.ticker;
  j["config_hash"] = b.config_hash;
  j["seed"] = b.seed;
  j["ranker"] = b.ranker;
  j["k"] = b.k;
  j["stock_features"] = stock_feature_names(b.stock_features);
  j["training_mean_hour_volume"] = b.training_mean_hour_volume;
  j["vocabulary"] = b.vocab.terms;
  j["df"] = b.vocab.df;
  j["n_train_docs"] = b.vocab.n_docs;
  j["selected"] = b.selected;
  if (b.model_kind == "mnb") {
    j["alpha"] = b.mnb.alpha;
    j["log_prior_buy"] = b.mnb.log_prior_buy;
    j["log_prior_sell"] = b.mnb.log_prior_sell;
    j["log_cond_buy"] = b.mnb.log_cond_buy;
    j["log_cond_sell"] = b.mnb.log_cond_sell;
  } else {
    j["lambda"] = b.lr.lambda;
    j["theta"] = b.lr.theta;
    j["intercept"] = b.lr.intercept;
    j["converged"] = b.lr.converged;
    j["iterations"] = b.lr.iterations;
    j["final_grad_norm"] = b.lr.final_grad_norm;
  }
  return j.dump(2) + "\n";
}

TrainedBundle bundle_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (j.value("format_version", 0) != 1) {
      throw DataError("unsupported model format version");
    }
    TrainedBundle b;
    b.model_kind = j.at("model").get<std::string>();
    b.ticker = j.value("ticker", std::string());
    b.config_hash = j.value("config_hash", std::string());
    b.seed = j.value("seed", uint64_t{0});
    b.ranker = j.value("ranker", std::string());
    b.k = j.value("k", 0);
    b.stock_features = parse_stock_features(
        j.value("stock_features", std::vector<std::string>()));
    b.training_mean_hour_volume = j.value("training_mean_hour_volume", 0.0);
    b.vocab.terms = j.at("vocabulary").get<std::vector<std::string>>();
    b.vocab.df = j.at("df").get<std::vector<int64_t>>();
    b.vocab.n_docs = j.at("n_train_docs").get<int64_t>();
    for (size_t i = 0; i < b.vocab.terms.size(); ++i) {
      b.vocab.index[b.vocab.terms[i]] = static_cast<int>(i);
    }
    b.selected = j.at("selected").get<std::vector<int>>();
    int reduced = static_cast<int>(b.selected.size());
    int extra = 0;
    for (StockFeature f : b.stock_features) {
      extra += f == StockFeature::Weekday ? 5 : 1;
    }
    if (b.model_kind == "mnb") {
      b.mnb.alpha = j.at("alpha").get<double>();
      b.mnb.log_prior_buy = j.at("log_prior_buy").get<double>();
      b.mnb.log_prior_sell = j.at("log_prior_sell").get<double>();
      b.mnb.log_cond_buy = j.at("log_cond_buy").get<std::vector<double>>();
      b.mnb.log_cond_sell = j.at("log_cond_sell").get<std::vector<double>>();
      b.mnb.n_features = reduced + extra;
      if (static_cast<int>(b.mnb.log_cond_buy.size()) != b.mnb.n_features) {
        throw DataError("model conditional size does not match features");
      }
    } else if (b.model_kind == "lr") {
      b.lr.lambda = j.at("lambda").get<double>();
      b.lr.theta = j.at("theta").get<std::vector<double>>();
      b.lr.intercept = j.at("intercept").get<double>();
      b.lr.converged = j.value("converged", true);
      b.lr.iterations = j.value("iterations", 0);
      b.lr.final_grad_norm = j.value("final_grad_norm", 0.0);
      if (static_cast<int>(b.lr.theta.size()) != reduced + extra) {
        throw DataError("model weight size does not match features");
      }
    } else {
      throw DataError("unknown model kind: '" + b.model_kind + "'");
    }
    finalize_bundle(b);
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model file is missing fields: ") + e.what());
  }
}

}  // namespace stocksig

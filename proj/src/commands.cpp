#include "stocksig/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stocksig/backtest.hpp"
#include "stocksig/calendar.hpp"
#include "stocksig/errors.hpp"
#include "stocksig/ingest.hpp"
#include "stocksig/io_util.hpp"
#include "stocksig/labeler.hpp"
#include "stocksig/lexicon.hpp"
#include "stocksig/models.hpp"
#include "stocksig/price.hpp"
#include "stocksig/select.hpp"
#include "stocksig/stats.hpp"
#include "stocksig/sweep.hpp"
#include "stocksig/synth.hpp"
#include "stocksig/tokenizer.hpp"
#include "stocksig/vectorizer.hpp"

namespace stocksig {

namespace {

using nlohmann::ordered_json;
using Settings = std::vector<std::pair<std::string, std::string>>;

struct Provenance {
  std::string config_hash;
  uint64_t seed = 0;
};

std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Provenance make_provenance(const std::string& command, Settings kv,
                           uint64_t seed) {
  kv.emplace_back("seed", std::to_string(seed));
  std::sort(kv.begin(), kv.end());
  std::string text = command + "\n";
  for (const auto& [k, v] : kv) text += k + "=" + v + "\n";
  return {fnv1a_hex(text), seed};
}

std::vector<std::string> provenance_comments(const Provenance& p) {
  return {"config_hash=" + p.config_hash,
          "seed=" + std::to_string(p.seed)};
}

std::string comment_block(const Provenance& p) {
  std::string out;
  for (const std::string& c : provenance_comments(p)) out += "# " + c + "\n";
  return out;
}

ordered_json meta_json(const Provenance& p) {
  ordered_json m;
  m["config_hash"] = p.config_hash;
  m["seed"] = p.seed;
  return m;
}

// Re-emits a JSON document with a leading provenance object.
std::string with_meta(const std::string& json_text, const Provenance& p) {
  ordered_json body = ordered_json::parse(json_text);
  ordered_json out;
  out["_meta"] = meta_json(p);
  for (auto& [k, v] : body.items()) out[k] = v;
  return out.dump(2) + "\n";
}

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Date parse_date_flag(const std::string& text, const std::string& flag) {
  try {
    return parse_date(text);
  } catch (const DataError& e) {
    throw ConfigError(flag + ": " + e.what());
  }
}

std::vector<StockFeature> features_from_flag(const std::string& text) {
  if (text.empty() || text == "none") return {};
  return parse_stock_features(split_list(text));
}

std::vector<LabeledDocument> docs_with_tag(
    const std::vector<LabeledDocument>& docs, const std::string& tag) {
  std::vector<LabeledDocument> out;
  for (const LabeledDocument& d : docs) {
    if (d.split == tag) out.push_back(d);
  }
  return out;
}

std::vector<LabeledDocument> docs_in_period(
    const std::vector<LabeledDocument>& docs, const std::string& start,
    const std::string& end) {
  if (start.empty() && end.empty()) return docs;
  std::vector<LabeledDocument> out;
  Date lo = start.empty() ? Date{1, 1, 1}
                          : parse_date_flag(start, "--start");
  Date hi = end.empty() ? Date{9999, 12, 31} : parse_date_flag(end, "--end");
  for (const LabeledDocument& d : docs) {
    Date date = stamp_date(d.stamp);
    if (!(date < lo) && !(hi < date)) out.push_back(d);
  }
  return out;
}

std::vector<MinuteBar> bars_in_period(const std::vector<MinuteBar>& bars,
                                      const std::string& start,
                                      const std::string& end) {
  if (start.empty() && end.empty()) return bars;
  std::vector<MinuteBar> out;
  Date lo = start.empty() ? Date{1, 1, 1}
                          : parse_date_flag(start, "--start");
  Date hi = end.empty() ? Date{9999, 12, 31} : parse_date_flag(end, "--end");
  for (const MinuteBar& b : bars) {
    Date date = stamp_date(b.stamp);
    if (!(date < lo) && !(hi < date)) out.push_back(b);
  }
  return out;
}

// ---------------------------------------------------------------------
// synth

struct SynthArgs {
  std::string out;
  uint64_t seed = 1;
  std::string ticker = "SYNTH";
  std::string start = "2016-01-04";
  std::string end = "2016-03-31";
  int64_t tweets = 0;
  double tweets_per_hour = 10.0;
  int buy_words = 25;
  int sell_words = 25;
  int noise_words = 1000;
  double signal_strength = 0.7;
  double volatility = 0.004;
  std::string start_price = "100.00";
  std::string flip_date;
};

void cmd_synth(const SynthArgs& a) {
  SynthSpec spec;
  spec.seed = a.seed;
  spec.ticker = a.ticker;
  spec.start_date = parse_date_flag(a.start, "--start");
  spec.end_date = parse_date_flag(a.end, "--end");
  spec.n_tweets = a.tweets;
  spec.tweets_per_hour = a.tweets_per_hour;
  spec.n_buy_words = a.buy_words;
  spec.n_sell_words = a.sell_words;
  spec.n_noise_words = a.noise_words;
  spec.signal_strength = a.signal_strength;
  spec.volatility = a.volatility;
  try {
    spec.start_price = parse_price(a.start_price);
  } catch (const DataError& e) {
    throw ConfigError(std::string("--start-price: ") + e.what());
  }
  if (!a.flip_date.empty()) {
    spec.flip_date = parse_date_flag(a.flip_date, "--flip-date");
  }

  Settings kv = {{"ticker", a.ticker},
                 {"start", a.start},
                 {"end", a.end},
                 {"tweets", std::to_string(a.tweets)},
                 {"tweets_per_hour", fmt_double(a.tweets_per_hour)},
                 {"buy_words", std::to_string(a.buy_words)},
                 {"sell_words", std::to_string(a.sell_words)},
                 {"noise_words", std::to_string(a.noise_words)},
                 {"signal_strength", fmt_double(a.signal_strength)},
                 {"volatility", fmt_double(a.volatility)},
                 {"start_price", a.start_price},
                 {"flip_date", a.flip_date}};
  Provenance prov = make_provenance("synth", kv, a.seed);

  SynthOutput out = generate(spec);

  ordered_json meta;
  meta["_meta"] = meta_json(prov);
  meta["_meta"]["ticker"] = spec.ticker;
  meta["_meta"]["n_tweets"] = static_cast<int64_t>(out.tweets.size());
  meta["_meta"]["resampled"] = out.resampled;
  write_file(join_path(a.out, "tweets.jsonl"),
             meta.dump() + "\n" + tweets_jsonl(out.tweets));
  write_file(join_path(a.out, "bars.csv"),
             serialize_bars(out.bars, provenance_comments(prov)));
  write_file(join_path(a.out, "truth_buy.txt"),
             wordlist_text(out.buy_words, provenance_comments(prov)));
  write_file(join_path(a.out, "truth_sell.txt"),
             wordlist_text(out.sell_words, provenance_comments(prov)));
  write_file(join_path(a.out, "truth_noise.txt"),
             wordlist_text(out.noise_words, provenance_comments(prov)));
  std::cout << "synth: wrote " << out.tweets.size() << " tweets, "
            << out.bars.size() << " bars to " << a.out << "\n";
}

// ---------------------------------------------------------------------
// label

struct LabelArgs {
  std::string tweets;
  std::string bars;
  std::string ticker;
  std::string out;
  double train_frac = 0.8;
  uint64_t seed = 1;
  std::string test_start;
  std::string test_end;
  int max_cashtags = 2;
};

void cmd_label(const LabelArgs& a) {
  if (!(a.train_frac > 0.0 && a.train_frac < 1.0)) {
    throw ConfigError("--train-frac must lie in (0, 1)");
  }
  if (a.max_cashtags < 1) {
    throw ConfigError("--max-cashtags must be at least 1");
  }
  Settings kv = {{"tweets", a.tweets},
                 {"bars", a.bars},
                 {"ticker", a.ticker},
                 {"train_frac", fmt_double(a.train_frac)},
                 {"test_start", a.test_start},
                 {"test_end", a.test_end},
                 {"max_cashtags", std::to_string(a.max_cashtags)}};
  Provenance prov = make_provenance("label", kv, a.seed);

  ParsedTweets parsed = parse_tweets(slurp_file(a.tweets));
  for (const ParseIssue& issue : parsed.issues) {
    std::cerr << "warning: " << a.tweets << " line " << issue.line_number
              << ": " << issue.message << "\n";
  }
  SpamFilterResult filtered =
      spam_filter(parsed.tweets, static_cast<size_t>(a.max_cashtags));
  std::vector<Tweet> selected = select_for_stock(filtered.kept, a.ticker);

  std::vector<MinuteBar> bars = parse_bars(slurp_file(a.bars));
  TradingCalendar cal = calendar_from_bars(bars);

  std::vector<LabeledDocument> docs;
  std::map<std::string, int64_t> skip_counts;
  for (const Tweet& tweet : selected) {
    LabelOutcome outcome = label_tweet(tweet, a.ticker, bars, cal);
    if (outcome.skip) {
      skip_counts[to_string(*outcome.skip)] += 1;
      continue;
    }
    LabeledDocument doc = std::move(*outcome.doc);
    doc.tokens = tokenize(tweet.text);
    docs.push_back(std::move(doc));
  }

  Date test_start = a.test_start.empty()
                        ? Date{9999, 1, 1}
                        : parse_date_flag(a.test_start, "--test-start");
  Date test_end = a.test_end.empty()
                      ? Date{9999, 1, 2}
                      : parse_date_flag(a.test_end, "--test-end");
  DatasetSplit parts = split(docs, a.train_frac, a.seed, test_start, test_end);

  double mean_volume = 0.0;
  if (!parts.train.empty()) {
    double sum = 0.0;
    for (const LabeledDocument& d : parts.train) {
      sum += static_cast<double>(hour_volume_before(bars, d.stamp));
    }
    mean_volume = sum / static_cast<double>(parts.train.size());
  }
  std::vector<LabeledDocument> all;
  all.reserve(docs.size());
  for (std::vector<LabeledDocument>* part :
       {&parts.train, &parts.validation, &parts.test}) {
    for (LabeledDocument& d : *part) {
      attach_context(d, bars, mean_volume);
      all.push_back(std::move(d));
    }
  }
  std::sort(all.begin(), all.end(),
            [](const LabeledDocument& x, const LabeledDocument& y) {
              return x.stamp != y.stamp ? x.stamp < y.stamp
                                        : x.tweet_id < y.tweet_id;
            });

  DocsFile file;
  file.docs = std::move(all);
  file.config_hash = prov.config_hash;
  file.seed = a.seed;
  file.training_mean_hour_volume = mean_volume;
  file.skip_counts = skip_counts;
  write_file(join_path(a.out, "labeled.jsonl"), docs_to_jsonl(file));

  TemporalDistribution dist = temporal_distribution(file.docs);
  write_file(join_path(a.out, "hist_hour.csv"),
             comment_block(prov) + temporal_csv(dist.by_hour, "hour"));
  write_file(join_path(a.out, "hist_weekday.csv"),
             comment_block(prov) + temporal_csv(dist.by_weekday, "weekday"));

  ordered_json summary;
  summary["_meta"] = meta_json(prov);
  summary["ticker"] = a.ticker;
  summary["tweets_parsed"] = static_cast<int64_t>(parsed.tweets.size());
  summary["parse_issues"] = static_cast<int64_t>(parsed.issues.size());
  summary["spam_removed"] = static_cast<int64_t>(filtered.removed);
  summary["spam_removal_fraction"] = filtered.removal_fraction;
  summary["selected_for_ticker"] = static_cast<int64_t>(selected.size());
  summary["labeled"] = static_cast<int64_t>(file.docs.size());
  summary["skip_counts"] = skip_counts;
  summary["split_sizes"]["train"] = static_cast<int64_t>(parts.train.size());
  summary["split_sizes"]["validation"] =
      static_cast<int64_t>(parts.validation.size());
  summary["split_sizes"]["test"] = static_cast<int64_t>(parts.test.size());
  summary["training_mean_hour_volume"] = mean_volume;
  write_file(join_path(a.out, "label_summary.json"), summary.dump(2) + "\n");
  std::cout << "label: " << file.docs.size() << " documents ("
            << parts.train.size() << " train, " << parts.validation.size()
            << " validation, " << parts.test.size() << " test) to " << a.out
            << "\n";
}

// ---------------------------------------------------------------------
// train / evaluate

struct TrainArgs {
  std::string docs;
  std::string out;
  std::string model = "mnb";
  std::string ranker = "cs";
  int k = 5000;
  double alpha = 1.0;
  double lambda = 1.0;
  double tolerance = 1e-6;
  int max_iters = 2000;
  std::string stock_features;
  int dict_top = 50;
};

LrOptions lr_options_from(const TrainArgs& a, bool strict) {
  LrOptions lr;
  lr.lambda = a.lambda;
  lr.tolerance = a.tolerance;
  lr.max_iters = a.max_iters;
  lr.error_on_nonconvergence = strict;
  return lr;
}

Settings train_settings(const TrainArgs& a) {
  return {{"docs", a.docs},
          {"model", a.model},
          {"ranker", a.ranker},
          {"k", std::to_string(a.k)},
          {"alpha", fmt_double(a.alpha)},
          {"lambda", fmt_double(a.lambda)},
          {"tolerance", fmt_double(a.tolerance)},
          {"max_iters", std::to_string(a.max_iters)},
          {"stock_features", a.stock_features}};
}

void cmd_train(const TrainArgs& a) {
  if (a.model != "mnb" && a.model != "lr") {
    throw ConfigError("--model must be mnb or lr");
  }
  if (a.ranker != "cs" && a.ranker != "fv" && a.ranker != "mi" &&
      a.ranker != "rfe") {
    throw ConfigError("--ranker must be one of cs, fv, mi, rfe");
  }
  if (a.k <= 0) throw ConfigError("--k must be positive");
  std::vector<StockFeature> features = features_from_flag(a.stock_features);

  DocsFile file = docs_from_jsonl(slurp_file(a.docs));
  Provenance prov = make_provenance("train", train_settings(a), file.seed);
  std::vector<LabeledDocument> train_docs = docs_with_tag(file.docs, "train");
  if (train_docs.empty()) {
    throw DataError("no documents tagged train in " + a.docs);
  }

  std::vector<std::vector<std::string>> token_lists;
  token_lists.reserve(train_docs.size());
  for (const LabeledDocument& d : train_docs) token_lists.push_back(d.tokens);
  Vocabulary vocab = fit_vocabulary(token_lists);
  DocTermMatrix base = transform(token_lists, vocab);
  std::vector<SignalClass> labels;
  labels.reserve(train_docs.size());
  for (const LabeledDocument& d : train_docs) labels.push_back(d.label);

  int k_eff = std::min(a.k, base.n_cols);
  if (k_eff < a.k) {
    std::cout << "train: k clamped to vocabulary size " << k_eff << "\n";
  }
  RankerScores scores;
  if (a.ranker == "cs") {
    scores = chi2_scores(base, labels);
  } else if (a.ranker == "fv") {
    scores = f_scores(base, labels);
  } else if (a.ranker == "mi") {
    scores = mi_scores(base, labels);
  } else {
    ImportanceFn trainer;
    if (a.model == "mnb") {
      double alpha = a.alpha;
      trainer = [alpha](const DocTermMatrix& m,
                        const std::vector<SignalClass>& l) {
        return mnb_feature_importance(train_mnb(m, l, alpha));
      };
    } else {
      LrOptions lr = lr_options_from(a, false);
      trainer = [lr](const DocTermMatrix& m,
                     const std::vector<SignalClass>& l) {
        return lr_feature_importance(train_lr(m, l, lr));
      };
    }
    scores = rfe_scores(trainer, base, labels, k_eff);
  }
  Selection sel = top_k(base, scores, k_eff);
  DocTermMatrix m = append_stock_features(std::move(sel.matrix), train_docs,
                                          features,
                                          file.training_mean_hour_volume);

  TrainedBundle bundle;
  bundle.model_kind = a.model;
  bundle.vocab = std::move(vocab);
  bundle.selected = sel.kept;
  bundle.ranker = a.ranker;
  bundle.k = k_eff;
  bundle.stock_features = features;
  bundle.training_mean_hour_volume = file.training_mean_hour_volume;
  bundle.seed = file.seed;
  bundle.config_hash = prov.config_hash;
  bundle.ticker = train_docs.front().ticker;
  if (a.model == "mnb") {
    bundle.mnb = train_mnb(m, labels, a.alpha);
  } else {
    bundle.lr = train_lr(m, labels, lr_options_from(a, true));
  }
  finalize_bundle(bundle);
  write_file(join_path(a.out, "model.json"), bundle_to_json(bundle));

  // Ranked dictionary over the selected word features.
  int dict_n = std::min<int>(a.dict_top, static_cast<int>(sel.kept.size()));
  std::vector<int> dict_cols(sel.kept.begin(), sel.kept.begin() + dict_n);
  std::vector<double> buy_w, sell_w;
  for (int c = 0; c < dict_n; ++c) {
    if (a.model == "mnb") {
      buy_w.push_back(bundle.mnb.log_cond_buy[static_cast<size_t>(c)]);
      sell_w.push_back(bundle.mnb.log_cond_sell[static_cast<size_t>(c)]);
    } else {
      buy_w.push_back(bundle.lr.theta[static_cast<size_t>(c)]);
      sell_w.push_back(-bundle.lr.theta[static_cast<size_t>(c)]);
    }
  }
  write_file(join_path(a.out, "dictionary.csv"),
             comment_block(prov) +
                 dictionary_csv(bundle.vocab, dict_cols, scores, buy_w,
                                sell_w));
  std::cout << "train: " << a.model << "+" << a.ranker << " k=" << k_eff
            << " on " << train_docs.size() << " documents to " << a.out
            << "\n";
}

struct EvaluateArgs {
  std::string docs;
  std::string model_file;
  std::string split_tag = "validation";
  std::string out;
};

ordered_json evaluation_json(const EvaluationReport& r) {
  ordered_json j;
  j["n"] = r.n;
  j["n_buy"] = r.n_buy;
  j["n_sell"] = r.n_sell;
  j["predicted_buy"] = r.predicted_buy;
  j["predicted_sell"] = r.predicted_sell;
  j["correct_buy"] = r.correct_buy;
  j["correct_sell"] = r.correct_sell;
  j["accuracy"] = r.accuracy;
  j["tbr"] = r.tbr ? ordered_json(*r.tbr) : ordered_json(nullptr);
  j["tsr"] = r.tsr ? ordered_json(*r.tsr) : ordered_json(nullptr);
  j["tbr_tsr_gap"] =
      r.tbr_tsr_gap ? ordered_json(*r.tbr_tsr_gap) : ordered_json(nullptr);
  return j;
}

void cmd_evaluate(const EvaluateArgs& a) {
  if (a.split_tag != "train" && a.split_tag != "validation" &&
      a.split_tag != "test") {
    throw ConfigError("--split must be train, validation or test");
  }
  TrainedBundle bundle = bundle_from_json(slurp_file(a.model_file));
  DocsFile file = docs_from_jsonl(slurp_file(a.docs));
  Settings kv = {{"docs", a.docs},
                 {"model_file", a.model_file},
                 {"split", a.split_tag}};
  Provenance prov = make_provenance("evaluate", kv, bundle.seed);
  std::vector<LabeledDocument> docs = docs_with_tag(file.docs, a.split_tag);
  if (docs.empty()) {
    throw DataError("no documents tagged " + a.split_tag + " in " + a.docs);
  }
  std::vector<SignalClass> predicted, truth;
  predicted.reserve(docs.size());
  truth.reserve(docs.size());
  for (const LabeledDocument& d : docs) {
    predicted.push_back(predict_document(bundle, d).label);
    truth.push_back(d.label);
  }
  EvaluationReport report = evaluate(predicted, truth);
  ordered_json j;
  j["_meta"] = meta_json(prov);
  j["split"] = a.split_tag;
  j["model"] = bundle.model_kind;
  j["ranker"] = bundle.ranker;
  j["k"] = bundle.k;
  ordered_json metrics = evaluation_json(report);
  for (auto& [key, value] : metrics.items()) j[key] = value;
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!a.out.empty()) write_file(join_path(a.out, "evaluation.json"), text);
}

// ---------------------------------------------------------------------
// sweeps

struct SweepFeaturesArgs {
  std::string docs;
  std::string out;
  std::string models = "mnb,lr";
  std::string rankers = "cs,fv,mi,rfe";
  std::string sizes = "1000,2000,3000,4000,5000,6000,7000,8000,9000,10000";
  double alpha = 1.0;
  double lambda = 1.0;
  double tolerance = 1e-6;
  int max_iters = 2000;
  std::string stock_features;
};

void cmd_sweep_features(const SweepFeaturesArgs& a) {
  DocsFile file = docs_from_jsonl(slurp_file(a.docs));
  Settings kv = {{"docs", a.docs},       {"models", a.models},
                 {"rankers", a.rankers}, {"sizes", a.sizes},
                 {"alpha", fmt_double(a.alpha)},
                 {"lambda", fmt_double(a.lambda)},
                 {"tolerance", fmt_double(a.tolerance)},
                 {"max_iters", std::to_string(a.max_iters)},
                 {"stock_features", a.stock_features}};
  Provenance prov = make_provenance("sweep-features", kv, file.seed);

  SweepOptions options;
  options.models = split_list(a.models);
  options.rankers = split_list(a.rankers);
  options.sizes.clear();
  for (const std::string& s : split_list(a.sizes)) {
    try {
      options.sizes.push_back(std::stoi(s));
    } catch (const std::exception&) {
      throw ConfigError("--sizes: '" + s + "' is not an integer");
    }
  }
  options.alpha = a.alpha;
  options.lr.lambda = a.lambda;
  options.lr.tolerance = a.tolerance;
  options.lr.max_iters = a.max_iters;
  options.stock_features = features_from_flag(a.stock_features);
  options.training_mean_hour_volume = file.training_mean_hour_volume;

  std::vector<LabeledDocument> train_docs = docs_with_tag(file.docs, "train");
  std::vector<LabeledDocument> val_docs =
      docs_with_tag(file.docs, "validation");
  if (train_docs.empty()) {
    throw DataError("no documents tagged train in " + a.docs);
  }
  std::vector<SweepCell> cells = feature_sweep(train_docs, val_docs, options);
  write_file(join_path(a.out, "sweep_features.csv"),
             sweep_csv(cells, provenance_comments(prov)));
  int64_t skipped = 0;
  const SweepCell* best = nullptr;
  for (const SweepCell& c : cells) {
    if (c.skipped) {
      ++skipped;
    } else if (!best || c.accuracy > best->accuracy) {
      best = &c;
    }
  }
  std::cout << "sweep-features: " << cells.size() << " cells (" << skipped
            << " skipped)";
  if (best) {
    std::cout << ", best " << best->model << "+" << best->ranker << " size "
              << best->size_requested << " accuracy " << best->accuracy;
  }
  std::cout << "\n";
}

struct SweepWindowArgs {
  std::string docs;
  std::string out;
  std::string model = "mnb";
  std::string ranker = "cs";
  int k = 5000;
  double alpha = 1.0;
  double lambda = 1.0;
  double tolerance = 1e-6;
  int max_iters = 2000;
  std::string stock_features;
  std::string val_start;
  std::string val_end;
  int windows = 12;
};

void cmd_sweep_window(const SweepWindowArgs& a) {
  DocsFile file = docs_from_jsonl(slurp_file(a.docs));
  Settings kv = {{"docs", a.docs},
                 {"model", a.model},
                 {"ranker", a.ranker},
                 {"k", std::to_string(a.k)},
                 {"alpha", fmt_double(a.alpha)},
                 {"lambda", fmt_double(a.lambda)},
                 {"tolerance", fmt_double(a.tolerance)},
                 {"max_iters", std::to_string(a.max_iters)},
                 {"stock_features", a.stock_features},
                 {"val_start", a.val_start},
                 {"val_end", a.val_end},
                 {"windows", std::to_string(a.windows)}};
  Provenance prov = make_provenance("sweep-window", kv, file.seed);

  WindowSweepOptions options;
  options.model = a.model;
  options.ranker = a.ranker;
  options.k = a.k;
  options.alpha = a.alpha;
  options.lr.lambda = a.lambda;
  options.lr.tolerance = a.tolerance;
  options.lr.max_iters = a.max_iters;
  options.stock_features = features_from_flag(a.stock_features);
  options.max_window_months = a.windows;

  Date val_start = parse_date_flag(a.val_start, "--val-start");
  Date val_end = parse_date_flag(a.val_end, "--val-end");
  std::vector<WindowCell> cells =
      window_sweep(file.docs, val_start, val_end, options);
  write_file(join_path(a.out, "sweep_window.csv"),
             window_csv(cells, provenance_comments(prov)));
  const WindowCell* best = nullptr;
  for (const WindowCell& c : cells) {
    if (!c.missing && (!best || c.accuracy > best->accuracy)) best = &c;
  }
  std::cout << "sweep-window: " << cells.size() << " cells";
  if (best) {
    std::cout << ", best window " << best->window_months << " months"
              << " accuracy " << best->accuracy;
  }
  std::cout << "\n";
}

// ---------------------------------------------------------------------
// backtest / report

struct BacktestArgs {
  std::string docs;
  std::string bars;
  std::string out;
  std::string method = "a";
  std::string model_file;
  std::string lexicon;
  std::string positive;
  std::string negative;
  std::string ticker;
  std::string start;
  std::string end;
  std::string benchmark;
  double threshold = 0.5;
  double fee_rate = 0.0096;
  double margin = 0.10;
  int shares = 100;
  int first_hour = 10;
  int last_hour = 15;
};

void cmd_backtest(const BacktestArgs& a) {
  if (a.method != "a" && a.method != "b" && a.method != "c") {
    throw ConfigError("--method must be a, b or c");
  }
  if (a.method == "a" && a.model_file.empty()) {
    throw ConfigError("method a requires --model-file");
  }
  if (a.method == "b" && a.lexicon.empty()) {
    throw ConfigError("method b requires --lexicon");
  }
  if (a.method == "c" && (a.positive.empty() || a.negative.empty())) {
    throw ConfigError("method c requires --positive and --negative");
  }

  DocsFile file = docs_from_jsonl(slurp_file(a.docs));
  Settings kv = {{"docs", a.docs},
                 {"bars", a.bars},
                 {"method", a.method},
                 {"model_file", a.model_file},
                 {"lexicon", a.lexicon},
                 {"positive", a.positive},
                 {"negative", a.negative},
                 {"ticker", a.ticker},
                 {"start", a.start},
                 {"end", a.end},
                 {"benchmark", a.benchmark},
                 {"threshold", fmt_double(a.threshold)},
                 {"fee_rate", fmt_double(a.fee_rate)},
                 {"margin", fmt_double(a.margin)},
                 {"shares", std::to_string(a.shares)},
                 {"first_hour", std::to_string(a.first_hour)},
                 {"last_hour", std::to_string(a.last_hour)}};
  Provenance prov = make_provenance("backtest", kv, file.seed);

  std::vector<LabeledDocument> docs =
      docs_in_period(file.docs, a.start, a.end);
  std::vector<MinuteBar> bars =
      bars_in_period(parse_bars(slurp_file(a.bars)), a.start, a.end);
  if (bars.empty()) {
    throw DataError("no bars inside the requested period");
  }

  BacktestOptions options;
  options.ticker = a.ticker;
  if (options.ticker.empty()) {
    options.ticker = docs.empty() ? "UNKNOWN" : docs.front().ticker;
  }
  options.threshold = a.threshold;
  options.fee_rate = a.fee_rate;
  options.margin = a.margin;
  options.shares = a.shares;
  options.first_decision_hour = a.first_hour;
  options.last_decision_hour = a.last_hour;

  TrainedBundle bundle;
  Lexicon lex;
  DocClassifier classifier;
  if (a.method == "a") {
    bundle = bundle_from_json(slurp_file(a.model_file));
    classifier = [&bundle](const LabeledDocument& d) {
      return std::optional<SignalClass>(predict_document(bundle, d).label);
    };
  } else {
    if (a.method == "b") {
      lex = load_scored_lexicon(slurp_file(a.lexicon), a.lexicon);
    } else {
      lex = load_wordlist_lexicon(slurp_file(a.positive),
                                  slurp_file(a.negative), "wordlists");
    }
    for (const std::string& w : lex.warnings) {
      std::cerr << "warning: " << w << "\n";
    }
    classifier = [&lex](const LabeledDocument& d) {
      LexiconClass c = classify_lexicon(d.tokens, lex);
      if (c == LexiconClass::Unclassified) {
        return std::optional<SignalClass>();
      }
      return std::optional<SignalClass>(c == LexiconClass::Buy
                                            ? SignalClass::Buy
                                            : SignalClass::Sell);
    };
  }

  BacktestReport report = run_backtest(docs, bars, classifier, options);
  std::string label = report.ticker + "/method-" + a.method;

  ordered_json j;
  j["_meta"] = meta_json(prov);
  j["_meta"]["method"] = a.method;
  j["_meta"]["label"] = label;
  ordered_json body = ordered_json::parse(backtest_report_json(report));
  for (auto& [key, value] : body.items()) j[key] = value;
  double one_sided = std::max(report.directions.buy.placed_pct,
                              report.directions.sell.placed_pct);
  j["one_sided_share"] = one_sided / 100.0;
  j["one_sided_warning"] =
      report.directions.total_placed > 0 && one_sided >= 90.0;
  if (a.method != "a") {
    std::vector<LexiconClass> classes;
    classes.reserve(docs.size());
    for (const LabeledDocument& d : docs) {
      classes.push_back(classify_lexicon(d.tokens, lex));
    }
    if (!classes.empty()) {
      SkewReport skew = skew_report(classes);
      ordered_json s;
      s["documents"] = skew.n;
      s["buy"] = skew.buy;
      s["sell"] = skew.sell;
      s["unclassified"] = skew.unclassified;
      s["buy_frac_all"] = skew.buy_frac_all;
      s["sell_frac_all"] = skew.sell_frac_all;
      s["unclassified_frac_all"] = skew.unclassified_frac_all;
      s["buy_frac_classified"] = skew.buy_frac_classified
                                     ? ordered_json(*skew.buy_frac_classified)
                                     : ordered_json(nullptr);
      s["sell_frac_classified"] =
          skew.sell_frac_classified ? ordered_json(*skew.sell_frac_classified)
                                    : ordered_json(nullptr);
      j["classification_skew"] = s;
    }
  }
  if (!a.benchmark.empty()) {
    std::vector<MinuteBar> bench =
        bars_in_period(parse_bars(slurp_file(a.benchmark)), a.start, a.end);
    AlignedReturns aligned = align_daily_returns(
        daily_pnl(report.trades), report.account_size, bench);
    SharpeResult sr = sharpe(aligned.strategy, aligned.benchmark);
    ordered_json s;
    s["periods"] = sr.periods;
    s["mean_diff"] = sr.mean_diff;
    s["std_diff"] = sr.std_diff;
    s["sharpe"] = sr.sharpe;
    j["sharpe"] = s;
  }

  write_file(join_path(a.out, "backtest_report.json"), j.dump(2) + "\n");
  write_file(join_path(a.out, "trades.csv"),
             trades_csv(report.trades, provenance_comments(prov)));
  write_file(join_path(a.out, "equity_curve.csv"),
             equity_curve_csv(report.trades, provenance_comments(prov)));
  std::string svg = equity_curve_svg({{label, cumulative_pnl(report.trades)}});
  write_file(join_path(a.out, "equity_curve.svg"),
             "<!-- config_hash=" + prov.config_hash +
                 " seed=" + std::to_string(prov.seed) + " -->\n" + svg);
  std::cout << "backtest: " << report.trades.size() << " trades, gross pnl "
            << format_cents(report.gross_pnl) << ", return "
            << report.return_rate << " to " << a.out << "\n";
}

struct ReportArgs {
  std::string inputs;
  std::string out;
};

void cmd_report(const ReportArgs& a) {
  std::vector<std::string> paths = split_list(a.inputs);
  if (paths.empty()) {
    throw ConfigError("--inputs needs at least one backtest report");
  }
  Settings kv = {{"inputs", a.inputs}};
  Provenance prov = make_provenance("report", kv, 0);

  ordered_json rows = ordered_json::array();
  std::vector<EquitySeries> series;
  double equal_weight_sum = 0.0;
  int64_t total_pnl = 0, total_account = 0;
  int64_t buy_placed = 0, buy_correct = 0, sell_placed = 0, sell_correct = 0;
  for (const std::string& path : paths) {
    ordered_json r;
    try {
      r = ordered_json::parse(slurp_file(path));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path + ": not a backtest report: " + e.what());
    }
    try {
      std::string label = r.contains("_meta") && r["_meta"].contains("label")
                              ? r["_meta"]["label"].get<std::string>()
                              : path;
      int64_t pnl = r.at("gross_pnl_cents").get<int64_t>();
      int64_t account = r.at("account_size_cents").get<int64_t>();
      ordered_json row;
      row["label"] = label;
      row["gross_pnl"] = r.at("gross_pnl");
      row["account_size"] = r.at("account_size");
      row["return_rate"] = r.at("return_rate");
      row["net_return_rate"] = r.at("net_return_rate");
      row["annualized"] = r.at("annualized");
      row["trades"] = r.at("breakdown").at("total_placed");
      rows.push_back(row);
      equal_weight_sum += r.at("return_rate").get<double>();
      total_pnl += pnl;
      total_account += account;
      buy_placed += r.at("breakdown").at("buy").at("placed").get<int64_t>();
      buy_correct += r.at("breakdown").at("buy").at("correct").get<int64_t>();
      sell_placed += r.at("breakdown").at("sell").at("placed").get<int64_t>();
      sell_correct +=
          r.at("breakdown").at("sell").at("correct").get<int64_t>();
      EquitySeries s;
      s.name = label;
      for (const auto& v : r.at("equity_curve_cents")) {
        s.cumulative.push_back(v.get<int64_t>());
      }
      series.push_back(std::move(s));
    } catch (const nlohmann::json::exception& e) {
      throw DataError(path + ": missing backtest report fields: " + e.what());
    }
  }

  ordered_json j;
  j["_meta"] = meta_json(prov);
  j["reports"] = rows;
  j["equal_weight_return"] =
      equal_weight_sum / static_cast<double>(paths.size());
  j["account_weighted_return"] =
      total_account > 0 ? static_cast<double>(total_pnl) /
                              static_cast<double>(total_account)
                        : 0.0;
  int64_t placed = buy_placed + sell_placed;
  int64_t correct = buy_correct + sell_correct;
  j["combined_breakdown"]["buy_placed"] = buy_placed;
  j["combined_breakdown"]["buy_correct"] = buy_correct;
  j["combined_breakdown"]["sell_placed"] = sell_placed;
  j["combined_breakdown"]["sell_correct"] = sell_correct;
  j["combined_breakdown"]["total_placed"] = placed;
  j["combined_breakdown"]["total_correct"] = correct;
  j["combined_breakdown"]["total_correct_pct"] =
      placed > 0 ? 100.0 * static_cast<double>(correct) /
                       static_cast<double>(placed)
                 : 0.0;
  write_file(join_path(a.out, "combined_report.json"), j.dump(2) + "\n");
  write_file(join_path(a.out, "comparison.svg"),
             "<!-- config_hash=" + prov.config_hash + " seed=0 -->\n" +
                 equity_curve_svg(series));
  std::cout << "report: aggregated " << paths.size() << " backtests to "
            << a.out << "\n";
}

// ---------------------------------------------------------------------
// significance / sharpe

struct SignificanceArgs {
  int64_t n = 0;
  int64_t k = 0;
  double p = 0.5;
  double frames = 1.0;
  std::string out;
};

void cmd_significance(const SignificanceArgs& a) {
  Settings kv = {{"n", std::to_string(a.n)},
                 {"k", std::to_string(a.k)},
                 {"p", fmt_double(a.p)},
                 {"frames", fmt_double(a.frames)}};
  Provenance prov = make_provenance("significance", kv, 0);
  SignificanceReport report = significance(a.n, a.k, a.p, a.frames);
  std::string text = with_meta(significance_json(report), prov);
  std::cout << text;
  if (!a.out.empty()) {
    write_file(join_path(a.out, "significance.json"), text);
  }
}

struct SharpeArgs {
  std::string report;
  std::string benchmark;
  std::string out;
};

void cmd_sharpe(const SharpeArgs& a) {
  Settings kv = {{"report", a.report}, {"benchmark", a.benchmark}};
  Provenance prov = make_provenance("sharpe", kv, 0);
  ordered_json r;
  try {
    r = ordered_json::parse(slurp_file(a.report));
  } catch (const nlohmann::json::exception& e) {
    throw DataError(a.report + ": not a backtest report: " + e.what());
  }
  std::map<Date, Cents> pnl;
  Cents account = 0;
  try {
    account = r.at("account_size_cents").get<int64_t>();
    for (const auto& t : r.at("trades")) {
      Date day =
          stamp_date(parse_stamp(t.at("decision_time").get<std::string>()));
      pnl[day] += t.at("pnl_cents").get<int64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError(a.report + ": missing backtest report fields: " +
                    e.what());
  }
  std::vector<MinuteBar> bench = parse_bars(slurp_file(a.benchmark));
  AlignedReturns aligned = align_daily_returns(pnl, account, bench);
  SharpeResult sr = sharpe(aligned.strategy, aligned.benchmark);
  ordered_json j;
  j["_meta"] = meta_json(prov);
  j["periods"] = sr.periods;
  j["mean_diff"] = sr.mean_diff;
  j["std_diff"] = sr.std_diff;
  j["sharpe"] = sr.sharpe;
  std::string text = j.dump(2) + "\n";
  std::cout << text;
  if (!a.out.empty()) write_file(join_path(a.out, "sharpe.json"), text);
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"price-ground-truth tweet sentiment pipeline"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML config file; flags override it");

  SynthArgs synth_args;
  CLI::App* synth_cmd =
      app.add_subcommand("synth", "generate a planted-signal corpus");
  synth_cmd->add_option("--out", synth_args.out, "output directory")
      ->required();
  synth_cmd->add_option("--seed", synth_args.seed, "rng seed");
  synth_cmd->add_option("--ticker", synth_args.ticker, "ticker symbol");
  synth_cmd->add_option("--start", synth_args.start, "first date");
  synth_cmd->add_option("--end", synth_args.end, "last date");
  synth_cmd->add_option("--tweets", synth_args.tweets,
                        "tweet count (0: from rate)");
  synth_cmd->add_option("--tweets-per-hour", synth_args.tweets_per_hour,
                        "tweet rate when --tweets is 0");
  synth_cmd->add_option("--buy-words", synth_args.buy_words,
                        "planted buy vocabulary size");
  synth_cmd->add_option("--sell-words", synth_args.sell_words,
                        "planted sell vocabulary size");
  synth_cmd->add_option("--noise-words", synth_args.noise_words,
                        "noise vocabulary size");
  synth_cmd->add_option("--signal-strength", synth_args.signal_strength,
                        "word/move agreement probability");
  synth_cmd->add_option("--volatility", synth_args.volatility,
                        "per-hour move scale");
  synth_cmd->add_option("--start-price", synth_args.start_price,
                        "starting price");
  synth_cmd->add_option("--flip-date", synth_args.flip_date,
                        "invert word semantics before this date");

  LabelArgs label_args;
  CLI::App* label_cmd =
      app.add_subcommand("label", "label tweets by the next-hour move");
  label_cmd->add_option("--tweets", label_args.tweets, "tweets jsonl")
      ->required();
  label_cmd->add_option("--bars", label_args.bars, "minute bars csv")
      ->required();
  label_cmd->add_option("--ticker", label_args.ticker, "ticker symbol")
      ->required();
  label_cmd->add_option("--out", label_args.out, "output directory")
      ->required();
  label_cmd->add_option("--train-frac", label_args.train_frac,
                        "training fraction of the non-test pool");
  label_cmd->add_option("--seed", label_args.seed, "shuffle seed");
  label_cmd->add_option("--test-start", label_args.test_start,
                        "test period first date");
  label_cmd->add_option("--test-end", label_args.test_end,
                        "test period last date");
  label_cmd->add_option("--max-cashtags", label_args.max_cashtags,
                        "spam filter cashtag cap");

  TrainArgs train_args;
  CLI::App* train_cmd = app.add_subcommand("train", "train one classifier");
  train_cmd->add_option("--docs", train_args.docs, "labeled jsonl")
      ->required();
  train_cmd->add_option("--out", train_args.out, "output directory")
      ->required();
  train_cmd->add_option("--model", train_args.model, "mnb or lr");
  train_cmd->add_option("--ranker", train_args.ranker, "cs, fv, mi or rfe");
  train_cmd->add_option("--k", train_args.k, "feature subset size");
  train_cmd->add_option("--alpha", train_args.alpha, "mnb smoothing");
  train_cmd->add_option("--lambda", train_args.lambda, "lr regularization");
  train_cmd->add_option("--tolerance", train_args.tolerance,
                        "lr gradient tolerance");
  train_cmd->add_option("--max-iters", train_args.max_iters,
                        "lr iteration cap");
  train_cmd->add_option("--stock-features", train_args.stock_features,
                        "comma list: prior_trend,volume_int,volume_binary,"
                        "weekday");
  train_cmd->add_option("--dict-top", train_args.dict_top,
                        "dictionary row count");

  EvaluateArgs eval_args;
  CLI::App* eval_cmd =
      app.add_subcommand("evaluate", "score a model on a split");
  eval_cmd->add_option("--docs", eval_args.docs, "labeled jsonl")->required();
  eval_cmd->add_option("--model-file", eval_args.model_file, "model json")
      ->required();
  eval_cmd->add_option("--split", eval_args.split_tag,
                       "train, validation or test");
  eval_cmd->add_option("--out", eval_args.out, "output directory (optional)");

  SweepFeaturesArgs sf_args;
  CLI::App* sf_cmd = app.add_subcommand(
      "sweep-features", "accuracy grid over models, rankers and sizes");
  sf_cmd->add_option("--docs", sf_args.docs, "labeled jsonl")->required();
  sf_cmd->add_option("--out", sf_args.out, "output directory")->required();
  sf_cmd->add_option("--models", sf_args.models, "comma list");
  sf_cmd->add_option("--rankers", sf_args.rankers, "comma list");
  sf_cmd->add_option("--sizes", sf_args.sizes, "comma list");
  sf_cmd->add_option("--alpha", sf_args.alpha, "mnb smoothing");
  sf_cmd->add_option("--lambda", sf_args.lambda, "lr regularization");
  sf_cmd->add_option("--tolerance", sf_args.tolerance,
                     "lr gradient tolerance");
  sf_cmd->add_option("--max-iters", sf_args.max_iters, "lr iteration cap");
  sf_cmd->add_option("--stock-features", sf_args.stock_features,
                     "comma list");

  SweepWindowArgs sw_args;
  CLI::App* sw_cmd = app.add_subcommand(
      "sweep-window", "accuracy per trailing training window length");
  sw_cmd->add_option("--docs", sw_args.docs, "labeled jsonl")->required();
  sw_cmd->add_option("--out", sw_args.out, "output directory")->required();
  sw_cmd->add_option("--model", sw_args.model, "mnb or lr");
  sw_cmd->add_option("--ranker", sw_args.ranker, "cs, fv, mi or rfe");
  sw_cmd->add_option("--k", sw_args.k, "feature subset size");
  sw_cmd->add_option("--alpha", sw_args.alpha, "mnb smoothing");
  sw_cmd->add_option("--lambda", sw_args.lambda, "lr regularization");
  sw_cmd->add_option("--tolerance", sw_args.tolerance,
                     "lr gradient tolerance");
  sw_cmd->add_option("--max-iters", sw_args.max_iters, "lr iteration cap");
  sw_cmd->add_option("--stock-features", sw_args.stock_features,
                     "comma list");
  sw_cmd->add_option("--val-start", sw_args.val_start,
                     "validation first date")
      ->required();
  sw_cmd->add_option("--val-end", sw_args.val_end, "validation last date")
      ->required();
  sw_cmd->add_option("--windows", sw_args.windows, "window count");

  BacktestArgs bt_args;
  CLI::App* bt_cmd =
      app.add_subcommand("backtest", "hourly trading simulation");
  bt_cmd->add_option("--docs", bt_args.docs, "labeled jsonl")->required();
  bt_cmd->add_option("--bars", bt_args.bars, "minute bars csv")->required();
  bt_cmd->add_option("--out", bt_args.out, "output directory")->required();
  bt_cmd->add_option("--method", bt_args.method,
                     "a: trained model, b: scored lexicon, c: word lists");
  bt_cmd->add_option("--model-file", bt_args.model_file, "model json (a)");
  bt_cmd->add_option("--lexicon", bt_args.lexicon, "scored tsv (b)");
  bt_cmd->add_option("--positive", bt_args.positive, "positive words (c)");
  bt_cmd->add_option("--negative", bt_args.negative, "negative words (c)");
  bt_cmd->add_option("--ticker", bt_args.ticker, "ticker symbol");
  bt_cmd->add_option("--start", bt_args.start, "first date");
  bt_cmd->add_option("--end", bt_args.end, "last date");
  bt_cmd->add_option("--benchmark", bt_args.benchmark,
                     "benchmark bars csv for a sharpe block");
  bt_cmd->add_option("--threshold", bt_args.threshold,
                     "buy_fraction threshold");
  bt_cmd->add_option("--fee-rate", bt_args.fee_rate, "monthly fee rate");
  bt_cmd->add_option("--margin", bt_args.margin, "account sizing margin");
  bt_cmd->add_option("--shares", bt_args.shares, "shares per trade");
  bt_cmd->add_option("--first-hour", bt_args.first_hour,
                     "first decision hour");
  bt_cmd->add_option("--last-hour", bt_args.last_hour, "last decision hour");

  ReportArgs report_args;
  CLI::App* report_cmd =
      app.add_subcommand("report", "aggregate backtest reports");
  report_cmd->add_option("--inputs", report_args.inputs,
                         "comma list of backtest_report.json paths")
      ->required();
  report_cmd->add_option("--out", report_args.out, "output directory")
      ->required();

  SignificanceArgs sig_args;
  CLI::App* sig_cmd =
      app.add_subcommand("significance", "binomial trade significance");
  sig_cmd->add_option("--n", sig_args.n, "trades placed")->required();
  sig_cmd->add_option("--k", sig_args.k, "trades correct")->required();
  sig_cmd->add_option("--p", sig_args.p, "per-trade chance probability");
  sig_cmd->add_option("--frames", sig_args.frames,
                      "selectable test windows");
  sig_cmd->add_option("--out", sig_args.out, "output directory (optional)");

  SharpeArgs sharpe_args;
  CLI::App* sharpe_cmd =
      app.add_subcommand("sharpe", "ex-ante sharpe vs a benchmark");
  sharpe_cmd->add_option("--report", sharpe_args.report,
                         "backtest_report.json")
      ->required();
  sharpe_cmd->add_option("--benchmark", sharpe_args.benchmark,
                         "benchmark bars csv")
      ->required();
  sharpe_cmd
      ->add_option("--out", sharpe_args.out, "output directory (optional)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("stocksig");
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth_cmd->parsed()) {
      cmd_synth(synth_args);
    } else if (label_cmd->parsed()) {
      cmd_label(label_args);
    } else if (train_cmd->parsed()) {
      cmd_train(train_args);
    } else if (eval_cmd->parsed()) {
      cmd_evaluate(eval_args);
    } else if (sf_cmd->parsed()) {
      cmd_sweep_features(sf_args);
    } else if (sw_cmd->parsed()) {
      cmd_sweep_window(sw_args);
    } else if (bt_cmd->parsed()) {
      cmd_backtest(bt_args);
    } else if (report_cmd->parsed()) {
      cmd_report(report_args);
    } else if (sig_cmd->parsed()) {
      cmd_significance(sig_args);
    } else if (sharpe_cmd->parsed()) {
      cmd_sharpe(sharpe_args);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace stocksig

#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "stocksig/commands.hpp"
#include "stocksig/io_util.hpp"

using namespace stocksig;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "stocksig_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string path_of(const fs::path& dir, const char* file) {
  return (dir / file).string();
}

nlohmann::json read_json(const fs::path& dir, const char* file) {
  return nlohmann::json::parse(slurp_file(path_of(dir, file)));
}

}  // namespace

TEST_CASE("cli pipeline runs synth, label, train, evaluate, and backtest") {
  fs::path dir = fresh_dir("pipeline");
  std::string out = dir.string();

  CHECK(run_cli({"synth", "--out", out, "--seed", "5", "--start",
                 "2016-01-04", "--end", "2016-01-29", "--tweets", "2000",
                 "--buy-words", "5", "--sell-words", "5", "--noise-words",
                 "20", "--signal-strength", "0.9"}) == 0);
  CHECK(fs::exists(dir / "tweets.jsonl"));
  CHECK(fs::exists(dir / "bars.csv"));
  CHECK(fs::exists(dir / "truth_buy.txt"));
  std::string tweets = slurp_file(path_of(dir, "tweets.jsonl"));
  CHECK(tweets.rfind("{\"_meta\":", 0) == 0);

  CHECK(run_cli({"label", "--tweets", path_of(dir, "tweets.jsonl"), "--bars",
                 path_of(dir, "bars.csv"), "--ticker", "SYNTH", "--out", out,
                 "--seed", "7", "--test-start", "2016-01-25", "--test-end",
                 "2016-01-29"}) == 0);
  CHECK(fs::exists(dir / "labeled.jsonl"));
  CHECK(fs::exists(dir / "hist_hour.csv"));
  CHECK(fs::exists(dir / "hist_weekday.csv"));
  nlohmann::json summary = read_json(dir, "label_summary.json");
  CHECK(summary.at("split_sizes").at("train").get<int64_t>() > 0);
  CHECK(summary.at("split_sizes").at("validation").get<int64_t>() > 0);
  CHECK(summary.at("split_sizes").at("test").get<int64_t>() > 0);

  std::string docs = path_of(dir, "labeled.jsonl");
  CHECK(run_cli({"train", "--docs", docs, "--out", out, "--model", "mnb",
                 "--ranker", "cs", "--k", "10"}) == 0);
  CHECK(fs::exists(dir / "model.json"));
  std::string dictionary = slurp_file(path_of(dir, "dictionary.csv"));
  CHECK(dictionary.find("rank,term,score,buy_weight,sell_weight") !=
        std::string::npos);

  CHECK(run_cli({"evaluate", "--docs", docs, "--model-file",
                 path_of(dir, "model.json"), "--split", "validation", "--out",
                 out}) == 0);
  nlohmann::json eval = read_json(dir, "evaluation.json");
  CHECK(eval.at("split") == "validation");
  double accuracy = eval.at("accuracy").get<double>();
  CHECK(accuracy >= 0.0);
  CHECK(accuracy <= 1.0);

  CHECK(run_cli({"backtest", "--docs", docs, "--bars", path_of(dir, "bars.csv"),
                 "--out", out, "--method", "a", "--model-file",
                 path_of(dir, "model.json"), "--ticker", "SYNTH", "--start",
                 "2016-01-25", "--end", "2016-01-29", "--benchmark",
                 path_of(dir, "bars.csv")}) == 0);
  nlohmann::json report = read_json(dir, "backtest_report.json");
  CHECK(report.at("_meta").at("method") == "a");
  CHECK(report.at("_meta").at("label") == "SYNTH/method-a");
  CHECK(report.at("_meta").contains("config_hash"));
  CHECK(report.at("gross_pnl_cents").is_number_integer());
  CHECK(report.at("sharpe").contains("sharpe"));
  CHECK(fs::exists(dir / "trades.csv"));
  CHECK(fs::exists(dir / "equity_curve.csv"));
  std::string svg = slurp_file(path_of(dir, "equity_curve.svg"));
  CHECK(svg.find("<!--") != std::string::npos);
  CHECK(svg.find("<svg") != std::string::npos);

  CHECK(run_cli({"report", "--inputs",
                 path_of(dir, "backtest_report.json"), "--out", out}) == 0);
  nlohmann::json combined = read_json(dir, "combined_report.json");
  CHECK(combined.at("reports").size() == 1);
  CHECK(fs::exists(dir / "comparison.svg"));

  CHECK(run_cli({"significance", "--n", "10", "--k", "7", "--out", out}) ==
        0);
  nlohmann::json sig = read_json(dir, "significance.json");
  CHECK(sig.at("pmf").get<double>() == doctest::Approx(0.1171875));

  CHECK(run_cli({"sharpe", "--report", path_of(dir, "backtest_report.json"),
                 "--benchmark", path_of(dir, "bars.csv"), "--out", out}) == 0);
  nlohmann::json sharpe = read_json(dir, "sharpe.json");
  CHECK(sharpe.contains("sharpe"));
  CHECK(sharpe.at("periods").get<int64_t>() >= 2);
}

TEST_CASE("cli reruns are byte-identical") {
  fs::path a = fresh_dir("rerun_a");
  fs::path b = fresh_dir("rerun_b");
  std::vector<std::string> synth = {
      "synth",           "--out",       "",   "--seed",      "21",
      "--start",         "2016-01-04",  "--end", "2016-01-08",
      "--tweets",        "300",         "--buy-words", "4",
      "--sell-words",    "4",           "--noise-words", "10"};
  synth[2] = a.string();
  REQUIRE(run_cli(synth) == 0);
  synth[2] = b.string();
  REQUIRE(run_cli(synth) == 0);
  CHECK(slurp_file(path_of(a, "tweets.jsonl")) ==
        slurp_file(path_of(b, "tweets.jsonl")));
  CHECK(slurp_file(path_of(a, "bars.csv")) ==
        slurp_file(path_of(b, "bars.csv")));

  // Identical invocations repeated into the same directory overwrite
  // their outputs with the same bytes (input paths are part of the
  // hashed configuration, so the invocation must match exactly).
  auto label = [&] {
    return run_cli({"label", "--tweets", path_of(a, "tweets.jsonl"),
                    "--bars", path_of(a, "bars.csv"), "--ticker", "SYNTH",
                    "--out", a.string(), "--seed", "3"});
  };
  REQUIRE(label() == 0);
  std::string labeled_first = slurp_file(path_of(a, "labeled.jsonl"));
  REQUIRE(label() == 0);
  CHECK(slurp_file(path_of(a, "labeled.jsonl")) == labeled_first);

  auto train = [&] {
    return run_cli({"train", "--docs", path_of(a, "labeled.jsonl"), "--out",
                    a.string(), "--model", "mnb", "--ranker", "cs", "--k",
                    "6"});
  };
  REQUIRE(train() == 0);
  std::string model_first = slurp_file(path_of(a, "model.json"));
  std::string dict_first = slurp_file(path_of(a, "dictionary.csv"));
  REQUIRE(train() == 0);
  CHECK(slurp_file(path_of(a, "model.json")) == model_first);
  CHECK(slurp_file(path_of(a, "dictionary.csv")) == dict_first);
}

TEST_CASE("cli maps the error taxonomy onto exit codes") {
  fs::path dir = fresh_dir("errors");
  std::string out = dir.string();

  // Usage problems surface as config errors.
  CHECK(run_cli({"synth"}) == 2);
  CHECK(run_cli({"no-such-command"}) == 2);
  CHECK(run_cli({}) == 2);
  CHECK(run_cli({"significance", "--n", "10", "--k", "7", "--p", "0"}) == 2);
  CHECK(run_cli({"synth", "--out", out, "--signal-strength", "0.2"}) == 2);
  CHECK(run_cli({"synth", "--out", out, "--start", "not-a-date"}) == 2);

  // Missing or malformed inputs are data errors.
  CHECK(run_cli({"label", "--tweets", path_of(dir, "absent.jsonl"), "--bars",
                 path_of(dir, "absent.csv"), "--ticker", "FB", "--out",
                 out}) == 3);
  write_file(path_of(dir, "broken.json"), "not json");
  write_file(path_of(dir, "docs.jsonl"), "");
  CHECK(run_cli({"evaluate", "--docs", path_of(dir, "docs.jsonl"),
                 "--model-file", path_of(dir, "broken.json")}) == 3);

  // Failed convergence is a numeric error.
  REQUIRE(run_cli({"synth", "--out", out, "--seed", "5", "--start",
                   "2016-01-04", "--end", "2016-01-08", "--tweets", "200",
                   "--buy-words", "4", "--sell-words", "4", "--noise-words",
                   "10"}) == 0);
  REQUIRE(run_cli({"label", "--tweets", path_of(dir, "tweets.jsonl"),
                   "--bars", path_of(dir, "bars.csv"), "--ticker", "SYNTH",
                   "--out", out}) == 0);
  CHECK(run_cli({"train", "--docs", path_of(dir, "labeled.jsonl"), "--out",
                 out, "--model", "lr", "--ranker", "cs", "--k", "6",
                 "--max-iters", "1", "--tolerance", "1e-12"}) == 4);

  // Config validation inside commands, not just the parser.
  CHECK(run_cli({"train", "--docs", path_of(dir, "labeled.jsonl"), "--out",
                 out, "--model", "mnb", "--ranker", "cs", "--k", "6",
                 "--alpha", "0"}) == 2);
  CHECK(run_cli({"train", "--docs", path_of(dir, "labeled.jsonl"), "--out",
                 out, "--model", "nope"}) == 2);
  CHECK(run_cli({"backtest", "--docs", path_of(dir, "labeled.jsonl"),
                 "--bars", path_of(dir, "bars.csv"), "--out", out,
                 "--method", "a"}) == 2);  // method a needs --model-file
}

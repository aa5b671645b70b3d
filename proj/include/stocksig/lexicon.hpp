#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace stocksig {

enum class LexiconKind { Scored, WordLists };

enum class LexiconClass { Buy, Sell, Unclassified };

std::string to_string(LexiconClass c);

// Either a signed per-term score table or a pair of word lists mapped to
// +1 / -1. Terms are lowercase; on duplicates the last score wins.
struct Lexicon {
  std::string name;
  LexiconKind kind = LexiconKind::Scored;
  std::unordered_map<std::string, double> scores;
  std::vector<std::string> warnings;
};

// TSV, one `term<TAB>score` per line. '#' lines and blank lines are
// skipped. Unparseable or non-finite scores raise DataError; duplicate
// terms keep the last score and add a warning; an empty result warns.
Lexicon load_scored_lexicon(const std::string& tsv_text,
                            const std::string& name);

// Two newline-delimited word lists, scored +1 and -1. A word present in
// both lists raises DataError.
Lexicon load_wordlist_lexicon(const std::string& positive_text,
                              const std::string& negative_text,
                              const std::string& name);

// Sign of the summed scores of matched tokens; zero sum or no match is
// Unclassified.
LexiconClass classify_lexicon(const std::vector<std::string>& tokens,
                              const Lexicon& lex);

struct SkewReport {
  int64_t n = 0;
  int64_t buy = 0;
  int64_t sell = 0;
  int64_t unclassified = 0;
  double buy_frac_all = 0.0;
  double sell_frac_all = 0.0;
  double unclassified_frac_all = 0.0;
  // Fractions over classified documents only; absent when everything
  // was unclassified.
  std::optional<double> buy_frac_classified;
  std::optional<double> sell_frac_classified;
};

SkewReport skew_report(const std::vector<LexiconClass>& classifications);

std::string skew_report_text(const SkewReport& report);

}  // namespace stocksig

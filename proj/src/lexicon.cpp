#include "stocksig/lexicon.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "stocksig/errors.hpp"
#include "stocksig/io_util.hpp"

namespace stocksig {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string ascii_lower(std::string s) {
  for (char& c : s) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return s;
}

bool skip_line(const std::string& line) {
  std::string t = trim(line);
  return t.empty() || t[0] == '#';
}

void add_wordlist(Lexicon& lex, const std::string& text, double score,
                  const std::string& list_name) {
  std::vector<std::string> lines = split_lines(text);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (skip_line(lines[i])) continue;
    std::string word = ascii_lower(trim(lines[i]));
    auto it = lex.scores.find(word);
    if (it != lex.scores.end()) {
      if (it->second != score) {
        throw DataError(list_name + " line " + std::to_string(i + 1) +
                        ": word '" + word +
                        "' appears in both the positive and negative lists");
      }
      lex.warnings.push_back(list_name + " line " + std::to_string(i + 1) +
                             ": duplicate word '" + word + "'");
      continue;
    }
    lex.scores.emplace(std::move(word), score);
  }
}

}  // namespace

std::string to_string(LexiconClass c) {
  switch (c) {
    case LexiconClass::Buy: return "Buy";
    case LexiconClass::Sell: return "Sell";
    default: return "Unclassified";
  }
}

Lexicon load_scored_lexicon(const std::string& tsv_text,
                            const std::string& name) {
  Lexicon lex;
  lex.name = name;
  lex.kind = LexiconKind::Scored;
  std::vector<std::string> lines = split_lines(tsv_text);
  for (size_t i = 0; i < lines.size(); ++i) {
    if (skip_line(lines[i])) continue;
    size_t tab = lines[i].find('\t');
    if (tab == std::string::npos) {
      throw DataError(name + " line " + std::to_string(i + 1) +
                      ": expected `term<TAB>score`");
    }
    std::string term = ascii_lower(trim(lines[i].substr(0, tab)));
    std::string score_text = trim(lines[i].substr(tab + 1));
    if (term.empty()) {
      throw DataError(name + " line " + std::to_string(i + 1) +
                      ": empty term");
    }
    char* end = nullptr;
    double score = std::strtod(score_text.c_str(), &end);
    if (score_text.empty() || end != score_text.c_str() + score_text.size() ||
        !std::isfinite(score)) {
      throw DataError(name + " line " + std::to_string(i + 1) +
                      ": unparseable score '" + score_text + "'");
    }
    auto it = lex.scores.find(term);
    if (it != lex.scores.end()) {
      lex.warnings.push_back(name + " line " + std::to_string(i + 1) +
                             ": duplicate term '" + term +
                             "' (last score wins)");
      it->second = score;
    } else {
      lex.scores.emplace(std::move(term), score);
    }
  }
  if (lex.scores.empty()) {
    lex.warnings.push_back(name + ": lexicon is empty");
  }
  return lex;
}

Lexicon load_wordlist_lexicon(const std::string& positive_text,
                              const std::string& negative_text,
                              const std::string& name) {
  Lexicon lex;
  lex.name = name;
  lex.kind = LexiconKind::WordLists;
  add_wordlist(lex, positive_text, 1.0, name + " positive list");
  add_wordlist(lex, negative_text, -1.0, name + " negative list");
  if (lex.scores.empty()) {
    lex.warnings.push_back(name + ": lexicon is empty");
  }
  return lex;
}

LexiconClass classify_lexicon(const std::vector<std::string>& tokens,
                              const Lexicon& lex) {
  double sum = 0.0;
  bool matched = false;
  for (const std::string& t : tokens) {
    auto it = lex.scores.find(t);
    if (it == lex.scores.end()) continue;
    matched = true;
    sum += it->second;
  }
  if (!matched || sum == 0.0) return LexiconClass::Unclassified;
  return sum > 0.0 ? LexiconClass::Buy : LexiconClass::Sell;
}

SkewReport skew_report(const std::vector<LexiconClass>& classifications) {
  if (classifications.empty()) throw DataError("empty classification batch");
  SkewReport r;
  r.n = static_cast<int64_t>(classifications.size());
  for (LexiconClass c : classifications) {
    switch (c) {
      case LexiconClass::Buy: ++r.buy; break;
      case LexiconClass::Sell: ++r.sell; break;
      default: ++r.unclassified; break;
    }
  }
  double n = static_cast<double>(r.n);
  r.buy_frac_all = static_cast<double>(r.buy) / n;
  r.sell_frac_all = static_cast<double>(r.sell) / n;
  r.unclassified_frac_all = static_cast<double>(r.unclassified) / n;
  int64_t classified = r.buy + r.sell;
  if (classified > 0) {
    r.buy_frac_classified =
        static_cast<double>(r.buy) / static_cast<double>(classified);
    r.sell_frac_classified =
        static_cast<double>(r.sell) / static_cast<double>(classified);
  }
  return r;
}

std::string skew_report_text(const SkewReport& report) {
  char buf[96];
  std::string out;
  out += "documents=" + std::to_string(report.n) + "\n";
  out += "buy=" + std::to_string(report.buy) + "\n";
  out += "sell=" + std::to_string(report.sell) + "\n";
  out += "unclassified=" + std::to_string(report.unclassified) + "\n";
  std::snprintf(buf, sizeof(buf), "buy_frac_all=%.10g\n",
                report.buy_frac_all);
  out += buf;
  std::snprintf(buf, sizeof(buf), "sell_frac_all=%.10g\n",
                report.sell_frac_all);
  out += buf;
  std::snprintf(buf, sizeof(buf), "unclassified_frac_all=%.10g\n",
                report.unclassified_frac_all);
  out += buf;
  if (report.buy_frac_classified) {
    std::snprintf(buf, sizeof(buf), "buy_frac_classified=%.10g\n",
                  *report.buy_frac_classified);
    out += buf;
    std::snprintf(buf, sizeof(buf), "sell_frac_classified=%.10g\n",
                  *report.sell_frac_classified);
    out += buf;
  } else {
    out += "buy_frac_classified=NA\n";
    out += "sell_frac_classified=NA\n";
  }
  return out;
}

}  // namespace stocksig

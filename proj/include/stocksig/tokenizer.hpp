#pragma once

#include <string>
#include <vector>

namespace stocksig {

// Normalization pipeline, applied in this order:
//   1. whitespace-delimited runs starting http://, https://, or www.
//      (case-insensitive) become the literal token `<url>`
//   2. ASCII lowercase
//   3. punctuation and symbol characters are removed (ASCII non-alnum,
//      plus the common Unicode punctuation/symbol/emoji blocks by
//      code-point range); the literal `<url>` keeps its angle brackets
//   4. three or more consecutive repeats of the same letter collapse to
//      two ("soooo" -> "soo"); digits are untouched
//   5. purely numeric tokens are dropped
// Idempotent on its own output: tokenize(join(tokens)) == tokens.
std::vector<std::string> tokenize(const std::string& text);

std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace stocksig

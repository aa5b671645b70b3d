#include "stocksig/tokenizer.hpp"

#include <cstdint>

namespace stocksig {

namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

bool starts_with_ci(const std::string& s, size_t at, const char* prefix) {
  for (size_t i = 0; prefix[i] != '\0'; ++i) {
    if (at + i >= s.size()) return false;
    char c = s[at + i];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != prefix[i]) return false;
  }
  return true;
}

bool is_url_start(const std::string& s, size_t at) {
  return starts_with_ci(s, at, "http://") || starts_with_ci(s, at, "https://") ||
         starts_with_ci(s, at, "www.");
}

// Decodes one UTF-8 sequence at i; returns bytes consumed (2-4) with the
// code point in cp, or 0 for an invalid sequence. ASCII is handled by the
// caller.
size_t decode_utf8(const std::string& s, size_t i, uint32_t& cp) {
  auto cont = [&](size_t k) {
    return k < s.size() && (static_cast<unsigned char>(s[k]) & 0xC0) == 0x80;
  };
  unsigned char b0 = static_cast<unsigned char>(s[i]);
  if (b0 >= 0xC2 && b0 <= 0xDF) {
    if (!cont(i + 1)) return 0;
    cp = (static_cast<uint32_t>(b0 & 0x1F) << 6) |
         (static_cast<unsigned char>(s[i + 1]) & 0x3F);
    return 2;
  }
  if (b0 >= 0xE0 && b0 <= 0xEF) {
    if (!cont(i + 1) || !cont(i + 2)) return 0;
    cp = (static_cast<uint32_t>(b0 & 0x0F) << 12) |
         ((static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6) |
         (static_cast<unsigned char>(s[i + 2]) & 0x3F);
    if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
    return 3;
  }
  if (b0 >= 0xF0 && b0 <= 0xF4) {
    if (!cont(i + 1) || !cont(i + 2) || !cont(i + 3)) return 0;
    cp = (static_cast<uint32_t>(b0 & 0x07) << 18) |
         ((static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12) |
         ((static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6) |
         (static_cast<unsigned char>(s[i + 3]) & 0x3F);
    if (cp < 0x10000 || cp > 0x10FFFF) return 0;
    return 4;
  }
  return 0;
}

bool is_unicode_space(uint32_t cp) {
  return cp == 0xA0 || cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A) ||
         cp == 0x2028 || cp == 0x2029 || cp == 0x202F || cp == 0x205F ||
         cp == 0x3000;
}

// Punctuation/symbol blocks, by range. An approximation of the Unicode P
// and S categories that covers the characters tweets actually contain.
bool is_unicode_punct(uint32_t cp) {
  return (cp >= 0xA1 && cp <= 0xBF) || cp == 0xD7 || cp == 0xF7 ||
         (cp >= 0x2010 && cp <= 0x206F) || (cp >= 0x20A0 && cp <= 0x20CF) ||
         (cp >= 0x2100 && cp <= 0x2BFF) || (cp >= 0x2E00 && cp <= 0x2E7F) ||
         (cp >= 0x3001 && cp <= 0x303F) || (cp >= 0xFE00 && cp <= 0xFE6F) ||
         (cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
         (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65) ||
         (cp >= 0x1F000 && cp <= 0x1FBFF);
}

std::string collapse_repeats(const std::string& t) {
  std::string out;
  out.reserve(t.size());
  for (char c : t) {
    if (c >= 'a' && c <= 'z' && out.size() >= 2 &&
        out[out.size() - 1] == c && out[out.size() - 2] == c) {
      continue;
    }
    out += c;
  }
  return out;
}

bool purely_numeric(const std::string& t) {
  if (t.empty()) return false;
  for (char c : t) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> tokenize(const std::string& text) {
  // Stage 1: URL runs -> "<url>".
  std::string replaced;
  replaced.reserve(text.size());
  size_t i = 0;
  while (i < text.size()) {
    if (is_ascii_space(text[i])) {
      replaced += text[i];
      ++i;
      continue;
    }
    size_t end = i;
    while (end < text.size() && !is_ascii_space(text[end])) ++end;
    if (is_url_start(text, i)) {
      replaced += "<url>";
    } else {
      replaced.append(text, i, end - i);
    }
    i = end;
  }

  // Stage 2: ASCII lowercase (safe on UTF-8: multi-byte units are >= 0x80).
  for (char& c : replaced) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }

  // Stages 3-5: strip, split, collapse, drop numerics.
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) return;
    std::string t = collapse_repeats(cur);
    cur.clear();
    if (!t.empty() && !purely_numeric(t)) tokens.push_back(std::move(t));
  };
  i = 0;
  while (i < replaced.size()) {
    unsigned char b = static_cast<unsigned char>(replaced[i]);
    if (b < 0x80) {
      char c = static_cast<char>(b);
      if (is_ascii_space(c)) {
        flush();
      } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
        cur += c;
      } else if (c == '<' && replaced.compare(i, 5, "<url>") == 0) {
        cur += "<url>";
        i += 5;
        continue;
      }
      // other ASCII: punctuation/control, dropped
      ++i;
      continue;
    }
    uint32_t cp = 0;
    size_t len = decode_utf8(replaced, i, cp);
    if (len == 0) {
      ++i;  // invalid byte, dropped
      continue;
    }
    if (is_unicode_space(cp)) {
      flush();
    } else if (!is_unicode_punct(cp)) {
      cur.append(replaced, i, len);
    }
    i += len;
  }
  flush();
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace stocksig

#include "stocksig/price.hpp"

#include <cmath>
#include <cstdio>

#include "stocksig/errors.hpp"

namespace stocksig {

Price4 parse_price(const std::string& text) {
  if (text.empty()) throw DataError("empty price field");
  size_t i = 0;
  int64_t whole = 0;
  bool any = false;
  for (; i < text.size() && text[i] != '.'; ++i) {
    char c = text[i];
    if (c < '0' || c > '9') throw DataError("malformed price: '" + text + "'");
    whole = whole * 10 + (c - '0');
    any = true;
    if (whole > 1000000000000LL) throw DataError("price overflow: '" + text + "'");
  }
  int64_t frac = 0;
  int frac_digits = 0;
  if (i < text.size()) {
    ++i;  // skip '.'
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (c < '0' || c > '9') {
        throw DataError("malformed price: '" + text + "'");
      }
      if (++frac_digits > 4) {
        throw DataError("price has more than 4 decimal places: '" + text + "'");
      }
      frac = frac * 10 + (c - '0');
      any = true;
    }
    if (frac_digits == 0) throw DataError("malformed price: '" + text + "'");
  }
  if (!any) throw DataError("malformed price: '" + text + "'");
  for (int k = frac_digits; k < 4; ++k) frac *= 10;
  return whole * kPrice4Scale + frac;
}

std::string format_price(Price4 p) {
  bool neg = p < 0;
  uint64_t v = neg ? static_cast<uint64_t>(-p) : static_cast<uint64_t>(p);
  uint64_t whole = v / kPrice4Scale;
  uint64_t frac = v % kPrice4Scale;
  char buf[40];
  if (frac % 100 == 0) {
    std::snprintf(buf, sizeof(buf), "%s%llu.%02llu", neg ? "-" : "",
                  static_cast<unsigned long long>(whole),
                  static_cast<unsigned long long>(frac / 100));
  } else {
    std::snprintf(buf, sizeof(buf), "%s%llu.%04llu", neg ? "-" : "",
                  static_cast<unsigned long long>(whole),
                  static_cast<unsigned long long>(frac));
  }
  return buf;
}

std::string format_cents(Cents c) {
  bool neg = c < 0;
  uint64_t v = neg ? static_cast<uint64_t>(-c) : static_cast<uint64_t>(c);
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%s%llu.%02llu", neg ? "-" : "",
                static_cast<unsigned long long>(v / 100),
                static_cast<unsigned long long>(v % 100));
  return buf;
}

Price4 price_from_double(double dollars) {
  return static_cast<Price4>(
      std::llround(dollars * static_cast<double>(kPrice4Scale)));
}

}  // namespace stocksig

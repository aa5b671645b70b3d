#pragma once

#include <cstdint>
#include <string>

namespace stocksig {

// Prices are fixed-point with 4 decimal places (Price4 = ten-thousandths
// of a dollar); account values and pnl are integer cents. This keeps the
// trade-accounting identities exact instead of float-approximate.
using Price4 = int64_t;
using Cents = int64_t;

constexpr int64_t kPrice4Scale = 10000;

// Parses a non-negative decimal with at most 4 fractional digits.
// Throws DataError otherwise.
Price4 parse_price(const std::string& text);

// Trailing zeros trimmed but never below 2 decimals: 115.8000 -> "115.80",
// 115.8025 -> "115.8025".
std::string format_price(Price4 p);

std::string format_cents(Cents c);  // signed, always 2 decimals

inline double price_to_double(Price4 p) {
  return static_cast<double>(p) / static_cast<double>(kPrice4Scale);
}

Price4 price_from_double(double dollars);  // nearest ten-thousandth

}  // namespace stocksig

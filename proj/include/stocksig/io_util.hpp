#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace stocksig {

// Reads a whole file; throws DataError on I/O failure.
std::string slurp_file(const std::string& path);

// Writes content, creating parent directories as needed; throws DataError.
void write_file(const std::string& path, const std::string& content);

// Splits on '\n', dropping a final empty segment from a trailing newline.
// '\r' before the split point is stripped.
std::vector<std::string> split_lines(const std::string& text);

std::vector<std::string> split_csv_row(const std::string& line);

// FNV-1a 64-bit, hex-formatted; used to stamp outputs with the config
// they came from.
std::string fnv1a_hex(const std::string& text);

}  // namespace stocksig

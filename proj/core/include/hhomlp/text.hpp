#pragma once

// Text helpers shared by the plain-text artifact formats.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hhomlp::text {

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

// Strict parse of a complete cell; throws DataError naming `context`.
double parse_double(std::string_view cell, std::string_view context = {});
std::uint64_t parse_uint(std::string_view cell, std::string_view context = {});

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
// Splits on runs of spaces and tabs.
std::vector<std::string> split_ws(std::string_view s);

std::string join_doubles(const std::vector<double>& values, char sep = ' ');

// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(std::string_view bytes);

std::string read_file(const std::string& path);
// Writes atomically enough for our purposes: truncate then write.
void write_file(const std::string& path, std::string_view contents);

}  // namespace hhomlp::text

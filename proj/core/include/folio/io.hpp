#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace folio {

/// Shortest decimal form that round-trips through binary64.
std::string format_double(double v);

/// Strict full-string parse; throws DataError with `what` context on failure.
double parse_double(const std::string& text, const std::string& what);
std::int64_t parse_int(const std::string& text, const std::string& what);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Splits one CSV line on commas (no quoting; the toolkit's formats never
/// need it). Trailing \r is stripped.
std::vector<std::string> split_csv_line(const std::string& line);

/// Splits text into lines; accepts both \n and \r\n endings.
std::vector<std::string> split_lines(const std::string& text);

/// FNV-1a 64-bit digest, used for dataset fingerprints in reports.
std::uint64_t fnv1a64(const std::string& bytes);
std::string hex64(std::uint64_t v);

} // namespace folio

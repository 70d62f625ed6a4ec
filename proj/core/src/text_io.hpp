#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace semdirb::detail {

// Whole file as bytes. Throws DataError naming the path when unreadable.
std::string read_file(const std::filesystem::path& path);

// Writes bytes, creating parent directories. Throws DataError when unwritable.
void write_file(const std::filesystem::path& path, std::string_view content);

bool is_valid_utf8(std::string_view bytes);

// Splits on LF, stripping one trailing CR per line. A final empty line after
// the last LF is not reported.
std::vector<std::string_view> split_lines(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);

// Strict numeric parsing; throws DataError with `what` in the message.
double parse_double(std::string_view s, std::string_view what);
long long parse_int(std::string_view s, std::string_view what);
unsigned long long parse_uint(std::string_view s, std::string_view what);

// RFC-4180 field quoting and a single-record parser.
std::string csv_field(std::string_view value);
std::vector<std::string> parse_csv_record(std::string_view line);

// Shortest decimal text that parses back to the same double.
std::string format_exact(double v);
// Fixed-point with six fractional digits.
std::string format_fixed6(double v);

}  // namespace semdirb::detail

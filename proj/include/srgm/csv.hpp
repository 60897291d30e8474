#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace srgm {

/// Shortest representation that round-trips the exact double value.
std::string format_double(double value);

/// Parses a full double; throws std::invalid_argument on trailing garbage,
/// empty input, or non-numeric text.
double parse_double(std::string_view text);

std::vector<std::string> split_csv_line(std::string_view line);

/// Reads non-empty, non-comment ('#') lines split into fields. first_line
/// receives the 1-based line number of each returned row when non-null.
std::vector<std::vector<std::string>> read_csv_rows(std::istream& in,
                                                    std::vector<int>* line_numbers = nullptr);

}  // namespace srgm

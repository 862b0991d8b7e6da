#pragma once

#include <string>
#include <vector>

namespace semifrac {

/// Shortest decimal that round-trips to the same double ("nan", "inf", "-inf" for non-finite values).
std::string format_double(double v);

/// Parses a grid: "lin:a:b:n", "log:a:b:n" (a, b > 0) or a comma-separated list.
/// Throws DomainError for malformed or empty grids.
std::vector<double> parse_grid(const std::string& text);

/// Writes content to path, replacing it; DomainError if the file cannot be written.
void write_text_file(const std::string& path, const std::string& content);

} // namespace semifrac

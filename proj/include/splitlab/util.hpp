#pragma once

#include <string>
#include <vector>

namespace splitlab {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

/// Whole-string parse; throws std::invalid_argument.
double parse_double(const std::string& text);
long long parse_integer(const std::string& text);

std::vector<std::string> split(const std::string& text, char sep);

}  // namespace splitlab

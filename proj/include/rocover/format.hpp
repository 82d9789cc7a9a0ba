#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rocover {

// Shortest decimal form that parses back to the same double. Used for all
// persisted numbers so that save -> load -> save is byte identical.
std::string format_double(double value);

// Fixed significant-digit form for report CSVs (trace files use 12 digits).
std::string format_double_sig(double value, int significant_digits);

// Strict double parser over a whole token; throws std::invalid_argument on
// trailing garbage, empty input, or non-finite spellings we do not emit.
double parse_double(std::string_view token);

long long parse_int(std::string_view token);

std::vector<std::string_view> split_ws(std::string_view line);
std::vector<std::string_view> split_char(std::string_view line, char sep);

}  // namespace rocover

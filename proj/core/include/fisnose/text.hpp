#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fisnose::text {

/// Shortest decimal text that parses back to the identical double.
std::string format_real(double value);

/// Fixed-point with `digits` fractional digits ("31.25" -> "31.25" at 2).
std::string format_fixed(double value, int digits);

/// Parses the whole of `token` as a finite double. Leading/trailing spaces
/// are not accepted.
std::optional<double> parse_real(std::string_view token);

std::optional<long long> parse_integer(std::string_view token);

std::optional<std::uint64_t> parse_unsigned(std::string_view token);

std::vector<std::string_view> split(std::string_view line, char separator);

std::string_view trim(std::string_view s);

}  // namespace fisnose::text

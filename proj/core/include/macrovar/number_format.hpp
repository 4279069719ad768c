#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace macrovar {

// Shortest decimal text that parses back to the same double. Plain
// notation for magnitudes in [1e-5, 1e16), exponent form otherwise.
std::string format_double(double value);

// Strict full-string parse (no leading/trailing whitespace, no locale,
// finite values only).
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_integer(std::string_view text);

}  // namespace macrovar

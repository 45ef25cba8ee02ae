#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace elastic {

/// Shortest decimal representation that parses back to the same double. Infinities print as "inf"/"-inf".
[[nodiscard]] std::string format_double(double v);

/// Strict parse of a whole token as a double ("inf" and "nan" accepted). False if the token is not a number.
[[nodiscard]] bool parse_double(std::string_view token, double& out) noexcept;

/// Join with `sep`, formatting each value with format_double.
[[nodiscard]] std::string join(const std::vector<double>& values, std::string_view sep);

/// Split on any of the characters in `seps`, keeping empty fields.
[[nodiscard]] std::vector<std::string_view> split(std::string_view s, std::string_view seps);

/// Strip leading and trailing blanks (space, tab, CR, LF).
[[nodiscard]] std::string_view trim(std::string_view s) noexcept;

} // namespace elastic

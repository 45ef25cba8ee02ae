#include <elastic/format.hpp>

#include <charconv>
#include <cmath>

namespace elastic {

std::string format_double(double v) {
    if (std::isinf(v)) { return v > 0 ? "inf" : "-inf"; }
    if (std::isnan(v)) { return "nan"; }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

bool parse_double(std::string_view token, double& out) noexcept {
    if (token.empty()) { return false; }
    // from_chars rejects a leading '+'
    if (token.front() == '+') { token.remove_prefix(1); }
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

std::string join(const std::vector<double>& values, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) { out += sep; }
        out += format_double(values[i]);
    }
    return out;
}

std::vector<std::string_view> split(std::string_view s, std::string_view seps) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find_first_of(seps, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

std::string_view trim(std::string_view s) noexcept {
    constexpr std::string_view blanks = " \t\r\n";
    const auto b = s.find_first_not_of(blanks);
    if (b == std::string_view::npos) { return {}; }
    const auto e = s.find_last_not_of(blanks);
    return s.substr(b, e - b + 1);
}

} // namespace elastic

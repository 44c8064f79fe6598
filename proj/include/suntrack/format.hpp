#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace suntrack {

/// Shortest round-trip decimal representation ('.' separator, locale-free).
inline std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, end);
}

inline double parse_double(std::string_view text) {
    double v = 0.0;
    const char *first = text.data();
    const char *last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) throw std::invalid_argument("not a number: " + std::string(text));
    return v;
}

} // namespace suntrack

#ifndef SIGNED_HK_FORMAT_HPP
#define SIGNED_HK_FORMAT_HPP

#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "signed_hk/error.hpp"

namespace signed_hk {

/// 17 significant digits: enough for any double to survive a text round trip.
inline std::string format_double(double v)
{
    char buf[32];
    const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(len));
}

inline double parse_double(std::string_view text)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw Error(ErrorCode::parse_error, "not a number: '" + std::string(text) + "'");
    return v;
}

template <class Int>
Int parse_integer(std::string_view text)
{
    Int v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw Error(ErrorCode::parse_error, "not an integer: '" + std::string(text) + "'");
    return v;
}

inline std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

inline std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

inline std::string join(const std::vector<std::string>& fields, char sep = ',')
{
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out += sep;
        out += fields[i];
    }
    return out;
}

} // namespace signed_hk

#endif // SIGNED_HK_FORMAT_HPP

#pragma once

#include <charconv>
#include <string>

namespace ifslab {

/// Shortest decimal representation that round-trips the double exactly.
inline std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace ifslab

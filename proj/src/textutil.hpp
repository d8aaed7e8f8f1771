#pragma once

#include <charconv>
#include <string>

#include "error.hpp"

namespace aqc {

// Shortest decimal form that round-trips the exact double; keeps serialized
// outputs byte-stable and re-parsable without loss.
inline std::string format_double(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

inline double parse_double(const std::string& text, const std::string& what) {
    double value = 0.0;
    auto [end, ec] =
        std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw Error(ErrorCode::InvalidArgument,
                    "cannot parse " + what + " from '" + text + "'");
    }
    return value;
}

}  // namespace aqc

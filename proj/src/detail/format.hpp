#pragma once

#include <cstdio>
#include <string>

namespace nhd::detail {

// Shortest text that round-trips a double.
inline std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace nhd::detail

#pragma once

#include <cstdio>
#include <string>

namespace enersim {

// Lossless decimal formatting for CSV output (17 significant digits).
inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace enersim

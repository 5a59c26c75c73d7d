#pragma once

// Number formatting shared by the CSV and JSON emitters: 17 significant
// digits, enough to round-trip an IEEE double exactly.

#include <cstdio>
#include <string>

namespace ksmap {

inline std::string format_g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

}  // namespace ksmap

#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace netopt {

/// Fixed formatting for doubles in CSV output ("%.12g"); NaN prints as "nan"
/// so files are byte-stable across runs and platforms.
inline std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace netopt

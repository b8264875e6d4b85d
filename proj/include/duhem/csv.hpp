#pragma once

#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>

namespace duhem::csv {

// Floats are written with 17 significant digits so values round-trip exactly.
inline std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_header(std::ostream& out, std::initializer_list<const char*> columns) {
    bool first = true;
    for (const char* c : columns) {
        if (!first) out << ',';
        out << c;
        first = false;
    }
    out << '\n';
}

inline void write_row(std::ostream& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out << ',';
        out << format(v);
        first = false;
    }
    out << '\n';
}

}  // namespace duhem::csv

#include "incite/csv.hpp"

#include <fmt/format.h>

#include <cmath>

namespace incite::csv {

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string number(double v) {
    if (std::isnan(v)) {
        return "NA";
    }
    if (v == 0.0) {
        return "0";  // folds -0
    }
    return fmt::format("{:.12g}", v);
}

} // namespace incite::csv

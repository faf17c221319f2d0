#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace incite::csv {

/// Quotes a field when it holds a comma, quote or line break.
std::string escape(std::string_view field);

/// Fixed 12 significant digits so artifacts are stable and diffable; NaN -> "NA".
std::string number(double v);

inline std::string cell(std::string_view s) { return escape(s); }
inline std::string cell(const std::string& s) { return escape(s); }
inline std::string cell(const char* s) { return escape(s); }
inline std::string cell(char c) { return std::string(1, c); }
inline std::string cell(bool b) { return b ? "true" : "false"; }
inline std::string cell(double v) { return number(v); }
template <std::integral T>
    requires(!std::same_as<T, bool> && !std::same_as<T, char>)
std::string cell(T v) {
    return std::to_string(v);
}
inline std::string cell(const std::optional<double>& v) { return v ? number(*v) : "NA"; }

template <class First, class... Rest>
void row(std::ostream& out, const First& first, const Rest&... rest) {
    out << cell(first);
    ((out << ',' << cell(rest)), ...);
    out << '\n';
}

} // namespace incite::csv

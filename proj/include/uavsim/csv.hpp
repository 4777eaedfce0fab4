#pragma once

// Minimal comma-separated reading/writing for the small tables this project
// exchanges (height lookup, technology table, sweep output).

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "core.hpp"

namespace uavsim::csv {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split(std::string_view line, char sep = ',') {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    fields.emplace_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

inline double parse_double(std::string_view text, std::string_view what) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw InvalidParameter(std::string(what) + ": not a number: '" + std::string(text) + "'");
  return value;
}

/// Data rows of a table with a header line; blank lines and '#' comments are skipped.
inline std::vector<std::vector<std::string>> read_rows(std::istream& in, std::size_t columns,
                                                       std::string_view what) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header_seen = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    auto fields = split(t);
    if (fields.size() != columns)
      throw InvalidParameter(std::string(what) + " line " + std::to_string(line_no) + ": expected " +
                             std::to_string(columns) + " columns");
    rows.push_back(std::move(fields));
  }
  if (!header_seen) throw InvalidParameter(std::string(what) + ": missing header row");
  return rows;
}

/// Shortest text that round-trips to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace uavsim::csv

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fdts::detail {

// Comma-separated fields with surrounding whitespace and a trailing \r removed.
// Quoted fields are not supported; none of the accepted layouts need them.
inline std::vector<std::string> split_csv(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string_view field = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
    while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
    out.emplace_back(field);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline bool is_blank(std::string_view line) {
  for (char c : line) {
    if (c != ' ' && c != '\t' && c != '\r') return false;
  }
  return true;
}

// Strict decimal parse: the whole field must be consumed.
bool parse_number(const std::string& field, double& out);

std::string lower(std::string_view s);

}  // namespace fdts::detail

#pragma once

#include <string>

namespace fdts {

/// Shortest text that parses back to exactly `value`.
std::string format_double(double value);

/// Fixed precision, trailing zeros kept.
std::string format_fixed(double value, int digits);

}  // namespace fdts

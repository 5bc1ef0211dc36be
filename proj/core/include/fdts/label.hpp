#pragma once

#include <span>
#include <vector>

namespace fdts {

/// Binary class label; +1 is the positive class.
enum class Label : int { Negative = -1, Positive = 1 };

inline constexpr int to_int(Label l) noexcept { return static_cast<int>(l); }
inline constexpr bool is_valid(Label l) noexcept {
  return l == Label::Negative || l == Label::Positive;
}

}  // namespace fdts

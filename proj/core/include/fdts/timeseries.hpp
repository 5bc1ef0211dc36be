#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fdts {

/// Daily-granularity calendar date.
using Date = std::chrono::sys_days;

/// Parses an ISO-8601 `YYYY-MM-DD` date; throws Error(Input) on malformed text.
Date parse_date(std::string_view text);
std::string format_date(Date date);

/// First date used when a series is built from bare values.
inline constexpr Date kDefaultEpoch = std::chrono::sys_days{std::chrono::year{2000} / 1 / 1};

/// Ordered (timestamp, value) pairs. Timestamps are strictly increasing and
/// every value is finite; both are checked on construction.
class TimeSeries {
 public:
  TimeSeries() = default;
  TimeSeries(std::vector<Date> timestamps, std::vector<double> values, std::string name = {});

  /// Consecutive daily timestamps starting at `start`.
  static TimeSeries from_values(std::vector<double> values, std::string name = {},
                                Date start = kDefaultEpoch);

  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  std::span<const double> values() const noexcept { return values_; }
  std::span<const Date> timestamps() const noexcept { return timestamps_; }
  const std::string& name() const noexcept { return name_; }

  double operator[](std::size_t i) const { return values_[i]; }
  Date date(std::size_t i) const { return timestamps_[i]; }

  /// Points [first, first + count).
  TimeSeries slice(std::size_t first, std::size_t count) const;
  TimeSeries renamed(std::string name) const;

  friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

 private:
  std::vector<Date> timestamps_;
  std::vector<double> values_;
  std::string name_;
};

}  // namespace fdts

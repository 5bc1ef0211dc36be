#include "fdts/timeseries.hpp"

#include <cmath>
#include <cstdio>

#include "fdts/error.hpp"

namespace fdts {

namespace {

bool parse_fixed_digits(std::string_view text, int& out) {
  int value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

}  // namespace

Date parse_date(std::string_view text) {
  using namespace std::chrono;
  int y = 0, m = 0, d = 0;
  const bool shaped = text.size() == 10 && text[4] == '-' && text[7] == '-';
  if (!shaped || !parse_fixed_digits(text.substr(0, 4), y) ||
      !parse_fixed_digits(text.substr(5, 2), m) || !parse_fixed_digits(text.substr(8, 2), d)) {
    throw Error(ErrorKind::Input, "unparseable date '" + std::string(text) + "'");
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) {
    throw Error(ErrorKind::Input, "invalid calendar date '" + std::string(text) + "'");
  }
  return sys_days{ymd};
}

std::string format_date(Date date) {
  using namespace std::chrono;
  const year_month_day ymd{date};
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

TimeSeries::TimeSeries(std::vector<Date> timestamps, std::vector<double> values, std::string name)
    : timestamps_(std::move(timestamps)), values_(std::move(values)), name_(std::move(name)) {
  if (timestamps_.size() != values_.size()) {
    throw Error(ErrorKind::Shape, "timestamps and values differ in length");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorKind::Input, "non-finite value at " + format_date(timestamps_[i]));
    }
    if (i > 0 && timestamps_[i] <= timestamps_[i - 1]) {
      throw Error(ErrorKind::Input,
                  "timestamps not strictly increasing at " + format_date(timestamps_[i]));
    }
  }
}

TimeSeries TimeSeries::from_values(std::vector<double> values, std::string name, Date start) {
  std::vector<Date> dates(values.size());
  for (std::size_t i = 0; i < dates.size(); ++i) {
    dates[i] = start + std::chrono::days{static_cast<long>(i)};
  }
  return TimeSeries(std::move(dates), std::move(values), std::move(name));
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
  if (first > size() || count > size() - first) {
    throw Error(ErrorKind::OutOfRange, "slice beyond end of series");
  }
  TimeSeries out;
  out.timestamps_.assign(timestamps_.begin() + static_cast<std::ptrdiff_t>(first),
                         timestamps_.begin() + static_cast<std::ptrdiff_t>(first + count));
  out.values_.assign(values_.begin() + static_cast<std::ptrdiff_t>(first),
                     values_.begin() + static_cast<std::ptrdiff_t>(first + count));
  out.name_ = name_;
  return out;
}

TimeSeries TimeSeries::renamed(std::string name) const {
  TimeSeries out = *this;
  out.name_ = std::move(name);
  return out;
}

}  // namespace fdts

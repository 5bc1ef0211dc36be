#include "fdts/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "csv.hpp"
#include "fdts/error.hpp"
#include "fdts/format.hpp"

namespace fdts {

namespace detail {

bool parse_number(const std::string& field, double& out) {
  if (field.empty()) return false;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  if (*first == '+') ++first;
  const auto result = std::from_chars(first, last, out);
  return result.ec == std::errc{} && result.ptr == last && std::isfinite(out);
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace detail

namespace {

using detail::is_blank;
using detail::lower;
using detail::parse_number;
using detail::split_csv;

const std::vector<std::string> kOhlcvHeader{"Date", "Open", "High", "Low", "Close", "Adj Close",
                                            "Volume"};

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  return in;
}

[[noreturn]] void throw_ingestion(const std::string& source, const std::vector<std::string>& problems) {
  std::string message = source + ": " + std::to_string(problems.size()) + " invalid line(s)";
  const std::size_t shown = std::min<std::size_t>(problems.size(), 50);
  for (std::size_t i = 0; i < shown; ++i) message += "\n  " + problems[i];
  if (shown < problems.size()) message += "\n  ...";
  throw Error(ErrorKind::Ingestion, message);
}

std::string line_tag(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::vector<std::string> read_header(std::istream& in, const std::string& source) {
  std::string line;
  while (std::getline(in, line)) {
    if (!is_blank(line)) return split_csv(line);
  }
  throw Error(ErrorKind::Ingestion, source + ": file is empty");
}

std::optional<std::size_t> find_column(const std::vector<std::string>& header,
                                       const std::string& name) {
  const std::string wanted = lower(name);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (lower(header[i]) == wanted) return i;
  }
  return std::nullopt;
}

void append_feature_row(LabeledDataset& data, std::span<const double> values, Label label,
                        Date date) {
  data.X.append_row(values);
  data.y.push_back(label);
  data.dates.push_back(date);
}

LabeledDataset assemble(const OhlcvFrame& frame, const SentimentFrame* sentiment,
                        const DatasetOptions& options) {
  if (!(options.split_fraction > 0.0 && options.split_fraction < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "split fraction must lie in (0, 1)");
  }
  if (!std::isfinite(options.d) || options.d < 0.0 || options.d > 2.0) {
    throw Error(ErrorKind::InvalidParameter, "dataset d must lie in [0, 2]");
  }
  const std::size_t n = frame.size();
  if (n < 2) throw Error(ErrorKind::InsufficientData, "dataset needs at least two rows");

  const TimeSeries close = frame.column("Close");
  const TimeSeries fd = options.mode == FdMode::Fixed
                            ? fracdiff_fixed(close, options.d, options.tau)
                            : fracdiff_expanding(close, options.d, 1.0);
  const std::size_t fd_offset = n - fd.size();
  const TimeSeries change = daily_price_change(frame);
  const std::vector<Label> target = volume_direction_target(frame);

  // Same mean as aggregate_sentiment, grouped in one pass.
  std::map<Date, double> daily_sentiment;
  if (sentiment) {
    std::map<Date, std::pair<double, std::size_t>> sums;
    for (const SentimentRow& row : sentiment->rows) {
      auto& [sum, count] = sums[row.date];
      sum += row.score;
      ++count;
    }
    for (const auto& [date, acc] : sums) {
      daily_sentiment[date] = acc.first / static_cast<double>(acc.second);
    }
  }

  LabeledDataset data;
  data.feature_names = {"fd_close", "daily_price_change", "volume_direction"};
  if (sentiment) data.feature_names.push_back("sentiment");
  data.X = FeatureMatrix(0, data.feature_names.size());

  std::vector<double> features(data.feature_names.size());
  // Volume direction needs day t-1; the target needs day t+1.
  for (std::size_t t = std::max<std::size_t>(1, fd_offset); t + 1 < n; ++t) {
    features[0] = fd[t - fd_offset];
    features[1] = change[t];
    features[2] = frame.rows[t].volume > frame.rows[t - 1].volume ? 1.0 : -1.0;
    if (sentiment) {
      const auto it = daily_sentiment.find(frame.rows[t].date);
      if (it == daily_sentiment.end()) continue;
      features[3] = it->second;
    }
    append_feature_row(data, features, target[t], frame.rows[t].date);
  }

  if (data.rows() == 0) {
    throw Error(ErrorKind::InsufficientData, "no day has every feature and a target");
  }
  data.split_index = static_cast<std::size_t>(
      std::floor(static_cast<double>(data.rows()) * options.split_fraction));
  if (data.split_index == 0 || data.split_index >= data.rows()) {
    throw Error(ErrorKind::InsufficientData,
                "split of " + std::to_string(data.rows()) + " rows leaves an empty partition");
  }
  return data;
}

}  // namespace

TimeSeries OhlcvFrame::column(const std::string& name) const {
  const std::string key = lower(name);
  double OhlcvRow::*member = nullptr;
  if (key == "open") member = &OhlcvRow::open;
  else if (key == "high") member = &OhlcvRow::high;
  else if (key == "low") member = &OhlcvRow::low;
  else if (key == "close") member = &OhlcvRow::close;
  else if (key == "adj close" || key == "adj_close") member = &OhlcvRow::adj_close;
  else if (key == "volume") member = &OhlcvRow::volume;
  else throw Error(ErrorKind::InvalidParameter, "unknown OHLCV column '" + name + "'");

  std::vector<Date> dates(rows.size());
  std::vector<double> values(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    dates[i] = rows[i].date;
    values[i] = rows[i].*member;
  }
  return TimeSeries(std::move(dates), std::move(values), name);
}

OhlcvFrame parse_ohlcv(std::istream& in, const std::string& source) {
  const std::vector<std::string> header = read_header(in, source);
  std::vector<std::size_t> index(kOhlcvHeader.size());
  std::vector<std::string> missing;
  for (std::size_t c = 0; c < kOhlcvHeader.size(); ++c) {
    const auto found = find_column(header, kOhlcvHeader[c]);
    if (!found) missing.push_back(kOhlcvHeader[c]);
    else index[c] = *found;
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw Error(ErrorKind::Ingestion, source + ": missing column(s): " + list);
  }

  OhlcvFrame frame;
  std::vector<std::string> problems;
  std::string line;
  std::size_t line_no = 1;
  std::optional<Date> previous;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size()) {
      problems.push_back(line_tag(line_no) + "expected " + std::to_string(header.size()) +
                         " fields, got " + std::to_string(fields.size()));
      continue;
    }
    OhlcvRow row;
    try {
      row.date = parse_date(fields[index[0]]);
    } catch (const Error&) {
      problems.push_back(line_tag(line_no) + "unparseable date '" + fields[index[0]] + "'");
      continue;
    }
    double* targets[] = {&row.open, &row.high, &row.low, &row.close, &row.adj_close, &row.volume};
    bool numeric = true;
    for (std::size_t c = 1; c < kOhlcvHeader.size(); ++c) {
      if (!parse_number(fields[index[c]], *targets[c - 1])) {
        problems.push_back(line_tag(line_no) + "non-numeric " + kOhlcvHeader[c] + " '" +
                           fields[index[c]] + "'");
        numeric = false;
        break;
      }
    }
    if (!numeric) continue;

    std::vector<std::string> issues;
    if (!(row.open > 0.0 && row.high > 0.0 && row.low > 0.0 && row.close > 0.0 &&
          row.adj_close > 0.0)) {
      issues.push_back("non-positive price");
    }
    if (row.volume < 0.0) issues.push_back("negative volume");
    if (row.high < row.low) issues.push_back("high < low");
    if (row.open < row.low || row.open > row.high) issues.push_back("open outside [low, high]");
    if (row.close < row.low || row.close > row.high) issues.push_back("close outside [low, high]");
    if (previous && row.date <= *previous) issues.push_back("date not after previous row");
    previous = row.date;
    if (!issues.empty()) {
      std::string joined;
      for (const auto& s : issues) joined += (joined.empty() ? "" : "; ") + s;
      problems.push_back(line_tag(line_no) + joined);
      continue;
    }
    frame.rows.push_back(row);
  }
  if (!problems.empty()) throw_ingestion(source, problems);
  if (frame.rows.empty()) throw Error(ErrorKind::Ingestion, source + ": no data rows");
  return frame;
}

OhlcvFrame load_ohlcv(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return parse_ohlcv(in, path.string());
}

namespace {

std::string format_volume(double v) {
  return v == std::floor(v) && std::abs(v) < 1e15 ? format_fixed(v, 0) : format_double(v);
}

}  // namespace

void write_ohlcv(const OhlcvFrame& frame, std::ostream& out) {
  out << "Date,Open,High,Low,Close,Adj Close,Volume\n";
  for (const OhlcvRow& r : frame.rows) {
    out << format_date(r.date) << ',' << format_double(r.open) << ',' << format_double(r.high)
        << ',' << format_double(r.low) << ',' << format_double(r.close) << ','
        << format_double(r.adj_close) << ',' << format_volume(r.volume) << '\n';
  }
}

SentimentFrame parse_sentiment(std::istream& in, const std::string& source) {
  const std::vector<std::string> header = read_header(in, source);
  const auto date_col = find_column(header, "Date");
  const auto company_col = find_column(header, "Company");
  const auto score_col = find_column(header, "Score");
  const auto pos_col = find_column(header, "Positive");
  const auto neg_col = find_column(header, "Negative");
  const auto neu_col = find_column(header, "Neutral");
  const bool three_column = pos_col && neg_col && neu_col;
  if (!date_col || !company_col || (!score_col && !three_column)) {
    throw Error(ErrorKind::Ingestion,
                source + ": expected Date,Company,Score or Date,Company,Positive,Negative,Neutral");
  }

  SentimentFrame frame;
  std::vector<std::string> problems;
  std::string line;
  std::size_t line_no = 1;
  std::optional<Date> previous;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size()) {
      problems.push_back(line_tag(line_no) + "expected " + std::to_string(header.size()) +
                         " fields, got " + std::to_string(fields.size()));
      continue;
    }
    SentimentRow row;
    try {
      row.date = parse_date(fields[*date_col]);
    } catch (const Error&) {
      problems.push_back(line_tag(line_no) + "unparseable date '" + fields[*date_col] + "'");
      continue;
    }
    if (previous && row.date < *previous) {
      problems.push_back(line_tag(line_no) + "dates not ascending");
      continue;
    }
    previous = row.date;
    row.company = fields[*company_col];
    if (three_column) {
      double p = 0, n = 0, u = 0;
      if (!parse_number(fields[*pos_col], p) || !parse_number(fields[*neg_col], n) ||
          !parse_number(fields[*neu_col], u)) {
        problems.push_back(line_tag(line_no) + "non-numeric sentiment score");
        continue;
      }
      row.positive = p;
      row.negative = n;
      row.neutral = u;
      row.score = p - n;
    } else if (!parse_number(fields[*score_col], row.score)) {
      problems.push_back(line_tag(line_no) + "non-numeric sentiment score");
      continue;
    }
    frame.rows.push_back(std::move(row));
  }
  if (!problems.empty()) throw_ingestion(source, problems);
  return frame;
}

SentimentFrame load_sentiment(const std::filesystem::path& path) {
  std::ifstream in = open_input(path);
  return parse_sentiment(in, path.string());
}

TimeSeries load_series(const std::filesystem::path& path, const std::string& column) {
  std::ifstream in = open_input(path);
  const std::string source = path.string();
  std::string first;
  while (std::getline(in, first) && is_blank(first)) {
  }
  const std::vector<std::string> header = split_csv(first);

  double probe = 0.0;
  if (header.size() == 1 && parse_number(header[0], probe)) {
    // Headerless single column of numbers.
    std::vector<double> values{probe};
    std::string line;
    std::size_t line_no = 1;
    std::vector<std::string> problems;
    while (std::getline(in, line)) {
      ++line_no;
      if (is_blank(line)) continue;
      double v = 0.0;
      if (!parse_number(split_csv(line)[0], v)) problems.push_back(line_tag(line_no) + "non-numeric value");
      else values.push_back(v);
    }
    if (!problems.empty()) throw_ingestion(source, problems);
    return TimeSeries::from_values(std::move(values), path.stem().string());
  }

  in.clear();
  in.seekg(0);
  if (find_column(header, "Open") && find_column(header, "Volume")) {
    return load_ohlcv(path).column(column);
  }

  const auto date_col = find_column(header, "Date");
  std::optional<std::size_t> value_col = find_column(header, column);
  if (!value_col) {
    if (header.size() == 2 && date_col) value_col = 1 - *date_col;
    else if (header.size() == 1) value_col = 0;
  }
  if (!value_col) {
    throw Error(ErrorKind::Ingestion, source + ": no column named '" + column + "'");
  }

  std::string line;
  std::getline(in, line);  // header
  std::size_t line_no = 1;
  std::vector<Date> dates;
  std::vector<double> values;
  std::vector<std::string> problems;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const std::vector<std::string> fields = split_csv(line);
    if (fields.size() != header.size()) {
      problems.push_back(line_tag(line_no) + "wrong field count");
      continue;
    }
    double v = 0.0;
    if (!parse_number(fields[*value_col], v)) {
      problems.push_back(line_tag(line_no) + "non-numeric value '" + fields[*value_col] + "'");
      continue;
    }
    if (date_col) {
      try {
        const Date d = parse_date(fields[*date_col]);
        if (!dates.empty() && d <= dates.back()) {
          problems.push_back(line_tag(line_no) + "date not after previous row");
          continue;
        }
        dates.push_back(d);
      } catch (const Error&) {
        problems.push_back(line_tag(line_no) + "unparseable date '" + fields[*date_col] + "'");
        continue;
      }
    }
    values.push_back(v);
  }
  if (!problems.empty()) throw_ingestion(source, problems);
  if (values.empty()) throw Error(ErrorKind::Ingestion, source + ": no data rows");
  if (!date_col) return TimeSeries::from_values(std::move(values), header[*value_col]);
  return TimeSeries(std::move(dates), std::move(values), header[*value_col]);
}

void write_series(const TimeSeries& series, std::ostream& out) {
  out << "Date,Value\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << format_date(series.date(i)) << ',' << format_double(series[i]) << '\n';
  }
}

double aggregate_sentiment(const SentimentFrame& frame, Date date) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const SentimentRow& row : frame.rows) {
    if (row.date == date) {
      sum += row.score;
      ++count;
    }
  }
  if (count == 0) {
    throw Error(ErrorKind::MissingData, "no sentiment scores on " + format_date(date));
  }
  return sum / static_cast<double>(count);
}

TimeSeries daily_price_change(const OhlcvFrame& frame) {
  std::vector<Date> dates(frame.size());
  std::vector<double> values(frame.size());
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const OhlcvRow& r = frame.rows[i];
    if (r.open == 0.0) {
      throw Error(ErrorKind::Domain, "zero open price on " + format_date(r.date));
    }
    dates[i] = r.date;
    values[i] = (r.close - r.open) / r.open;
  }
  return TimeSeries(std::move(dates), std::move(values), "daily_price_change");
}

std::vector<Label> volume_direction_target(const OhlcvFrame& frame) {
  if (frame.size() < 2) {
    throw Error(ErrorKind::InsufficientData, "volume direction needs at least two rows");
  }
  std::vector<Label> out(frame.size() - 1);
  for (std::size_t t = 0; t + 1 < frame.size(); ++t) {
    out[t] = frame.rows[t + 1].volume - frame.rows[t].volume > 0.0 ? Label::Positive
                                                                    : Label::Negative;
  }
  return out;
}

std::vector<Label> LabeledDataset::train_y() const {
  return {y.begin(), y.begin() + static_cast<std::ptrdiff_t>(split_index)};
}

std::vector<Label> LabeledDataset::test_y() const {
  return {y.begin() + static_cast<std::ptrdiff_t>(split_index), y.end()};
}

LabeledDataset build_dataset(const OhlcvFrame& frame, const DatasetOptions& options) {
  return assemble(frame, nullptr, options);
}

LabeledDataset build_dataset(const OhlcvFrame& frame, const SentimentFrame& sentiment,
                             const DatasetOptions& options) {
  return assemble(frame, &sentiment, options);
}

void write_dataset_csv(const LabeledDataset& data, std::ostream& out) {
  out << "Date";
  for (const auto& name : data.feature_names) out << ',' << name;
  out << ",Label\n";
  for (std::size_t r = 0; r < data.rows(); ++r) {
    out << format_date(data.dates[r]);
    for (double v : data.X.row(r)) out << ',' << format_double(v);
    out << ',' << to_int(data.y[r]) << '\n';
  }
}

}  // namespace fdts

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fdts/fracdiff.hpp"
#include "fdts/label.hpp"
#include "fdts/matrix.hpp"
#include "fdts/timeseries.hpp"

namespace fdts {

struct OhlcvRow {
  Date date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
  double adj_close = 0.0;
  double volume = 0.0;
};

/// Daily bars with strictly increasing dates, positive prices and
/// low <= open, close <= high on every row.
struct OhlcvFrame {
  std::vector<OhlcvRow> rows;

  std::size_t size() const noexcept { return rows.size(); }
  /// One of Open, High, Low, Close, Adj Close, Volume (case-insensitive).
  TimeSeries column(const std::string& name) const;
};

struct SentimentRow {
  Date date;
  std::string company;
  /// Composite score; Positive - Negative for the three-column layout.
  double score = 0.0;
  std::optional<double> positive;
  std::optional<double> negative;
  std::optional<double> neutral;
};

struct SentimentFrame {
  std::vector<SentimentRow> rows;
};

/// Header `Date,Open,High,Low,Close,Adj Close,Volume`. Every invalid line is
/// collected and reported in one Ingestion error.
OhlcvFrame parse_ohlcv(std::istream& in, const std::string& source = "<stream>");
OhlcvFrame load_ohlcv(const std::filesystem::path& path);
void write_ohlcv(const OhlcvFrame& frame, std::ostream& out);

/// Header `Date,Company,Positive,Negative,Neutral` or `Date,Company,Score`.
SentimentFrame parse_sentiment(std::istream& in, const std::string& source = "<stream>");
SentimentFrame load_sentiment(const std::filesystem::path& path);

/// Reads one numeric column as a series. OHLCV files use `column`
/// (default Close); `Date,Value` files use their second column; a headerless
/// single column gets consecutive synthetic dates.
TimeSeries load_series(const std::filesystem::path& path, const std::string& column = "Close");
void write_series(const TimeSeries& series, std::ostream& out);

/// Mean score over the companies reporting on `date`. Throws MissingData if none do.
double aggregate_sentiment(const SentimentFrame& frame, Date date);

/// (Close - Open) / Open per row.
TimeSeries daily_price_change(const OhlcvFrame& frame);

/// label_t = +1 if volume_{t+1} > volume_t else -1, for t = 0..n-2.
std::vector<Label> volume_direction_target(const OhlcvFrame& frame);

enum class FdMode { Fixed, Expanding };

struct DatasetOptions {
  double d = 0.3;
  double tau = kDefaultTau;
  double split_fraction = 0.8;
  FdMode mode = FdMode::Fixed;
};

/// Features per day, target = next-day volume direction, chronological split.
struct LabeledDataset {
  std::vector<std::string> feature_names;
  FeatureMatrix X;
  std::vector<Label> y;
  std::vector<Date> dates;
  std::size_t split_index = 0;

  std::size_t rows() const noexcept { return y.size(); }
  FeatureMatrix train_X() const { return X.row_block(0, split_index); }
  FeatureMatrix test_X() const { return X.row_block(split_index, rows() - split_index); }
  std::vector<Label> train_y() const;
  std::vector<Label> test_y() const;
};

/// Features: fd_close, daily_price_change, volume_direction (sign of today's
/// volume change) and, when supplied, sentiment. Days missing any feature or
/// the target are dropped; the first floor(rows * split_fraction) rows train.
LabeledDataset build_dataset(const OhlcvFrame& frame, const DatasetOptions& options);
LabeledDataset build_dataset(const OhlcvFrame& frame, const SentimentFrame& sentiment,
                             const DatasetOptions& options);

/// `Date,<feature columns>,Label`
void write_dataset_csv(const LabeledDataset& data, std::ostream& out);

}  // namespace fdts

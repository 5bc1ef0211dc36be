#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdts/error.hpp"
#include "fdts/fracdiff.hpp"
#include "fdts/stattests.hpp"
#include "fdts/timeseries.hpp"

namespace fdts {

/// One differencing order evaluated against the original series.
struct DScanRow {
  double d = 0.0;
  double adf_stat = 0.0;
  double adf_p = 1.0;
  /// Pearson correlation of the differenced series with the original over
  /// the indices where both are defined.
  double correlation = 0.0;
  std::size_t n_retained = 0;
  /// Empty on success; otherwise the error that stopped this row.
  std::string failure;

  bool ok() const noexcept { return failure.empty(); }
};

struct ScanOptions {
  double tau = kDefaultTau;
  /// Difference (and correlate against) log values instead of raw values.
  bool use_log = true;
  AdfLags adf_lags = std::nullopt;
};

/// 0.0, 0.1, ..., 1.0
std::vector<double> default_d_grid();

/// Evaluates each d in the grid: fixed-window differencing with weights
/// thresholded at tau, then the ADF test and the correlation against the
/// (optionally logged) input over the retained indices.
/// Rows come back sorted by d; a failing row is marked, never fatal.
std::vector<DScanRow> scan_d(const TimeSeries& x, std::span<const double> d_grid,
                             const ScanOptions& options = {});

/// Thrown by select_optimal_d when no row passes; carries the row with the
/// smallest p-value for diagnostics.
class NoStationaryDError : public Error {
 public:
  NoStationaryDError(DScanRow best, double alpha);
  const DScanRow& best_row() const noexcept { return best_; }

 private:
  DScanRow best_;
};

/// Smallest d whose ADF p-value is below alpha.
double select_optimal_d(std::span<const DScanRow> rows, double alpha = 0.05);

/// ADF statistics over a (threshold, d) grid. Cells that could not be
/// evaluated hold std::nullopt.
struct HeatmapGrid {
  std::vector<double> thresholds;
  std::vector<double> d_values;
  std::vector<std::vector<std::optional<double>>> adf_stats;  // [threshold][d]
};

/// 1e-3, 9e-4, 7e-4, 5e-4, 3e-4, 1e-4, 9e-5, 7e-5, 5e-5, 3e-5
std::vector<double> default_heatmap_thresholds();
/// 0.8, 0.75, ..., 0.2
std::vector<double> default_heatmap_d_values();

HeatmapGrid heatmap(const TimeSeries& x, std::span<const double> thresholds,
                    std::span<const double> d_values, const ScanOptions& options = {});

}  // namespace fdts

#include "fdts/dsearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fdts/parallel.hpp"

namespace fdts {

namespace {

void validate_grid(std::span<const double> grid, const char* what) {
  if (grid.empty()) throw Error(ErrorKind::InvalidParameter, std::string(what) + " grid is empty");
}

void validate_d(double d) {
  if (!std::isfinite(d) || d < 0.0 || d > 2.0) {
    throw Error(ErrorKind::InvalidParameter,
                "grid value d = " + std::to_string(d) + " outside [0, 2]");
  }
}

DScanRow evaluate(const TimeSeries& prepared, double d, double tau, AdfLags lags) {
  DScanRow row;
  row.d = d;
  try {
    const FdWeights w = fd_weights_threshold(d, tau);
    const TimeSeries y = fracdiff_fixed(prepared, w);
    row.n_retained = y.size();
    const StatTestResult adf = adf_test(y, lags);
    row.adf_stat = adf.statistic;
    row.adf_p = adf.p_value;
    // The transform drops the first w.size() - 1 points.
    const auto original = prepared.values().subspan(prepared.size() - y.size());
    row.correlation = pearson_correlation(y.values(), original);
  } catch (const Error& e) {
    row.failure = e.what();
  }
  return row;
}

}  // namespace

std::vector<double> default_d_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 10; ++i) grid.push_back(i / 10.0);
  return grid;
}

std::vector<DScanRow> scan_d(const TimeSeries& x, std::span<const double> d_grid,
                             const ScanOptions& options) {
  validate_grid(d_grid, "d");
  for (double d : d_grid) validate_d(d);
  if (x.empty()) throw Error(ErrorKind::EmptyInput, "cannot scan an empty series");
  if (!(options.tau > 0.0)) throw Error(ErrorKind::InvalidParameter, "tau must be positive");

  const TimeSeries prepared = options.use_log ? log_values(x) : x;
  std::vector<double> grid(d_grid.begin(), d_grid.end());
  std::sort(grid.begin(), grid.end());

  std::vector<DScanRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    rows[i] = evaluate(prepared, grid[i], options.tau, options.adf_lags);
  });
  return rows;
}

NoStationaryDError::NoStationaryDError(DScanRow best, double alpha)
    : Error(ErrorKind::NoStationaryD,
            "no differencing order reaches ADF p < " + std::to_string(alpha) +
                (best.ok() ? "; best d = " + std::to_string(best.d) +
                                 " with p = " + std::to_string(best.adf_p)
                           : std::string("; every row failed"))),
      best_(std::move(best)) {}

double select_optimal_d(std::span<const DScanRow> rows, double alpha) {
  if (rows.empty()) throw Error(ErrorKind::InvalidParameter, "no scan rows to select from");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "alpha must lie in (0, 1)");
  }
  for (const DScanRow& row : rows) {
    if (row.ok() && row.adf_p < alpha) return row.d;
  }
  const DScanRow* best = &rows.front();
  for (const DScanRow& row : rows) {
    if (row.ok() && (!best->ok() || row.adf_p < best->adf_p)) best = &row;
  }
  throw NoStationaryDError(*best, alpha);
}

std::vector<double> default_heatmap_thresholds() {
  return {1e-3, 9e-4, 7e-4, 5e-4, 3e-4, 1e-4, 9e-5, 7e-5, 5e-5, 3e-5};
}

std::vector<double> default_heatmap_d_values() {
  std::vector<double> out;
  for (int i = 16; i >= 4; --i) out.push_back(i / 20.0);
  return out;
}

HeatmapGrid heatmap(const TimeSeries& x, std::span<const double> thresholds,
                    std::span<const double> d_values, const ScanOptions& options) {
  validate_grid(thresholds, "threshold");
  validate_grid(d_values, "d");
  for (double d : d_values) validate_d(d);
  for (double tau : thresholds) {
    if (!(tau > 0.0)) throw Error(ErrorKind::InvalidParameter, "thresholds must be positive");
  }
  if (x.empty()) throw Error(ErrorKind::EmptyInput, "cannot scan an empty series");

  const TimeSeries prepared = options.use_log ? log_values(x) : x;
  HeatmapGrid grid;
  grid.thresholds.assign(thresholds.begin(), thresholds.end());
  grid.d_values.assign(d_values.begin(), d_values.end());
  grid.adf_stats.assign(thresholds.size(), std::vector<std::optional<double>>(d_values.size()));

  const std::size_t cols = d_values.size();
  parallel_for(thresholds.size() * cols, [&](std::size_t cell) {
    const std::size_t i = cell / cols;
    const std::size_t j = cell % cols;
    const DScanRow row = evaluate(prepared, d_values[j], thresholds[i], options.adf_lags);
    if (row.ok()) grid.adf_stats[i][j] = row.adf_stat;
  });
  return grid;
}

}  // namespace fdts

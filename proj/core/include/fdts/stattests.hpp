#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fdts/timeseries.hpp"

namespace fdts {

enum class TestKind { Adf, Kpss };

const char* to_string(TestKind kind) noexcept;

struct StatTestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  /// Keyed by level label: "1%", "5%", "10%".
  std::map<std::string, double> critical_values;
  std::size_t lags_used = 0;
  std::size_t nobs = 0;
  TestKind test_kind = TestKind::Adf;
};

struct AcfResult {
  std::vector<std::size_t> lags;
  std::vector<double> r;
  /// Half-width of the 95% band for white noise, 1.96 / sqrt(T).
  double confidence_band = 0.0;
};

/// r_t = ln(x_t / x_{t-1}); output carries the later timestamp of each pair.
TimeSeries log_returns(const TimeSeries& x);

/// Natural log of every value; throws Domain naming the first non-positive point.
TimeSeries log_values(const TimeSeries& x);

/// Sample autocorrelation for lags 0..max_lag with the full-sample mean and
/// the biased T * s^2 denominator.
AcfResult acf(const TimeSeries& x, std::size_t max_lag);

/// ADF lag selection: a fixed augmentation order, or AIC over
/// 0..floor(12 (T/100)^{1/4}) when empty.
using AdfLags = std::optional<std::size_t>;

/// Constant-only augmented Dickey-Fuller test:
///   dx_t = a + g x_{t-1} + sum_{i=1}^{p} phi_i dx_{t-i} + e_t,
/// statistic = t-ratio of g, p-value from MacKinnon's response surface.
StatTestResult adf_test(const TimeSeries& x, AdfLags lags = std::nullopt);
StatTestResult adf_test(std::span<const double> x, AdfLags lags = std::nullopt);

/// MacKinnon p-value for a constant-only ADF statistic.
double adf_pvalue(double statistic);

/// Finite-sample critical values (1%, 5%, 10%); nobs = 0 gives the asymptotic values.
std::map<std::string, double> adf_critical_values(std::size_t nobs = 0);

/// KPSS level-stationarity test with a Bartlett-kernel long-run variance and
/// bandwidth floor(4 (T/100)^{1/4}).
StatTestResult kpss_test(const TimeSeries& x);
StatTestResult kpss_test(std::span<const double> x);

std::map<std::string, double> kpss_critical_values();

/// Lagged-dispersion Hurst estimate: slope of log sd(x_{t+tau} - x_t) against
/// log tau for tau = 2..max_lag.
double hurst_exponent(const TimeSeries& x, std::size_t max_lag);
double hurst_exponent(std::span<const double> x, std::size_t max_lag);

/// Pearson correlation of two equal-length samples.
double pearson_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace fdts

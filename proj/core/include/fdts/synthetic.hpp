#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fdts/dataset.hpp"
#include "fdts/timeseries.hpp"

namespace fdts {

/// Seeded generators for fixtures, benchmarks and Monte-Carlo checks. All
/// output is a pure function of the arguments.

/// i.i.d. N(0, sigma^2) draws.
std::vector<double> gaussian_noise(std::uint64_t seed, std::size_t n, double sigma = 1.0);
TimeSeries white_noise(std::uint64_t seed, std::size_t n, double sigma = 1.0);
/// Cumulative sum of white noise started at `start`.
TimeSeries random_walk(std::uint64_t seed, std::size_t n, double sigma = 1.0, double start = 0.0);
/// ARFIMA(0, d, 0) path: white noise passed through (1 - B)^(-d). |d| < 1.
TimeSeries arfima(std::uint64_t seed, std::size_t n, double d, double sigma = 1.0);
/// Cumulative sum of an ARFIMA(0, d, 0) path: a unit-root series with
/// long-memory increments.
TimeSeries cumulated_arfima(std::uint64_t seed, std::size_t n, double d, double sigma = 1.0);

struct SyntheticOhlcvOptions {
  std::size_t n = 1500;
  /// Order of the fixed-window transform the next-day volume direction keys on.
  double label_d = 0.3;
  double tau = kDefaultTau;
  /// Innovation scale of the long-memory log close.
  double volatility = 0.02;
  /// Label noise as a multiple of the feature's standard deviation.
  double label_noise = 0.5;
};

/// Daily bars whose log close is ARFIMA(0, label_d, 0) and whose next-day
/// volume direction is a noisy threshold of the FD(label_d) close: volume
/// rises after day t iff fd_t + noise exceeds the median of fd. Dates are
/// consecutive days from kDefaultEpoch.
OhlcvFrame synthetic_ohlcv(std::uint64_t seed, const SyntheticOhlcvOptions& options = {});

}  // namespace fdts

#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "fdts/timeseries.hpp"

namespace fdts {

/// Default magnitude threshold below which trailing weights are discarded.
inline constexpr double kDefaultTau = 1e-4;

/// Cap on weight-sequence length when generating by magnitude threshold.
inline constexpr std::size_t kMaxWindow = std::size_t{1} << 22;

/// How an infinite weight sequence was cut to finite length.
struct ByLength {
  std::size_t length;
};
struct ByMagnitude {
  double tau;
};
struct ByWeightLoss {
  double lambda_star;
};
using Truncation = std::variant<ByLength, ByMagnitude, ByWeightLoss>;

/// Coefficients of the binomial expansion of (1 - B)^d:
///   (1 - B)^d = sum_j omega_j B^j,  omega_0 = 1.
///
/// For d in (0, 1) every coefficient after the first lies in (-1, 0); for
/// d > 0 the partial sums shrink toward zero because (1 - 1)^d = 0.
struct FdWeights {
  double d = 0.0;
  std::vector<double> weights;
  Truncation truncation = ByLength{0};

  std::size_t size() const noexcept { return weights.size(); }
  double operator[](std::size_t j) const { return weights[j]; }
};

/// omega_0 .. omega_{max_len-1} via omega_j = omega_{j-1} * (j - d - 1) / j.
/// Throws InvalidParameter for non-finite d or max_len == 0.
FdWeights fd_weights(double d, std::size_t max_len);

/// Same coefficients evaluated as Gamma(j-d) / (Gamma(j+1) Gamma(-d)) in log
/// space with explicit sign tracking. Only meaningful as a cross-check of
/// fd_weights; throws Pole when d is a non-negative integer.
FdWeights fd_weights_gamma(double d, std::size_t max_len);

/// Runs the recursion until the first coefficient past the oscillating head
/// (j > d + 1) whose magnitude drops below tau, then keeps only the weights
/// with |omega| >= tau. The result is capped at `max_len` entries.
FdWeights fd_weights_threshold(double d, double tau, std::size_t max_len = kMaxWindow);

/// Drops trailing weights with |omega_j| < tau. omega_0 always survives.
FdWeights truncate_by_magnitude(const FdWeights& w, double tau);

/// Relative weight loss of observation t in a sample of T points:
///   lambda_t = sum_{j=t}^{T} |omega_j| / sum_{i=0}^{T-1} |omega_i|, capped at 1.
/// Non-increasing in t; lambda_0 is the full mass (1).
/// Requires t < T <= w.size().
double weight_loss(const FdWeights& w, std::size_t t, std::size_t T);

/// Expanding-window differencing: y_t = sum_{j=0}^{t} omega_j x_{t-j}.
/// Leading points whose weight loss exceeds lambda_star are dropped;
/// lambda_star = 1 keeps everything. d must lie in [-1, 2].
TimeSeries fracdiff_expanding(const TimeSeries& x, double d, double lambda_star = 1.0);

/// Expanding-window differencing with caller-supplied weights. Observations
/// beyond the last weight contribute nothing.
TimeSeries fracdiff_expanding(const TimeSeries& x, const FdWeights& w, double lambda_star = 1.0);

/// Fixed-window differencing: weights thresholded at tau to width w and
///   y_t = sum_{j=0}^{w-1} omega_j x_{t-j},  t >= w - 1.
/// Throws InsufficientData (naming the required length) if x is shorter
/// than the window.
TimeSeries fracdiff_fixed(const TimeSeries& x, double d, double tau = kDefaultTau);

/// Fixed-window differencing with caller-supplied weights.
TimeSeries fracdiff_fixed(const TimeSeries& x, const FdWeights& w);

/// Applies (1 - B)^{-d} over an expanding window, the exact inverse of
/// fracdiff_expanding(., d, 1). Driving it with white noise produces an
/// ARFIMA(0, d, 0) path. Requires |d| < 1.
TimeSeries fracdiff_inverse(const TimeSeries& eps, double d);

}  // namespace fdts

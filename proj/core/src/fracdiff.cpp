#include "fdts/fracdiff.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "fdts/error.hpp"
#include "fdts/parallel.hpp"

namespace fdts {

namespace {

constexpr double kMinForwardD = -1.0;
constexpr double kMaxForwardD = 2.0;

void require_finite_d(double d) {
  if (!std::isfinite(d)) throw Error(ErrorKind::InvalidParameter, "d must be finite");
}

void require_forward_d(double d) {
  require_finite_d(d);
  if (d < kMinForwardD || d > kMaxForwardD) {
    throw Error(ErrorKind::OutOfRange,
                "d = " + std::to_string(d) + " outside the supported range [-1, 2]");
  }
}

void require_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorKind::InvalidParameter, "threshold tau must be a positive finite number");
  }
}

// Sign of Gamma(x) for x not a non-positive integer.
double gamma_sign(double x) {
  if (x > 0.0) return 1.0;
  const auto k = static_cast<long long>(std::floor(x));
  return (k % 2 == 0) ? 1.0 : -1.0;
}

bool is_nonnegative_integer(double d) { return d >= 0.0 && std::floor(d) == d; }

std::vector<double> convolve_expanding(std::span<const double> x, std::span<const double> w) {
  const std::size_t n = x.size();
  std::vector<double> y(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t width = std::min(t + 1, w.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < width; ++j) acc += w[j] * x[t - j];
    y[t] = acc;
  }
  return y;
}

}  // namespace

FdWeights fd_weights(double d, std::size_t max_len) {
  require_finite_d(d);
  if (max_len == 0) throw Error(ErrorKind::InvalidParameter, "max_len must be at least 1");

  FdWeights out{d, std::vector<double>(max_len), ByLength{max_len}};
  out.weights[0] = 1.0;
  for (std::size_t j = 1; j < max_len; ++j) {
    const double jd = static_cast<double>(j);
    // Adding +0.0 turns the -0.0 past an integer order's last term into +0.0.
    out.weights[j] = out.weights[j - 1] * ((jd - 1.0) - d) / jd + 0.0;
  }
  return out;
}

FdWeights fd_weights_gamma(double d, std::size_t max_len) {
  require_finite_d(d);
  if (max_len == 0) throw Error(ErrorKind::InvalidParameter, "max_len must be at least 1");
  if (is_nonnegative_integer(d)) {
    throw Error(ErrorKind::Pole, "Gamma(-d) has a pole at d = " + std::to_string(d) +
                                     "; use fd_weights for integer orders");
  }

  FdWeights out{d, std::vector<double>(max_len), ByLength{max_len}};
  const double log_gamma_neg_d = std::lgamma(-d);
  const double sign_neg_d = gamma_sign(-d);
  for (std::size_t j = 0; j < max_len; ++j) {
    const double jd = static_cast<double>(j);
    const double log_mag = std::lgamma(jd - d) - std::lgamma(jd + 1.0) - log_gamma_neg_d;
    out.weights[j] = gamma_sign(jd - d) * sign_neg_d * std::exp(log_mag);
  }
  return out;
}

FdWeights fd_weights_threshold(double d, double tau, std::size_t max_len) {
  require_finite_d(d);
  require_tau(tau);
  if (max_len == 0) throw Error(ErrorKind::InvalidParameter, "max_len must be at least 1");

  std::vector<double> w{1.0};
  // |omega_j| only decreases once j > d + 1, so stop at the first small
  // coefficient past that point (or at an exact zero for integer d).
  for (std::size_t j = 1; j < max_len; ++j) {
    const double jd = static_cast<double>(j);
    const double next = w.back() * ((jd - 1.0) - d) / jd;
    if (next == 0.0) break;
    if (jd > d + 1.0 && std::abs(next) < tau) break;
    w.push_back(next);
  }
  FdWeights out{d, std::move(w), ByMagnitude{tau}};
  return truncate_by_magnitude(out, tau);
}

FdWeights truncate_by_magnitude(const FdWeights& w, double tau) {
  require_tau(tau);
  std::size_t keep = 1;
  for (std::size_t j = w.size(); j > 1; --j) {
    if (std::abs(w.weights[j - 1]) >= tau) {
      keep = j;
      break;
    }
  }
  FdWeights out{w.d, {}, ByMagnitude{tau}};
  if (w.weights.empty()) {
    out.weights = {1.0};
  } else {
    out.weights.assign(w.weights.begin(), w.weights.begin() + static_cast<std::ptrdiff_t>(keep));
  }
  return out;
}

double weight_loss(const FdWeights& w, std::size_t t, std::size_t T) {
  if (T == 0 || t >= T || T > w.size()) {
    throw Error(ErrorKind::OutOfRange, "weight_loss requires t < T <= number of weights (t=" +
                                           std::to_string(t) + ", T=" + std::to_string(T) +
                                           ", weights=" + std::to_string(w.size()) + ")");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < T; ++i) total += std::abs(w.weights[i]);
  if (total == 0.0) return 0.0;

  const std::size_t last = std::min(T, w.size() - 1);
  double tail = 0.0;
  for (std::size_t j = t; j <= last; ++j) tail += std::abs(w.weights[j]);
  return std::min(1.0, tail / total);
}

TimeSeries fracdiff_expanding(const TimeSeries& x, double d, double lambda_star) {
  require_forward_d(d);
  if (x.empty()) throw Error(ErrorKind::EmptyInput, "cannot difference an empty series");
  return fracdiff_expanding(x, fd_weights(d, x.size()), lambda_star);
}

TimeSeries fracdiff_expanding(const TimeSeries& x, const FdWeights& w, double lambda_star) {
  if (x.empty()) throw Error(ErrorKind::EmptyInput, "cannot difference an empty series");
  if (w.weights.empty()) throw Error(ErrorKind::InvalidParameter, "empty weight sequence");
  if (!(lambda_star >= 0.0 && lambda_star <= 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "lambda_star must lie in [0, 1]");
  }

  const std::size_t n = x.size();
  std::size_t first = 0;
  if (lambda_star < 1.0) {
    // Loss is measured against the full sample; weights past the supplied
    // sequence count as zero.
    FdWeights padded = w;
    padded.weights.resize(std::max(n, w.size()), 0.0);
    while (first < n && weight_loss(padded, first, n) > lambda_star) ++first;
  }

  const std::vector<double> y = convolve_expanding(x.values(), w.weights);
  std::vector<Date> dates(x.timestamps().begin() + static_cast<std::ptrdiff_t>(first),
                          x.timestamps().end());
  std::vector<double> values(y.begin() + static_cast<std::ptrdiff_t>(first), y.end());
  return TimeSeries(std::move(dates), std::move(values), x.name());
}

TimeSeries fracdiff_fixed(const TimeSeries& x, double d, double tau) {
  require_forward_d(d);
  return fracdiff_fixed(x, fd_weights_threshold(d, tau));
}

TimeSeries fracdiff_fixed(const TimeSeries& x, const FdWeights& w) {
  const std::size_t width = w.size();
  if (width == 0) throw Error(ErrorKind::InvalidParameter, "empty weight sequence");
  if (x.size() < width) {
    throw Error(ErrorKind::InsufficientData,
                "fixed window of width " + std::to_string(width) + " needs at least " +
                    std::to_string(width) + " observations, got " + std::to_string(x.size()));
  }

  const std::size_t n_out = x.size() - width + 1;
  const auto xs = x.values();
  std::vector<double> values(n_out);
  // Each output is an independent dot product with a fixed summation order,
  // so the result does not depend on how indices are partitioned.
  parallel_for(n_out, [&](std::size_t k) {
    const std::size_t t = k + width - 1;
    double acc = 0.0;
    for (std::size_t j = 0; j < width; ++j) acc += w.weights[j] * xs[t - j];
    values[k] = acc;
  });

  std::vector<Date> dates(x.timestamps().begin() + static_cast<std::ptrdiff_t>(width - 1),
                          x.timestamps().end());
  return TimeSeries(std::move(dates), std::move(values), x.name());
}

TimeSeries fracdiff_inverse(const TimeSeries& eps, double d) {
  require_finite_d(d);
  if (!(std::abs(d) < 1.0)) {
    throw Error(ErrorKind::OutOfRange, "inverse differencing requires |d| < 1");
  }
  if (eps.empty()) throw Error(ErrorKind::EmptyInput, "cannot integrate an empty series");

  const FdWeights psi = fd_weights(-d, eps.size());
  std::vector<double> y = convolve_expanding(eps.values(), psi.weights);
  return TimeSeries(std::vector<Date>(eps.timestamps().begin(), eps.timestamps().end()),
                    std::move(y), eps.name());
}

}  // namespace fdts

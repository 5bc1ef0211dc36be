#include "fdts/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fdts/error.hpp"
#include "fdts/fracdiff.hpp"

namespace fdts {

namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

// Box-Muller on 53-bit uniforms; std::normal_distribution is not portable
// across standard libraries.
class Normal {
 public:
  explicit Normal(std::mt19937_64& rng) : rng_(rng) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform_open();
    const double u2 = uniform_open();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  double uniform_open() {
    return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
  }

  std::mt19937_64& rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

void require_length(std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidParameter, "length must be positive");
}

}  // namespace

std::vector<double> gaussian_noise(std::uint64_t seed, std::size_t n, double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::InvalidParameter, "sigma must be finite and non-negative");
  }
  auto rng = make_rng(seed, 0);
  Normal normal(rng);
  std::vector<double> out(n);
  for (double& v : out) v = sigma * normal();
  return out;
}

TimeSeries white_noise(std::uint64_t seed, std::size_t n, double sigma) {
  require_length(n);
  return TimeSeries::from_values(gaussian_noise(seed, n, sigma), "white_noise");
}

TimeSeries random_walk(std::uint64_t seed, std::size_t n, double sigma, double start) {
  require_length(n);
  std::vector<double> v = gaussian_noise(seed, n, sigma);
  double level = start;
  for (double& x : v) x = level += x;
  return TimeSeries::from_values(std::move(v), "random_walk");
}

TimeSeries arfima(std::uint64_t seed, std::size_t n, double d, double sigma) {
  return fracdiff_inverse(white_noise(seed, n, sigma), d).renamed("arfima");
}

TimeSeries cumulated_arfima(std::uint64_t seed, std::size_t n, double d, double sigma) {
  const TimeSeries increments = arfima(seed, n, d, sigma);
  std::vector<double> v(increments.values().begin(), increments.values().end());
  double level = 0.0;
  for (double& x : v) x = level += x;
  return TimeSeries::from_values(std::move(v), "cumulated_arfima");
}

OhlcvFrame synthetic_ohlcv(std::uint64_t seed, const SyntheticOhlcvOptions& options) {
  const std::size_t n = options.n;
  if (n < 3) throw Error(ErrorKind::InvalidParameter, "synthetic frame needs at least 3 rows");
  if (!(options.volatility > 0.0) || !(options.label_noise >= 0.0)) {
    throw Error(ErrorKind::InvalidParameter, "volatility must be positive, noise non-negative");
  }

  auto rng = make_rng(seed, 1);
  Normal normal(rng);

  // log close = log 100 + ARFIMA(0, label_d, 0), so FD(label_d) of the log
  // close is the innovation sequence and the label feature has no drift.
  std::vector<double> innovations(n);
  for (double& e : innovations) e = options.volatility * normal();
  const TimeSeries memory = fracdiff_inverse(TimeSeries::from_values(std::move(innovations)), options.label_d);
  std::vector<double> close(n);
  for (std::size_t t = 0; t < n; ++t) close[t] = 100.0 * std::exp(memory[t]);

  const TimeSeries fd = fracdiff_fixed(TimeSeries::from_values(close), options.label_d, options.tau);
  const std::size_t offset = n - fd.size();
  std::vector<double> sorted(fd.values().begin(), fd.values().end());
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2),
                   sorted.end());
  const double median = sorted[sorted.size() / 2];
  double mean = 0.0;
  for (double v : fd.values()) mean += v;
  mean /= static_cast<double>(fd.size());
  double var = 0.0;
  for (double v : fd.values()) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(fd.size()));

  // Volume moves multiplicatively in the label's direction; steps toward the
  // base level are larger, which keeps the log-volume mean reverting.
  const double base_log_volume = std::log(1e6);
  std::vector<double> volume(n);
  volume[0] = std::exp(base_log_volume);
  for (std::size_t t = 0; t + 1 < n; ++t) {
    double direction;
    if (t >= offset) {
      direction = fd[t - offset] + options.label_noise * sd * normal() > median ? 1.0 : -1.0;
    } else {
      direction = normal() > 0.0 ? 1.0 : -1.0;
    }
    const double deviation = std::log(volume[t]) - base_log_volume;
    const double step = 0.1 * (0.5 + std::abs(normal())) * std::exp(-direction * deviation);
    volume[t + 1] = volume[t] * std::exp(direction * std::min(step, 1.0));
  }

  OhlcvFrame frame;
  frame.rows.resize(n);
  double previous_close = 100.0;
  for (std::size_t t = 0; t < n; ++t) {
    OhlcvRow& row = frame.rows[t];
    row.date = kDefaultEpoch + std::chrono::days(static_cast<long>(t));
    row.open = previous_close * std::exp(0.2 * options.volatility * normal());
    row.close = close[t];
    row.adj_close = close[t];
    row.high = std::max(row.open, row.close) * std::exp(0.5 * options.volatility * std::abs(normal()));
    row.low = std::min(row.open, row.close) * std::exp(-0.5 * options.volatility * std::abs(normal()));
    row.volume = std::round(volume[t]);
    previous_close = close[t];
  }
  // Rounding may tie neighbouring volumes; re-impose the intended direction.
  for (std::size_t t = 0; t + 1 < n; ++t) {
    const bool up = volume[t + 1] > volume[t];
    double& next = frame.rows[t + 1].volume;
    if (up && next <= frame.rows[t].volume) next = frame.rows[t].volume + 1.0;
    if (!up && next > frame.rows[t].volume) next = frame.rows[t].volume;
  }
  return frame;
}

}  // namespace fdts

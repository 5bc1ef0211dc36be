#include "fdts/stattests.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "fdts/error.hpp"

namespace fdts {

namespace {

// MacKinnon (1994/2010) response-surface coefficients, single variable,
// constant-only regression.
constexpr double kTauMax = 2.74;
constexpr double kTauMin = -18.83;
constexpr double kTauStar = -1.61;
constexpr std::array<double, 3> kTauSmallP{2.1659, 1.4412, 0.038269};
constexpr std::array<double, 4> kTauLargeP{1.7339, 0.93202, -0.12745, -0.010368};

// Critical-value surfaces: cv(n) = b0 + b1/n + b2/n^2 + b3/n^3 for 1%, 5%, 10%.
constexpr std::array<std::array<double, 4>, 3> kTauCritical{{
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
}};
constexpr std::array<const char*, 3> kLevelLabels{"1%", "5%", "10%"};

// KPSS level-stationarity critical values (Kwiatkowski et al. 1992, Table 1).
constexpr std::array<double, 4> kKpssCritical{0.347, 0.463, 0.574, 0.739};
constexpr std::array<double, 4> kKpssPValues{0.10, 0.05, 0.025, 0.01};

constexpr std::size_t kMinRegressionRows = 20;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

template <std::size_t N>
double polyval(const std::array<double, N>& coef, double x) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * x + coef[i];
  return acc;
}

// Design for a lag order p evaluated on rows t = first..n-2 of the
// differenced series (dx_t = x_{t+1} - x_t).
struct AdfDesign {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
};

AdfDesign adf_design(std::span<const double> x, std::size_t p, std::size_t first) {
  const std::size_t n = x.size();
  const std::size_t rows = n - 1 - first;
  AdfDesign out{Eigen::MatrixXd(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(p + 2)),
                Eigen::VectorXd(static_cast<Eigen::Index>(rows))};
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t t = first + r;
    const auto ri = static_cast<Eigen::Index>(r);
    out.y(ri) = x[t + 1] - x[t];
    out.X(ri, 0) = 1.0;
    out.X(ri, 1) = x[t];
    for (std::size_t i = 1; i <= p; ++i) {
      out.X(ri, static_cast<Eigen::Index>(i + 1)) = x[t - i + 1] - x[t - i];
    }
  }
  return out;
}

std::size_t auto_max_lag(std::size_t n) {
  const auto formula =
      static_cast<std::size_t>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
  const std::size_t cap = n / 2 > 3 ? n / 2 - 3 : 0;
  return std::min(formula, cap);
}

// AIC over 0..max_lag on a common sample. Householder QR without pivoting
// nests: the first k columns of Q span the first k regressors, so
// RSS(p) = sum of squared Q'y entries beyond index p + 2.
std::size_t select_lag_aic(std::span<const double> x, std::size_t max_lag) {
  const AdfDesign design = adf_design(x, max_lag, max_lag);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(design.X);
  const Eigen::VectorXd c = qr.householderQ().adjoint() * design.y;
  const auto rows = static_cast<double>(design.y.size());

  std::size_t best = 0;
  double best_aic = std::numeric_limits<double>::infinity();
  for (std::size_t p = 0; p <= max_lag; ++p) {
    const auto k = static_cast<Eigen::Index>(p + 2);
    const double rss = c.tail(c.size() - k).squaredNorm();
    if (!(rss > 0.0)) continue;
    const double aic = rows * std::log(rss / rows) + 2.0 * static_cast<double>(k);
    if (aic < best_aic) {
      best_aic = aic;
      best = p;
    }
  }
  return best;
}

}  // namespace

const char* to_string(TestKind kind) noexcept {
  return kind == TestKind::Adf ? "ADF" : "KPSS";
}

TimeSeries log_returns(const TimeSeries& x) {
  if (x.size() < 2) {
    throw Error(ErrorKind::InsufficientData, "log returns need at least two observations");
  }
  const TimeSeries logged = log_values(x);
  std::vector<double> r(x.size() - 1);
  for (std::size_t t = 1; t < x.size(); ++t) r[t - 1] = logged[t] - logged[t - 1];
  std::vector<Date> dates(x.timestamps().begin() + 1, x.timestamps().end());
  return TimeSeries(std::move(dates), std::move(r), x.name());
}

TimeSeries log_values(const TimeSeries& x) {
  std::vector<double> out(x.size());
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (!(x[t] > 0.0)) {
      throw Error(ErrorKind::Domain,
                  "logarithm of non-positive value at " + format_date(x.date(t)));
    }
    out[t] = std::log(x[t]);
  }
  return TimeSeries(std::vector<Date>(x.timestamps().begin(), x.timestamps().end()),
                    std::move(out), x.name());
}

AcfResult acf(const TimeSeries& x, std::size_t max_lag) {
  const std::size_t T = x.size();
  if (max_lag >= T) {
    throw Error(ErrorKind::InvalidParameter, "max_lag must be smaller than the series length");
  }
  const auto v = x.values();
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(T);
  double ss = 0.0;
  for (double xi : v) ss += (xi - mean) * (xi - mean);
  if (!(ss > 0.0)) throw Error(ErrorKind::Degenerate, "zero-variance series has no ACF");

  AcfResult out;
  out.confidence_band = 1.96 / std::sqrt(static_cast<double>(T));
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double num = 0.0;
    for (std::size_t t = k; t < T; ++t) num += (v[t] - mean) * (v[t - k] - mean);
    out.lags.push_back(k);
    // T * s^2 with s^2 = ss / T.
    out.r.push_back(k == 0 ? 1.0 : num / ss);
  }
  return out;
}

double adf_pvalue(double statistic) {
  if (statistic > kTauMax) return 1.0;
  if (statistic < kTauMin) return 0.0;
  const double z =
      statistic <= kTauStar ? polyval(kTauSmallP, statistic) : polyval(kTauLargeP, statistic);
  return normal_cdf(z);
}

std::map<std::string, double> adf_critical_values(std::size_t nobs) {
  std::map<std::string, double> out;
  const double inv = nobs == 0 ? 0.0 : 1.0 / static_cast<double>(nobs);
  for (std::size_t i = 0; i < kTauCritical.size(); ++i) {
    const auto& b = kTauCritical[i];
    out[kLevelLabels[i]] = b[0] + b[1] * inv + b[2] * inv * inv + b[3] * inv * inv * inv;
  }
  return out;
}

StatTestResult adf_test(const TimeSeries& x, AdfLags lags) { return adf_test(x.values(), lags); }

StatTestResult adf_test(std::span<const double> x, AdfLags lags) {
  const std::size_t n = x.size();
  if (n < kMinRegressionRows + 1) {
    throw Error(ErrorKind::InsufficientData,
                "ADF needs at least " + std::to_string(kMinRegressionRows + 1) +
                    " observations, got " + std::to_string(n));
  }

  std::size_t p = 0;
  if (lags) {
    p = *lags;
  } else {
    const std::size_t max_lag = auto_max_lag(n);
    if (n - 1 - max_lag >= kMinRegressionRows) p = select_lag_aic(x, max_lag);
  }
  if (p + 1 >= n || n - 1 - p < kMinRegressionRows) {
    throw Error(ErrorKind::InsufficientData,
                "ADF with " + std::to_string(p) + " lags leaves fewer than " +
                    std::to_string(kMinRegressionRows) + " regression rows");
  }

  const AdfDesign design = adf_design(x, p, p);
  const Eigen::Index k = design.X.cols();
  const Eigen::Index rows = design.X.rows();
  if (rows <= k) throw Error(ErrorKind::InsufficientData, "too few rows for the ADF regression");

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design.X);
  if (qr.rank() < k) {
    throw Error(ErrorKind::SingularRegression, "ADF regressors are perfectly collinear");
  }
  const Eigen::VectorXd beta = qr.solve(design.y);
  const double rss = (design.y - design.X * beta).squaredNorm();
  const double sigma2 = rss / static_cast<double>(rows - k);

  // Var(beta_1) = sigma2 * [(X'X)^{-1}]_{11} = sigma2 * ||R^{-T} P^T e_1||^2.
  Eigen::VectorXd e = Eigen::VectorXd::Zero(k);
  e(1) = 1.0;
  const Eigen::VectorXd permuted = qr.colsPermutation().transpose() * e;
  const Eigen::VectorXd u = qr.matrixR()
                                .topLeftCorner(k, k)
                                .triangularView<Eigen::Upper>()
                                .transpose()
                                .solve(permuted);
  const double se = std::sqrt(sigma2 * u.squaredNorm());
  if (!(se > 0.0) || !std::isfinite(se)) {
    throw Error(ErrorKind::SingularRegression, "ADF residual variance vanished");
  }

  StatTestResult out;
  out.statistic = beta(1) / se;
  out.p_value = adf_pvalue(out.statistic);
  out.nobs = static_cast<std::size_t>(rows);
  out.critical_values = adf_critical_values(out.nobs);
  out.lags_used = p;
  out.test_kind = TestKind::Adf;
  return out;
}

std::map<std::string, double> kpss_critical_values() {
  return {{"10%", kKpssCritical[0]}, {"5%", kKpssCritical[1]}, {"1%", kKpssCritical[3]}};
}

StatTestResult kpss_test(const TimeSeries& x) { return kpss_test(x.values()); }

StatTestResult kpss_test(std::span<const double> x) {
  const std::size_t T = x.size();
  if (T < kMinRegressionRows) {
    throw Error(ErrorKind::InsufficientData, "KPSS needs at least " +
                                                 std::to_string(kMinRegressionRows) +
                                                 " observations, got " + std::to_string(T));
  }
  const double Td = static_cast<double>(T);
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / Td;
  std::vector<double> e(T);
  for (std::size_t t = 0; t < T; ++t) e[t] = x[t] - mean;

  double partial = 0.0;
  double eta = 0.0;
  for (double et : e) {
    partial += et;
    eta += partial * partial;
  }
  eta /= Td * Td;

  const auto bandwidth = static_cast<std::size_t>(std::floor(4.0 * std::pow(Td / 100.0, 0.25)));
  double lrv = 0.0;
  for (double et : e) lrv += et * et;
  for (std::size_t s = 1; s <= bandwidth && s < T; ++s) {
    double cov = 0.0;
    for (std::size_t t = s; t < T; ++t) cov += e[t] * e[t - s];
    const double bartlett = 1.0 - static_cast<double>(s) / static_cast<double>(bandwidth + 1);
    lrv += 2.0 * bartlett * cov;
  }
  lrv /= Td;
  if (!(lrv > 0.0)) {
    throw Error(ErrorKind::Degenerate, "KPSS long-run variance is not positive");
  }

  StatTestResult out;
  out.statistic = eta / lrv;
  if (out.statistic <= kKpssCritical.front()) {
    out.p_value = kKpssPValues.front();
  } else if (out.statistic >= kKpssCritical.back()) {
    out.p_value = kKpssPValues.back();
  } else {
    std::size_t i = 1;
    while (out.statistic > kKpssCritical[i]) ++i;
    const double frac =
        (out.statistic - kKpssCritical[i - 1]) / (kKpssCritical[i] - kKpssCritical[i - 1]);
    out.p_value = kKpssPValues[i - 1] + frac * (kKpssPValues[i] - kKpssPValues[i - 1]);
  }
  out.critical_values = kpss_critical_values();
  out.lags_used = bandwidth;
  out.nobs = T;
  out.test_kind = TestKind::Kpss;
  return out;
}

double hurst_exponent(const TimeSeries& x, std::size_t max_lag) {
  return hurst_exponent(x.values(), max_lag);
}

double hurst_exponent(std::span<const double> x, std::size_t max_lag) {
  if (max_lag < 2) throw Error(ErrorKind::InvalidParameter, "hurst max_lag must be at least 2");
  if (x.size() <= 2 * max_lag) {
    throw Error(ErrorKind::Degenerate, "hurst estimate with max_lag " + std::to_string(max_lag) +
                                           " needs more than " + std::to_string(2 * max_lag) +
                                           " observations");
  }
  if (max_lag < 3) {
    throw Error(ErrorKind::Degenerate, "a slope needs at least two lags (max_lag >= 3)");
  }

  std::vector<double> log_tau;
  std::vector<double> log_sd;
  for (std::size_t tau = 2; tau <= max_lag; ++tau) {
    const std::size_t m = x.size() - tau;
    double mean = 0.0;
    for (std::size_t t = 0; t < m; ++t) mean += x[t + tau] - x[t];
    mean /= static_cast<double>(m);
    double var = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
      const double dev = (x[t + tau] - x[t]) - mean;
      var += dev * dev;
    }
    var /= static_cast<double>(m);
    if (!(var > 0.0)) {
      throw Error(ErrorKind::Degenerate,
                  "increments at lag " + std::to_string(tau) + " have zero dispersion");
    }
    log_tau.push_back(std::log(static_cast<double>(tau)));
    log_sd.push_back(0.5 * std::log(var));
  }

  const auto k = static_cast<double>(log_tau.size());
  const double mx = std::accumulate(log_tau.begin(), log_tau.end(), 0.0) / k;
  const double my = std::accumulate(log_sd.begin(), log_sd.end(), 0.0) / k;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < log_tau.size(); ++i) {
    sxy += (log_tau[i] - mx) * (log_sd[i] - my);
    sxx += (log_tau[i] - mx) * (log_tau[i] - mx);
  }
  return sxy / sxx;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::Shape, "correlation inputs differ in length");
  if (a.size() < 2) throw Error(ErrorKind::InsufficientData, "correlation needs two points");
  const auto n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (!(saa > 0.0) || !(sbb > 0.0)) {
    throw Error(ErrorKind::Degenerate, "correlation undefined for a constant sample");
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace fdts

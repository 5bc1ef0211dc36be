#include "fdts/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "fdts/error.hpp"
#include "fdts/format.hpp"
#include "json.hpp"

namespace fdts {

namespace {

void check_pair(std::span<const Label> a, std::size_t b_size) {
  if (a.size() != b_size) {
    throw Error(ErrorKind::Input, "length mismatch: " + std::to_string(a.size()) + " vs " +
                                      std::to_string(b_size));
  }
  if (a.empty()) throw Error(ErrorKind::Input, "no labels");
}

void check_labels(std::span<const Label> y) {
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!is_valid(y[i])) {
      throw Error(ErrorKind::Input, "invalid label " + std::to_string(to_int(y[i])) +
                                        " at index " + std::to_string(i));
    }
  }
}

}  // namespace

ConfusionMatrix confusion(std::span<const Label> y_true, std::span<const Label> y_pred) {
  check_pair(y_true, y_pred.size());
  check_labels(y_true);
  check_labels(y_pred);
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const bool t = y_true[i] == Label::Positive;
    const bool p = y_pred[i] == Label::Positive;
    if (t && p) ++cm.tp;
    else if (!t && !p) ++cm.tn;
    else if (p) ++cm.fp;
    else ++cm.fn;
  }
  return cm;
}

BasicMetrics basic_metrics(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw Error(ErrorKind::Input, "empty confusion matrix");
  BasicMetrics m;
  m.accuracy = static_cast<double>(cm.tp + cm.tn) / static_cast<double>(cm.total());
  if (cm.tp + cm.fp == 0) {
    m.precision_degenerate = true;
  } else {
    m.precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
  }
  if (cm.tp + cm.fn == 0) {
    m.recall_degenerate = true;
  } else {
    m.recall = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
  }
  return m;
}

double mcc(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw Error(ErrorKind::Input, "empty confusion matrix");
  const auto tp = static_cast<double>(cm.tp);
  const auto tn = static_cast<double>(cm.tn);
  const auto fp = static_cast<double>(cm.fp);
  const auto fn = static_cast<double>(cm.fn);
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (denom == 0.0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(denom);
}

std::string to_string(KappaBand band) {
  switch (band) {
    case KappaBand::Slight: return "Slight";
    case KappaBand::Fair: return "Fair";
    case KappaBand::Moderate: return "Moderate";
    case KappaBand::Substantial: return "Substantial";
    case KappaBand::Perfect: return "Perfect";
  }
  return "Slight";
}

KappaBand kappa_band(double kappa) {
  if (kappa <= 0.2) return KappaBand::Slight;
  if (kappa <= 0.4) return KappaBand::Fair;
  if (kappa <= 0.6) return KappaBand::Moderate;
  if (kappa <= 0.8) return KappaBand::Substantial;
  return KappaBand::Perfect;
}

KappaResult cohens_kappa(const ConfusionMatrix& cm) {
  const std::size_t n = cm.total();
  if (n == 0) throw Error(ErrorKind::Input, "empty confusion matrix");
  // kappa = (n*agree - sum of marginal products) / (n^2 - sum of marginal
  // products); counts stay integral so boundary values come out exact.
  if (n >= (std::uint64_t{1} << 31)) throw Error(ErrorKind::Input, "too many labels for kappa");
  using Wide = std::uint64_t;
  const Wide agree = cm.tp + cm.tn;
  const Wide chance = Wide(cm.tp + cm.fp) * (cm.tp + cm.fn) + Wide(cm.tn + cm.fn) * (cm.tn + cm.fp);
  const Wide nn = Wide(n) * n;
  KappaResult r;
  if (chance == nn) {
    r.kappa = 1.0;
    r.degenerate = true;
  } else {
    const Wide obs = agree * n;
    const double num = obs >= chance ? static_cast<double>(obs - chance)
                                     : -static_cast<double>(chance - obs);
    r.kappa = num / static_cast<double>(nn - chance);
  }
  r.band = kappa_band(r.kappa);
  return r;
}

KappaResult cohens_kappa(std::span<const Label> y_true, std::span<const Label> y_pred) {
  return cohens_kappa(confusion(y_true, y_pred));
}

double rocauc(std::span<const Label> y_true, std::span<const double> scores) {
  check_pair(y_true, scores.size());
  check_labels(y_true);
  const std::size_t n = scores.size();
  for (double s : scores) {
    if (!std::isfinite(s)) throw Error(ErrorKind::Input, "scores must be finite");
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Sum of doubled midranks of the positives keeps everything integral.
  std::size_t n_pos = 0;
  std::size_t rank_sum2 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const std::size_t midrank2 = i + j + 1;  // 2 * ((i+1) + j) / 2
    for (std::size_t k = i; k < j; ++k) {
      if (y_true[order[k]] == Label::Positive) {
        ++n_pos;
        rank_sum2 += midrank2;
      }
    }
    i = j;
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(ErrorKind::UndefinedAuc, "ROC AUC needs both classes in the truth labels");
  }
  const double u2 = static_cast<double>(rank_sum2) - static_cast<double>(n_pos * (n_pos + 1));
  return u2 / (2.0 * static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

std::string MetricReport::csv_header() { return "Accuracy,ROCAUC,Precision,Recall,MCC,Kappa"; }

std::string MetricReport::csv_row() const {
  return format_double(accuracy) + ',' + format_double(rocauc) + ',' + format_double(precision) +
         ',' + format_double(recall) + ',' + format_double(mcc) + ',' + format_double(kappa);
}

std::string MetricReport::to_json() const {
  nlohmann::ordered_json j;
  j["accuracy"] = accuracy;
  j["rocauc"] = rocauc;
  j["precision"] = precision;
  j["recall"] = recall;
  j["mcc"] = mcc;
  j["kappa"] = kappa;
  j["kappa_band"] = to_string(kappa_band);
  j["confusion"] = {{"tp", confusion.tp}, {"tn", confusion.tn}, {"fp", confusion.fp},
                    {"fn", confusion.fn}};
  return j.dump();
}

MetricReport evaluate(std::span<const Label> y_true, std::span<const Label> y_pred,
                      std::span<const double> scores) {
  MetricReport r;
  r.confusion = confusion(y_true, y_pred);
  const BasicMetrics basic = basic_metrics(r.confusion);
  r.accuracy = basic.accuracy;
  r.precision = basic.precision;
  r.recall = basic.recall;
  r.rocauc = rocauc(y_true, scores);
  r.mcc = mcc(r.confusion);
  const KappaResult k = cohens_kappa(r.confusion);
  r.kappa = k.kappa;
  r.kappa_band = k.band;
  return r;
}

}  // namespace fdts

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fdts/label.hpp"

namespace fdts {

struct ConfusionMatrix {
  std::size_t tp = 0;
  std::size_t tn = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  std::size_t total() const noexcept { return tp + tn + fp + fn; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

/// +1 is the positive class.
ConfusionMatrix confusion(std::span<const Label> y_true, std::span<const Label> y_pred);

struct BasicMetrics {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  /// Set when tp + fp = 0; precision is then reported as 0.
  bool precision_degenerate = false;
  /// Set when tp + fn = 0; recall is then reported as 0.
  bool recall_degenerate = false;
};

BasicMetrics basic_metrics(const ConfusionMatrix& cm);

/// Matthews correlation; 0 when any denominator factor vanishes.
double mcc(const ConfusionMatrix& cm);

enum class KappaBand { Slight, Fair, Moderate, Substantial, Perfect };

std::string to_string(KappaBand band);
/// Right-closed cutoffs: <= 0.2 Slight, <= 0.4 Fair, <= 0.6 Moderate,
/// <= 0.8 Substantial, otherwise Perfect.
KappaBand kappa_band(double kappa);

struct KappaResult {
  double kappa = 0.0;
  KappaBand band = KappaBand::Slight;
  /// Chance agreement is 1 (both labelings constant and equal); kappa is 1.
  bool degenerate = false;
};

KappaResult cohens_kappa(const ConfusionMatrix& cm);
KappaResult cohens_kappa(std::span<const Label> y_true, std::span<const Label> y_pred);

/// Mann-Whitney statistic with midranks for tied scores.
double rocauc(std::span<const Label> y_true, std::span<const double> scores);

struct MetricReport {
  ConfusionMatrix confusion;
  double accuracy = 0.0;
  double rocauc = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double mcc = 0.0;
  double kappa = 0.0;
  KappaBand kappa_band = KappaBand::Slight;

  static std::string csv_header();
  std::string csv_row() const;
  std::string to_json() const;
};

MetricReport evaluate(std::span<const Label> y_true, std::span<const Label> y_pred,
                      std::span<const double> scores);

}  // namespace fdts

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fdts/label.hpp"
#include "fdts/matrix.hpp"

namespace fdts {

/// L2-regularised logistic regression fitted by full-batch gradient descent.
/// The penalty (l2 / 2) ||w||^2 is added to the summed log-loss; the intercept
/// is not penalised.
struct LogRegSpec {
  double l2 = 1.0;
  double tolerance = 1e-6;
  std::size_t max_iter = 10000;
};

struct KnnSpec {
  std::size_t k = 5;
};

enum class SplitCriterion { Gini, Entropy };

/// Bootstrap ensemble of CART trees. Each tree grows best-first until it has
/// max_leaf_nodes leaves or no leaf can be split.
struct ForestSpec {
  SplitCriterion criterion = SplitCriterion::Gini;
  std::size_t max_leaf_nodes = 50;
  std::size_t n_trees = 100;
  std::uint64_t seed = 0;
};

struct ModelSpec {
  std::variant<LogRegSpec, KnnSpec, ForestSpec> kind = LogRegSpec{};
  /// Standardise features with training-set mean and standard deviation.
  bool standardize = true;
};

/// Parses "logreg[:l2]", "knn:K" or "rf:gini|entropy:LEAVES[:TREES[:SEED]]".
ModelSpec parse_model_spec(std::string_view text);
/// Short human label, e.g. "KNN (k = 200)".
std::string describe(const ModelSpec& spec);

struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;

  static Standardizer fit(const FeatureMatrix& X);
  FeatureMatrix apply(const FeatureMatrix& X) const;
};

struct LogRegModel {
  std::vector<double> coef;
  double intercept = 0.0;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
};

struct KnnModel {
  FeatureMatrix X;
  std::vector<Label> y;
};

struct TreeNode {
  /// -1 marks a leaf.
  int feature = -1;
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  /// Leaf vote for the positive class, 0 or 1.
  double vote = 0.0;
};

struct DecisionTree {
  std::vector<TreeNode> nodes;

  double predict(std::span<const double> x) const;
  std::size_t leaf_count() const;
};

struct ForestModel {
  std::vector<DecisionTree> trees;
};

struct TrainedModel {
  ModelSpec spec;
  std::size_t n_features = 0;
  std::optional<Standardizer> standardizer;
  std::variant<LogRegModel, KnnModel, ForestModel> params;
};

/// Fits `spec` on (X, y). Throws DegenerateLabels for single-class data
/// (LogReg, forest) and InvalidParameter for k > rows.
TrainedModel train(const ModelSpec& spec, const FeatureMatrix& X, std::span<const Label> y);

/// Probability-like score of class +1 per row, in [0, 1].
std::vector<double> predict_scores(const TrainedModel& model, const FeatureMatrix& X);

/// +1 where score >= threshold. KNN needs a strict vote majority, so an
/// exact tie goes to -1.
std::vector<Label> predict_labels(const TrainedModel& model, const FeatureMatrix& X,
                                  double threshold = 0.5);

/// Versioned JSON snapshot; reloading reproduces predictions bit for bit.
std::string model_to_json(const TrainedModel& model);
TrainedModel model_from_json(std::string_view text);
void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace fdts

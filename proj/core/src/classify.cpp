#include "fdts/classify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

#include "csv.hpp"
#include "fdts/error.hpp"
#include "fdts/parallel.hpp"
#include "json.hpp"

namespace fdts {

namespace {

using nlohmann::json;

constexpr int kModelFormatVersion = 1;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_labels(std::span<const Label> y) {
  for (Label l : y) {
    if (!is_valid(l)) throw Error(ErrorKind::Input, "labels must be -1 or +1");
  }
}

bool has_both_classes(std::span<const Label> y) {
  const bool pos = std::any_of(y.begin(), y.end(), [](Label l) { return l == Label::Positive; });
  const bool neg = std::any_of(y.begin(), y.end(), [](Label l) { return l == Label::Negative; });
  return pos && neg;
}

double sigmoid(double s) {
  if (s >= 0.0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

// ---------------------------------------------------------------- logreg

LogRegModel fit_logreg(const LogRegSpec& spec, const FeatureMatrix& X, std::span<const Label> y) {
  const std::size_t n = X.rows();
  const std::size_t p = X.cols();
  const double nd = static_cast<double>(n);

  // Step 1/L with L bounding the Hessian of the averaged objective:
  // 0.25 * lambda_max(X1'X1) / n + l2 / n, lambda_max bounded by the
  // smaller of the trace and the largest Gershgorin row sum.
  std::vector<double> gram((p + 1) * (p + 1), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = X.row(i);
    for (std::size_t a = 0; a <= p; ++a) {
      const double xa = a == 0 ? 1.0 : row[a - 1];
      for (std::size_t b = 0; b <= p; ++b) {
        const double xb = b == 0 ? 1.0 : row[b - 1];
        gram[a * (p + 1) + b] += xa * xb;
      }
    }
  }
  double trace = 0.0;
  double gershgorin = 0.0;
  for (std::size_t a = 0; a <= p; ++a) {
    trace += gram[a * (p + 1) + a];
    double row_sum = 0.0;
    for (std::size_t b = 0; b <= p; ++b) row_sum += std::abs(gram[a * (p + 1) + b]);
    gershgorin = std::max(gershgorin, row_sum);
  }
  const double lipschitz = (0.25 * std::min(trace, gershgorin) + spec.l2) / nd;
  const double step = 1.0 / lipschitz;

  LogRegModel model;
  model.coef.assign(p, 0.0);
  std::vector<double> grad(p);
  for (std::size_t iter = 0; iter < spec.max_iter; ++iter) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = X.row(i);
      double s = model.intercept;
      for (std::size_t j = 0; j < p; ++j) s += model.coef[j] * row[j];
      const double target = y[i] == Label::Positive ? 1.0 : 0.0;
      const double residual = sigmoid(s) - target;
      grad_b += residual;
      for (std::size_t j = 0; j < p; ++j) grad[j] += residual * row[j];
    }
    double norm2 = (grad_b / nd) * (grad_b / nd);
    for (std::size_t j = 0; j < p; ++j) {
      grad[j] = (grad[j] + spec.l2 * model.coef[j]) / nd;
      norm2 += grad[j] * grad[j];
    }
    grad_b /= nd;
    model.iterations = iter;
    model.gradient_norm = std::sqrt(norm2);
    if (model.gradient_norm < spec.tolerance) break;

    model.intercept -= step * grad_b;
    for (std::size_t j = 0; j < p; ++j) model.coef[j] -= step * grad[j];
    model.iterations = iter + 1;
  }
  return model;
}

// ---------------------------------------------------------------- knn

double knn_score(const KnnModel& model, std::size_t k, std::span<const double> x) {
  const std::size_t n = model.X.rows();
  std::vector<std::pair<double, std::size_t>> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = model.X.row(i);
    double d2 = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) d2 += (row[j] - x[j]) * (row[j] - x[j]);
    dist[i] = {d2, i};
  }
  // Pair ordering breaks distance ties by the lower training index.
  std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(k), dist.end());
  std::size_t positive = 0;
  for (std::size_t i = 0; i < k; ++i) {
    if (model.y[dist[i].second] == Label::Positive) ++positive;
  }
  return static_cast<double>(positive) / static_cast<double>(k);
}

// ---------------------------------------------------------------- forest

std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

double impurity(SplitCriterion criterion, double positive, double total) {
  if (total <= 0.0) return 0.0;
  const double p = positive / total;
  const double q = 1.0 - p;
  if (criterion == SplitCriterion::Gini) return 1.0 - p * p - q * q;
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (q > 0.0) h -= q * std::log2(q);
  return h;
}

struct SplitChoice {
  bool valid = false;
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

struct PendingLeaf {
  int node = 0;
  std::vector<std::size_t> samples;
  SplitChoice split;
};

class TreeBuilder {
 public:
  TreeBuilder(const FeatureMatrix& X, std::span<const Label> y, const ForestSpec& spec,
              std::mt19937_64& rng)
      : X_(X), y_(y), spec_(spec), rng_(rng),
        mtry_(std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(std::sqrt(
                                           static_cast<double>(X.cols())))))) {}

  DecisionTree build(std::vector<std::size_t> samples) {
    DecisionTree tree;
    tree.nodes.emplace_back();
    auto cmp = [](const PendingLeaf& a, const PendingLeaf& b) {
      if (a.split.gain != b.split.gain) return a.split.gain < b.split.gain;
      return a.node > b.node;
    };
    std::priority_queue<PendingLeaf, std::vector<PendingLeaf>, decltype(cmp)> frontier(cmp);

    set_leaf(tree.nodes[0], samples);
    PendingLeaf root{0, std::move(samples), {}};
    root.split = best_split(root.samples);
    if (root.split.valid) frontier.push(std::move(root));

    std::size_t leaves = 1;
    while (leaves < spec_.max_leaf_nodes && !frontier.empty()) {
      PendingLeaf leaf = frontier.top();
      frontier.pop();

      std::vector<std::size_t> left, right;
      for (std::size_t s : leaf.samples) {
        (X_(s, static_cast<std::size_t>(leaf.split.feature)) <= leaf.split.threshold ? left : right)
            .push_back(s);
      }
      const int left_id = static_cast<int>(tree.nodes.size());
      const int right_id = left_id + 1;
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      TreeNode& parent = tree.nodes[static_cast<std::size_t>(leaf.node)];
      parent.feature = leaf.split.feature;
      parent.threshold = leaf.split.threshold;
      parent.left = left_id;
      parent.right = right_id;
      set_leaf(tree.nodes[static_cast<std::size_t>(left_id)], left);
      set_leaf(tree.nodes[static_cast<std::size_t>(right_id)], right);
      ++leaves;

      for (auto [id, part] : {std::pair{left_id, &left}, std::pair{right_id, &right}}) {
        PendingLeaf child{id, std::move(*part), {}};
        child.split = best_split(child.samples);
        if (child.split.valid) frontier.push(std::move(child));
      }
    }
    return tree;
  }

 private:
  void set_leaf(TreeNode& node, const std::vector<std::size_t>& samples) const {
    std::size_t positive = 0;
    for (std::size_t s : samples) positive += y_[s] == Label::Positive ? 1 : 0;
    node.feature = -1;
    node.vote = 2 * positive > samples.size() ? 1.0 : 0.0;
  }

  SplitChoice best_split(const std::vector<std::size_t>& samples) {
    SplitChoice best;
    const auto total = static_cast<double>(samples.size());
    double positive = 0.0;
    for (std::size_t s : samples) positive += y_[s] == Label::Positive ? 1.0 : 0.0;
    const double parent = impurity(spec_.criterion, positive, total);
    if (samples.size() < 2 || parent <= 0.0) return best;

    // Visit features in random order; only non-constant ones count toward mtry.
    std::vector<std::size_t> features(X_.cols());
    std::iota(features.begin(), features.end(), 0);
    for (std::size_t i = features.size(); i > 1; --i) {
      std::swap(features[i - 1], features[draw_below(rng_, i)]);
    }

    std::vector<std::pair<double, std::size_t>> column(samples.size());
    std::size_t informative = 0;
    for (std::size_t f : features) {
      if (informative >= mtry_) break;
      for (std::size_t i = 0; i < samples.size(); ++i) column[i] = {X_(samples[i], f), samples[i]};
      std::sort(column.begin(), column.end());
      if (column.front().first == column.back().first) continue;
      ++informative;

      double left_pos = 0.0;
      for (std::size_t i = 0; i + 1 < column.size(); ++i) {
        left_pos += y_[column[i].second] == Label::Positive ? 1.0 : 0.0;
        if (column[i].first == column[i + 1].first) continue;
        const auto left_n = static_cast<double>(i + 1);
        const double right_n = total - left_n;
        const double gain = total * parent -
                            left_n * impurity(spec_.criterion, left_pos, left_n) -
                            right_n * impurity(spec_.criterion, positive - left_pos, right_n);
        if (gain > best.gain) {
          best.valid = true;
          best.gain = gain;
          best.feature = static_cast<int>(f);
          best.threshold = 0.5 * (column[i].first + column[i + 1].first);
        }
      }
    }
    return best;
  }

  const FeatureMatrix& X_;
  std::span<const Label> y_;
  const ForestSpec& spec_;
  std::mt19937_64& rng_;
  std::size_t mtry_;
};

ForestModel fit_forest(const ForestSpec& spec, const FeatureMatrix& X, std::span<const Label> y) {
  ForestModel model;
  model.trees.resize(spec.n_trees);
  const std::size_t n = X.rows();
  parallel_for(spec.n_trees, [&](std::size_t t) {
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed & 0xffffffffu),
                      static_cast<std::uint32_t>(spec.seed >> 32), static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    std::vector<std::size_t> bootstrap(n);
    for (std::size_t& s : bootstrap) s = draw_below(rng, n);
    TreeBuilder builder(X, y, spec, rng);
    model.trees[t] = builder.build(std::move(bootstrap));
  });
  return model;
}

// ---------------------------------------------------------------- json

const char* criterion_name(SplitCriterion c) {
  return c == SplitCriterion::Gini ? "gini" : "entropy";
}

SplitCriterion parse_criterion(std::string_view text) {
  const std::string key = detail::lower(text);
  if (key == "gini") return SplitCriterion::Gini;
  if (key == "entropy") return SplitCriterion::Entropy;
  throw Error(ErrorKind::InvalidParameter, "unknown split criterion '" + std::string(text) + "'");
}

json spec_to_json(const ModelSpec& spec) {
  json j;
  j["standardize"] = spec.standardize;
  std::visit(Overloaded{
                 [&](const LogRegSpec& s) {
                   j["kind"] = "logreg";
                   j["l2"] = s.l2;
                   j["tolerance"] = s.tolerance;
                   j["max_iter"] = s.max_iter;
                 },
                 [&](const KnnSpec& s) {
                   j["kind"] = "knn";
                   j["k"] = s.k;
                 },
                 [&](const ForestSpec& s) {
                   j["kind"] = "forest";
                   j["criterion"] = criterion_name(s.criterion);
                   j["max_leaf_nodes"] = s.max_leaf_nodes;
                   j["n_trees"] = s.n_trees;
                   j["seed"] = s.seed;
                 },
             },
             spec.kind);
  return j;
}

ModelSpec spec_from_json(const json& j) {
  ModelSpec spec;
  spec.standardize = j.at("standardize").get<bool>();
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "logreg") {
    spec.kind = LogRegSpec{j.at("l2").get<double>(), j.at("tolerance").get<double>(),
                           j.at("max_iter").get<std::size_t>()};
  } else if (kind == "knn") {
    spec.kind = KnnSpec{j.at("k").get<std::size_t>()};
  } else if (kind == "forest") {
    spec.kind = ForestSpec{parse_criterion(j.at("criterion").get<std::string>()),
                           j.at("max_leaf_nodes").get<std::size_t>(),
                           j.at("n_trees").get<std::size_t>(), j.at("seed").get<std::uint64_t>()};
  } else {
    throw Error(ErrorKind::Input, "unknown model kind '" + kind + "'");
  }
  return spec;
}

json matrix_to_json(const FeatureMatrix& m) {
  return json{{"rows", m.rows()}, {"cols", m.cols()},
              {"data", std::vector<double>(m.data().begin(), m.data().end())}};
}

FeatureMatrix matrix_from_json(const json& j) {
  FeatureMatrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  const auto data = j.at("data").get<std::vector<double>>();
  if (data.size() != m.rows() * m.cols()) throw Error(ErrorKind::Input, "matrix size mismatch");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = data[r * m.cols() + c];
  }
  return m;
}

void validate_spec(const ModelSpec& spec) {
  std::visit(Overloaded{
                 [](const LogRegSpec& s) {
                   if (!(s.l2 >= 0.0) || !(s.tolerance > 0.0) || s.max_iter == 0) {
                     throw Error(ErrorKind::InvalidParameter, "invalid logistic regression spec");
                   }
                 },
                 [](const KnnSpec& s) {
                   if (s.k < 1) throw Error(ErrorKind::InvalidParameter, "k must be at least 1");
                 },
                 [](const ForestSpec& s) {
                   if (s.max_leaf_nodes < 2) {
                     throw Error(ErrorKind::InvalidParameter, "max_leaf_nodes must be at least 2");
                   }
                   if (s.n_trees < 1) {
                     throw Error(ErrorKind::InvalidParameter, "n_trees must be at least 1");
                   }
                 },
             },
             spec.kind);
}

std::size_t parse_count(std::string_view text, const char* what) {
  double v = 0.0;
  if (!detail::parse_number(std::string(text), v) || v < 0.0 || std::floor(v) != v) {
    throw Error(ErrorKind::InvalidParameter,
                std::string("invalid ") + what + " '" + std::string(text) + "'");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

ModelSpec parse_model_spec(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    parts.emplace_back(text.substr(start, colon == text.npos ? text.npos : colon - start));
    if (colon == text.npos) break;
    start = colon + 1;
  }
  const std::string kind = detail::lower(parts[0]);
  ModelSpec spec;
  if (kind == "logreg") {
    LogRegSpec s;
    if (parts.size() > 2) throw Error(ErrorKind::InvalidParameter, "usage: logreg[:L2]");
    if (parts.size() == 2 && !detail::parse_number(parts[1], s.l2)) {
      throw Error(ErrorKind::InvalidParameter, "invalid l2 '" + parts[1] + "'");
    }
    spec.kind = s;
  } else if (kind == "knn") {
    if (parts.size() != 2) throw Error(ErrorKind::InvalidParameter, "usage: knn:K");
    spec.kind = KnnSpec{parse_count(parts[1], "k")};
  } else if (kind == "rf" || kind == "forest") {
    if (parts.size() < 3 || parts.size() > 5) {
      throw Error(ErrorKind::InvalidParameter, "usage: rf:gini|entropy:LEAVES[:TREES[:SEED]]");
    }
    ForestSpec s;
    s.criterion = parse_criterion(parts[1]);
    s.max_leaf_nodes = parse_count(parts[2], "max_leaf_nodes");
    if (parts.size() > 3) s.n_trees = parse_count(parts[3], "n_trees");
    if (parts.size() > 4) s.seed = parse_count(parts[4], "seed");
    spec.kind = s;
  } else {
    throw Error(ErrorKind::InvalidParameter, "unknown model '" + std::string(text) + "'");
  }
  validate_spec(spec);
  return spec;
}

std::string describe(const ModelSpec& spec) {
  return std::visit(
      Overloaded{
          [](const LogRegSpec&) { return std::string("LogReg"); },
          [](const KnnSpec& s) { return "KNN (k = " + std::to_string(s.k) + ")"; },
          [](const ForestSpec& s) {
            return std::string("RForest (") + criterion_name(s.criterion) +
                   ", nodes = " + std::to_string(s.max_leaf_nodes) + ")";
          },
      },
      spec.kind);
}

Standardizer Standardizer::fit(const FeatureMatrix& X) {
  Standardizer s;
  const std::size_t n = X.rows();
  s.mean.assign(X.cols(), 0.0);
  s.scale.assign(X.cols(), 1.0);
  for (std::size_t c = 0; c < X.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += X(r, c);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t r = 0; r < n; ++r) var += (X(r, c) - mean) * (X(r, c) - mean);
    var /= static_cast<double>(n);
    s.mean[c] = mean;
    // Constant columns are centred but left unscaled.
    s.scale[c] = var > 0.0 ? std::sqrt(var) : 1.0;
  }
  return s;
}

FeatureMatrix Standardizer::apply(const FeatureMatrix& X) const {
  if (X.cols() != mean.size()) throw Error(ErrorKind::Shape, "feature count mismatch");
  FeatureMatrix out(X.rows(), X.cols());
  for (std::size_t r = 0; r < X.rows(); ++r) {
    for (std::size_t c = 0; c < X.cols(); ++c) out(r, c) = (X(r, c) - mean[c]) / scale[c];
  }
  return out;
}

double DecisionTree::predict(std::span<const double> x) const {
  std::size_t id = 0;
  while (nodes[id].feature >= 0) {
    const TreeNode& node = nodes[id];
    id = static_cast<std::size_t>(x[static_cast<std::size_t>(node.feature)] <= node.threshold
                                      ? node.left
                                      : node.right);
  }
  return nodes[id].vote;
}

std::size_t DecisionTree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes.begin(), nodes.end(), [](const TreeNode& n) { return n.feature < 0; }));
}

TrainedModel train(const ModelSpec& spec, const FeatureMatrix& X, std::span<const Label> y) {
  validate_spec(spec);
  if (X.rows() != y.size()) throw Error(ErrorKind::Shape, "feature rows and labels differ");
  if (X.rows() < 2) throw Error(ErrorKind::InsufficientData, "training needs at least two rows");
  if (X.cols() == 0) throw Error(ErrorKind::Shape, "training needs at least one feature");
  check_labels(y);

  TrainedModel model;
  model.spec = spec;
  model.n_features = X.cols();
  FeatureMatrix prepared = X;
  if (spec.standardize) {
    model.standardizer = Standardizer::fit(X);
    prepared = model.standardizer->apply(X);
  }

  std::visit(Overloaded{
                 [&](const LogRegSpec& s) {
                   if (!has_both_classes(y)) {
                     throw Error(ErrorKind::DegenerateLabels, "training labels have one class");
                   }
                   model.params = fit_logreg(s, prepared, y);
                 },
                 [&](const KnnSpec& s) {
                   if (s.k > prepared.rows()) {
                     throw Error(ErrorKind::InvalidParameter,
                                 "k = " + std::to_string(s.k) + " exceeds " +
                                     std::to_string(prepared.rows()) + " training rows");
                   }
                   model.params = KnnModel{std::move(prepared), {y.begin(), y.end()}};
                 },
                 [&](const ForestSpec& s) {
                   if (!has_both_classes(y)) {
                     throw Error(ErrorKind::DegenerateLabels, "training labels have one class");
                   }
                   model.params = fit_forest(s, prepared, y);
                 },
             },
             spec.kind);
  return model;
}

std::vector<double> predict_scores(const TrainedModel& model, const FeatureMatrix& X) {
  if (X.cols() != model.n_features) {
    throw Error(ErrorKind::Shape, "model expects " + std::to_string(model.n_features) +
                                      " features, got " + std::to_string(X.cols()));
  }
  const FeatureMatrix prepared = model.standardizer ? model.standardizer->apply(X) : X;
  std::vector<double> scores(prepared.rows());

  std::visit(Overloaded{
                 [&](const LogRegModel& m) {
                   for (std::size_t r = 0; r < prepared.rows(); ++r) {
                     const auto row = prepared.row(r);
                     double s = m.intercept;
                     for (std::size_t j = 0; j < row.size(); ++j) s += m.coef[j] * row[j];
                     scores[r] = sigmoid(s);
                   }
                 },
                 [&](const KnnModel& m) {
                   const std::size_t k = std::get<KnnSpec>(model.spec.kind).k;
                   parallel_for(prepared.rows(), [&](std::size_t r) {
                     scores[r] = knn_score(m, k, prepared.row(r));
                   });
                 },
                 [&](const ForestModel& m) {
                   for (std::size_t r = 0; r < prepared.rows(); ++r) {
                     double votes = 0.0;
                     for (const DecisionTree& tree : m.trees) votes += tree.predict(prepared.row(r));
                     scores[r] = votes / static_cast<double>(m.trees.size());
                   }
                 },
             },
             model.params);
  return scores;
}

std::vector<Label> predict_labels(const TrainedModel& model, const FeatureMatrix& X,
                                  double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "threshold must lie in (0, 1)");
  }
  const bool strict = std::holds_alternative<KnnModel>(model.params);
  const std::vector<double> scores = predict_scores(model, X);
  std::vector<Label> labels(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool positive = strict ? scores[i] > threshold : scores[i] >= threshold;
    labels[i] = positive ? Label::Positive : Label::Negative;
  }
  return labels;
}

std::string model_to_json(const TrainedModel& model) {
  json j;
  j["format"] = "fdts-model";
  j["version"] = kModelFormatVersion;
  j["spec"] = spec_to_json(model.spec);
  j["n_features"] = model.n_features;
  if (model.standardizer) {
    j["standardizer"] = {{"mean", model.standardizer->mean}, {"scale", model.standardizer->scale}};
  } else {
    j["standardizer"] = nullptr;
  }
  std::visit(Overloaded{
                 [&](const LogRegModel& m) {
                   j["params"] = {{"coef", m.coef},
                                  {"intercept", m.intercept},
                                  {"iterations", m.iterations},
                                  {"gradient_norm", m.gradient_norm}};
                 },
                 [&](const KnnModel& m) {
                   std::vector<int> labels;
                   for (Label l : m.y) labels.push_back(to_int(l));
                   j["params"] = {{"X", matrix_to_json(m.X)}, {"y", labels}};
                 },
                 [&](const ForestModel& m) {
                   json trees = json::array();
                   for (const DecisionTree& t : m.trees) {
                     json nodes = json::array();
                     for (const TreeNode& n : t.nodes) {
                       nodes.push_back({n.feature, n.threshold, n.left, n.right, n.vote});
                     }
                     trees.push_back(std::move(nodes));
                   }
                   j["params"] = {{"trees", std::move(trees)}};
                 },
             },
             model.params);
  return j.dump();
}

TrainedModel model_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Input, std::string("model snapshot is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("format") != "fdts-model") throw Error(ErrorKind::Input, "not a model snapshot");
    if (j.at("version").get<int>() != kModelFormatVersion) {
      throw Error(ErrorKind::Input, "unsupported model snapshot version");
    }
    TrainedModel model;
    model.spec = spec_from_json(j.at("spec"));
    model.n_features = j.at("n_features").get<std::size_t>();
    if (!j.at("standardizer").is_null()) {
      model.standardizer = Standardizer{j["standardizer"].at("mean").get<std::vector<double>>(),
                                        j["standardizer"].at("scale").get<std::vector<double>>()};
    }
    const json& p = j.at("params");
    if (std::holds_alternative<LogRegSpec>(model.spec.kind)) {
      model.params = LogRegModel{p.at("coef").get<std::vector<double>>(),
                                 p.at("intercept").get<double>(),
                                 p.at("iterations").get<std::size_t>(),
                                 p.at("gradient_norm").get<double>()};
    } else if (std::holds_alternative<KnnSpec>(model.spec.kind)) {
      KnnModel m{matrix_from_json(p.at("X")), {}};
      for (int l : p.at("y").get<std::vector<int>>()) m.y.push_back(static_cast<Label>(l));
      check_labels(m.y);
      model.params = std::move(m);
    } else {
      ForestModel m;
      for (const json& tree : p.at("trees")) {
        DecisionTree t;
        for (const json& n : tree) {
          t.nodes.push_back(TreeNode{n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(),
                                     n.at(3).get<int>(), n.at(4).get<double>()});
        }
        m.trees.push_back(std::move(t));
      }
      model.params = std::move(m);
    }
    return model;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Input, std::string("malformed model snapshot: ") + e.what());
  }
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << model_to_json(model) << '\n';
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace fdts

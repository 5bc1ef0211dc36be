#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "fdts/classify.hpp"
#include "fdts/error.hpp"
#include "fdts/synthetic.hpp"
#include "support.hpp"

namespace fdts {
namespace {

struct Data {
  FeatureMatrix X;
  std::vector<Label> y;
};

// Two informative features plus noise; the class is the sign of a linear score.
Data linear_data(std::uint64_t seed, std::size_t n, double margin, double label_noise) {
  const std::vector<double> z = gaussian_noise(seed, 4 * n);
  Data d{FeatureMatrix(0, 3), {}};
  for (std::size_t i = 0; i < n; ++i) {
    const double a = z[4 * i], b = 3.0 * z[4 * i + 1] + 10.0, c = z[4 * i + 2];
    const double score = a + 0.5 * (b - 10.0) + label_noise * z[4 * i + 3];
    const double shift = score >= 0 ? margin : -margin;
    const std::vector<double> row{a + shift, b, c};
    d.X.append_row(row);
    d.y.push_back(score >= 0 ? Label::Positive : Label::Negative);
  }
  return d;
}

double accuracy(std::span<const Label> a, std::span<const Label> b) {
  std::size_t same = 0;
  for (std::size_t i = 0; i < a.size(); ++i) same += a[i] == b[i];
  return static_cast<double>(same) / static_cast<double>(a.size());
}

ModelSpec forest(std::size_t leaves, std::size_t trees, std::uint64_t seed,
                 SplitCriterion c = SplitCriterion::Gini) {
  return ModelSpec{ForestSpec{c, leaves, trees, seed}, true};
}

TEST(ModelSpecText, ParsesAndDescribes) {
  EXPECT_EQ(std::get<LogRegSpec>(parse_model_spec("logreg").kind).l2, 1.0);
  EXPECT_EQ(std::get<LogRegSpec>(parse_model_spec("logreg:0.5").kind).l2, 0.5);
  EXPECT_EQ(std::get<KnnSpec>(parse_model_spec("knn:200").kind).k, 200u);
  const ForestSpec f = std::get<ForestSpec>(parse_model_spec("rf:entropy:50").kind);
  EXPECT_EQ(f.criterion, SplitCriterion::Entropy);
  EXPECT_EQ(f.max_leaf_nodes, 50u);
  EXPECT_EQ(f.n_trees, 100u);
  const ForestSpec g = std::get<ForestSpec>(parse_model_spec("rf:gini:10:7:42").kind);
  EXPECT_EQ(g.n_trees, 7u);
  EXPECT_EQ(g.seed, 42u);
  EXPECT_EQ(describe(parse_model_spec("knn:200")), "KNN (k = 200)");
  EXPECT_EQ(describe(parse_model_spec("rf:entropy:50")), "RForest (entropy, nodes = 50)");
  EXPECT_EQ(describe(parse_model_spec("logreg")), "LogReg");
  for (const char* bad : {"svm", "knn", "knn:0", "knn:2.5", "rf:gini", "rf:mse:10", "rf:gini:1", "rf:gini:10:0", "logreg:x"}) {
    EXPECT_THROW(parse_model_spec(bad), Error) << bad;
  }
}

TEST(LogReg, MatchesScikitLearn) {
  const auto& o = test::oracles()["logreg"];
  Data d{FeatureMatrix(0, 3), {}};
  for (const auto& row : o["X"]) d.X.append_row(row.get<std::vector<double>>());
  for (int v : o["y"].get<std::vector<int>>()) d.y.push_back(static_cast<Label>(v));
  const TrainedModel m = train(ModelSpec{LogRegSpec{1.0, 1e-10, 100000}, true}, d.X, d.y);
  const auto& p = std::get<LogRegModel>(m.params);
  const auto coef = o["coef"].get<std::vector<double>>();
  for (std::size_t j = 0; j < coef.size(); ++j) EXPECT_NEAR(p.coef[j], coef[j], 1e-6) << j;
  EXPECT_NEAR(p.intercept, o["intercept"].get<double>(), 1e-6);
  EXPECT_LT(p.gradient_norm, 1e-10);
  const auto expected = o["scores"].get<std::vector<double>>();
  const auto scores = predict_scores(m, d.X);
  for (std::size_t i = 0; i < scores.size(); ++i) EXPECT_NEAR(scores[i], expected[i], 1e-7);
}

TEST(LogReg, SeparableTrainingAccuracy) {
  const Data d = linear_data(1, 400, 0.5, 0.0);
  const TrainedModel m = train(ModelSpec{}, d.X, d.y);
  EXPECT_GE(accuracy(predict_labels(m, d.X), d.y), 0.99);
}

TEST(LogReg, ZeroCoefficientsScoreHalfAndThresholdBoundary) {
  TrainedModel m;
  m.n_features = 2;
  m.params = LogRegModel{{0.0, 0.0}, 0.0, 0, 0.0};
  FeatureMatrix X(3, 2);
  X(1, 0) = 5.0;
  X(2, 1) = -7.0;
  for (double s : predict_scores(m, X)) EXPECT_EQ(s, 0.5);
  for (Label l : predict_labels(m, X, 0.5)) EXPECT_EQ(l, Label::Positive);
  EXPECT_THROW(predict_labels(m, X, 0.0), Error);
  EXPECT_THROW(predict_labels(m, X, 1.0), Error);
}

TEST(LogReg, LabelsInvariantUnderColumnScaling) {
  const Data d = linear_data(2, 300, 0.0, 0.5);
  Data scaled = d;
  for (std::size_t r = 0; r < scaled.X.rows(); ++r) scaled.X(r, 1) *= 1000.0;
  const auto a = predict_labels(train(ModelSpec{}, d.X, d.y), d.X);
  const auto b = predict_labels(train(ModelSpec{}, scaled.X, scaled.y), scaled.X);
  EXPECT_EQ(a, b);
}

TEST(Knn, OneNeighbourMemorises) {
  const Data d = linear_data(3, 250, 0.0, 1.0);
  const TrainedModel m = train(ModelSpec{KnnSpec{1}, true}, d.X, d.y);
  EXPECT_EQ(predict_labels(m, d.X), d.y);
}

TEST(Knn, VoteFractionAndTieRule) {
  FeatureMatrix X(0, 1);
  std::vector<Label> y;
  const double xs[] = {0.0, 1.0, 2.0, 3.0, 4.0, 10.0, 11.0};
  const Label ys[] = {Label::Positive, Label::Negative, Label::Positive, Label::Negative,
                      Label::Positive, Label::Negative, Label::Negative};
  for (int i = 0; i < 7; ++i) {
    X.append_row(std::vector<double>{xs[i]});
    y.push_back(ys[i]);
  }
  FeatureMatrix q(1, 1);
  q(0, 0) = 2.0;
  const TrainedModel five = train(ModelSpec{KnnSpec{5}, false}, X, y);
  EXPECT_DOUBLE_EQ(predict_scores(five, q)[0], 0.6);

  const TrainedModel four = train(ModelSpec{KnnSpec{4}, false}, X, y);
  // Neighbours of 2: {2, 1, 3} then a distance tie between 0 and 4 broken
  // toward index 0; two of four vote +1, so the tie goes to -1.
  EXPECT_DOUBLE_EQ(predict_scores(four, q)[0], 0.5);
  EXPECT_EQ(predict_labels(four, q)[0], Label::Negative);
}

TEST(Knn, TrainingRowOrderDoesNotMatter) {
  const Data d = linear_data(4, 200, 0.0, 1.0);
  std::vector<std::size_t> perm(d.y.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(5));
  Data p{FeatureMatrix(0, 3), {}};
  for (std::size_t i : perm) {
    p.X.append_row(d.X.row(i));
    p.y.push_back(d.y[i]);
  }
  const Data q = linear_data(6, 100, 0.0, 1.0);
  EXPECT_EQ(predict_scores(train(ModelSpec{KnnSpec{7}, true}, d.X, d.y), q.X),
            predict_scores(train(ModelSpec{KnnSpec{7}, true}, p.X, p.y), q.X));
}

TEST(Forest, SeedDeterminismAndSingleTreeScores) {
  const Data d = linear_data(7, 300, 0.0, 0.7);
  const auto a = predict_scores(train(forest(20, 30, 9), d.X, d.y), d.X);
  const auto b = predict_scores(train(forest(20, 30, 9), d.X, d.y), d.X);
  EXPECT_EQ(a, b);
  const auto c = predict_scores(train(forest(20, 30, 10), d.X, d.y), d.X);
  EXPECT_NE(a, c);

  const TrainedModel one = train(forest(8, 1, 3, SplitCriterion::Entropy), d.X, d.y);
  for (double s : predict_scores(one, d.X)) EXPECT_TRUE(s == 0.0 || s == 1.0);
  const auto& tree = std::get<ForestModel>(one.params).trees.at(0);
  EXPECT_EQ(tree.leaf_count(), 8u);
  EXPECT_EQ(tree.nodes.size(), 15u);
}

TEST(Forest, DeterministicAcrossThreadCounts) {
  const Data d = linear_data(8, 300, 0.0, 0.7);
  setenv("FRACDIFF_THREADS", "1", 1);
  const auto serial = predict_scores(train(forest(16, 12, 1), d.X, d.y), d.X);
  setenv("FRACDIFF_THREADS", "3", 1);
  const auto threaded = predict_scores(train(forest(16, 12, 1), d.X, d.y), d.X);
  unsetenv("FRACDIFF_THREADS");
  EXPECT_EQ(serial, threaded);
}

TEST(Forest, LearnsSignal) {
  const Data d = linear_data(9, 600, 0.3, 0.0);
  const Data test = linear_data(10, 300, 0.3, 0.0);
  const TrainedModel m = train(forest(50, 50, 0), d.X, d.y);
  EXPECT_GE(accuracy(predict_labels(m, test.X), test.y), 0.9);
}

TEST(Forest, VoteVarianceShrinksWithMoreTrees) {
  const Data d = linear_data(11, 200, 0.0, 1.0);
  const Data q = linear_data(12, 40, 0.0, 1.0);
  std::vector<double> spread;
  for (std::size_t trees : {10u, 100u, 500u}) {
    std::vector<std::vector<double>> runs;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      runs.push_back(predict_scores(train(forest(10, trees, seed), d.X, d.y), q.X));
    }
    double total = 0.0;
    for (std::size_t i = 0; i < q.X.rows(); ++i) {
      double mean = 0.0;
      for (const auto& r : runs) mean += r[i];
      mean /= static_cast<double>(runs.size());
      for (const auto& r : runs) total += (r[i] - mean) * (r[i] - mean);
    }
    spread.push_back(total);
  }
  EXPECT_GT(spread[0], spread[1]);
  EXPECT_GT(spread[1], spread[2]);
}

TEST(Train, Errors) {
  const Data d = linear_data(13, 50, 0.0, 0.0);
  const std::vector<Label> single(50, Label::Positive);
  const auto kind_of = [](const std::function<void()>& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Io;
  };
  EXPECT_EQ(kind_of([&] { train(ModelSpec{}, d.X, single); }), ErrorKind::DegenerateLabels);
  EXPECT_EQ(kind_of([&] { train(forest(4, 2, 0), d.X, single); }), ErrorKind::DegenerateLabels);
  EXPECT_EQ(kind_of([&] { train(ModelSpec{KnnSpec{51}, true}, d.X, d.y); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(kind_of([&] { train(ModelSpec{}, d.X, std::span(d.y).first(10)); }), ErrorKind::Shape);

  const TrainedModel m = train(ModelSpec{}, d.X, d.y);
  EXPECT_EQ(kind_of([&] { predict_scores(m, FeatureMatrix(2, 2)); }), ErrorKind::Shape);
}

TEST(Persistence, ReloadPredictsIdentically) {
  const Data d = linear_data(14, 200, 0.0, 0.8);
  const Data q = linear_data(15, 60, 0.0, 0.8);
  const auto dir = test::scratch_dir("persistence");
  for (const ModelSpec& spec : {ModelSpec{}, ModelSpec{KnnSpec{9}, true}, forest(12, 15, 4, SplitCriterion::Entropy),
                                ModelSpec{LogRegSpec{}, false}}) {
    const TrainedModel m = train(spec, d.X, d.y);
    save_model(m, dir / "model.json");
    const TrainedModel back = load_model(dir / "model.json");
    EXPECT_EQ(predict_scores(m, q.X), predict_scores(back, q.X)) << describe(spec);
    EXPECT_EQ(model_to_json(back), model_to_json(m));
  }
  EXPECT_THROW(model_from_json("{\"format\":\"other\"}"), Error);
  EXPECT_THROW(model_from_json("not json"), Error);
  EXPECT_THROW(load_model(dir / "missing.json"), Error);
}

}  // namespace
}  // namespace fdts

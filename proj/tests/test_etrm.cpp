#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "gpsel/etrm.hpp"
#include "gpsel/rng.hpp"
#include "helpers.hpp"

using namespace gpsel;

namespace {

/// Independent objective evaluation: min over w (located by ternary search,
/// no closed form) of sum((r_i - w)^2) + lambda*w^2.
double leaf_objective(const std::vector<double>& residuals, double lambda) {
  auto value = [&](double w) {
    double s = lambda * w * w;
    for (double r : residuals) s += (r - w) * (r - w);
    return s;
  };
  double lo = -1e4, hi = 1e4;
  for (int i = 0; i < 300; ++i) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (value(m1) < value(m2)) hi = m2;
    else lo = m1;
  }
  return value((lo + hi) / 2.0);
}

/// Objective drop of a split: parent leaf versus two child leaves plus the
/// per-leaf penalty for the extra leaf.
double brute_force_gain(const std::vector<double>& left,
                        const std::vector<double>& right, double lambda,
                        double gamma) {
  std::vector<double> all = left;
  all.insert(all.end(), right.begin(), right.end());
  return leaf_objective(all, lambda) - leaf_objective(left, lambda) -
         leaf_objective(right, lambda) - gamma;
}

double gain_from_residuals(const std::vector<double>& left,
                           const std::vector<double>& right, double lambda,
                           double gamma) {
  double gl = 0.0, gr = 0.0;
  for (double r : left) gl += -r;
  for (double r : right) gr += -r;
  return etrm::split_gain(gl, double(left.size()), gr, double(right.size()),
                          lambda, gamma);
}

}  // namespace

TEST_CASE("identical children gain only the split penalty") {
  CHECK(etrm::split_gain(3.0, 2.0, 3.0, 2.0, 0.0, 0.5) == doctest::Approx(-0.5));
  // Equal G and H on both sides is never worth a split.
  CHECK(etrm::split_gain(1.0, 4.0, 1.0, 4.0, 0.7, 0.0) <= 1e-12);
}

TEST_CASE("hand-computed gain for a clean two-cluster split") {
  // Targets {0,0,4,4}, prediction 0 everywhere: residuals r = y, g = -y.
  // Unsplit: G=-8, H=4 -> -64/4 term; split halves: G_L=0, G_R=-8, H=2 each.
  const double gain = etrm::split_gain(0.0, 2.0, -8.0, 2.0, 0.0, 0.0);
  CHECK(gain == doctest::Approx(64.0 / 2.0 - 64.0 / 4.0));  // 16
  CHECK(gain == doctest::Approx(brute_force_gain({0.0, 0.0}, {4.0, 4.0}, 0.0, 0.0))
                    .epsilon(1e-9));
}

TEST_CASE("large gamma rejects any split") {
  const double gain = etrm::split_gain(0.0, 2.0, -8.0, 2.0, 0.0, 100.0);
  CHECK(gain < 0.0);
}

TEST_CASE("split gain equals the brute-force objective difference") {
  const CounterRng rng{1234};
  for (int fixture = 0; fixture < 25; ++fixture) {
    std::vector<double> left, right;
    const std::size_t nl = 2 + rng.below(fixture, 0, 9);
    const std::size_t nr = 2 + rng.below(fixture, 1, 9);
    for (std::size_t i = 0; i < nl; ++i) {
      left.push_back(rng.u01(fixture, 10 + i) * 20.0 - 10.0);
    }
    for (std::size_t i = 0; i < nr; ++i) {
      right.push_back(rng.u01(fixture, 100 + i) * 20.0 - 10.0);
    }
    const double lambda = rng.u01(fixture, 500) * 2.0;
    const double gamma = rng.u01(fixture, 501);
    CHECK(gain_from_residuals(left, right, lambda, gamma) ==
          doctest::Approx(brute_force_gain(left, right, lambda, gamma))
              .epsilon(1e-9));
  }
}

namespace {

etrm::TrainConfig tiny_config() {
  etrm::TrainConfig cfg;
  cfg.n_estimators = 1;
  cfg.max_depth = 2;
  cfg.learning_rate = 1.0;
  cfg.subsample = 1.0;
  cfg.colsample_bytree = 1.0;
  cfg.gamma = 0.0;
  cfg.reg_alpha = 0.0;
  cfg.reg_lambda = 0.0;
  cfg.min_child_weight = 1.0;
  return cfg;
}

}  // namespace

TEST_CASE("a single sample is predicted exactly") {
  etrm::EtrmModel model = etrm::train({{0.3, 0.7}}, {5.0}, tiny_config());
  CHECK(model.base == 5.0);
  CHECK(etrm::predict(model, std::vector<double>{0.3, 0.7}) == doctest::Approx(5.0));
}

TEST_CASE("a model with zero rounds predicts the target mean") {
  etrm::TrainConfig cfg = tiny_config();
  cfg.n_estimators = 0;
  etrm::EtrmModel model =
      etrm::train({{0.0}, {1.0}, {2.0}}, {2.0, 4.0, 9.0}, cfg);
  CHECK(model.trees.empty());
  CHECK(etrm::predict(model, std::vector<double>{5.0}) == doctest::Approx(5.0));
}

TEST_CASE("round one splits a two-cluster toy set at the boundary") {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  const CounterRng rng{7};
  for (int i = 0; i < 40; ++i) {
    const double v = rng.u01(0, i);
    x.push_back({v, rng.u01(1, i)});
    y.push_back(v < 0.5 ? 1.0 : 9.0);
  }
  etrm::TrainConfig cfg = tiny_config();
  cfg.max_depth = 1;
  etrm::EtrmModel model = etrm::train(x, y, cfg);
  REQUIRE(model.trees.size() == 1);
  const etrm::TreeNode& root = model.trees[0].nodes[0];
  REQUIRE(root.feature == 0);
  // Every row lands on its cluster's side of the threshold.
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK((x[i][0] <= root.threshold) == (y[i] == 1.0));
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(etrm::predict(model, x[i]) == doctest::Approx(y[i]).epsilon(1e-9));
  }
}

TEST_CASE("training loss never increases without subsampling") {
  const CounterRng rng{11};
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 120; ++i) {
    const double a = rng.u01(0, i), b = rng.u01(1, i), c = rng.u01(2, i);
    x.push_back({a, b, c});
    y.push_back(3.0 * a - 2.0 * b + 0.5 * a * c + 0.1 * rng.u01(3, i));
  }
  etrm::TrainConfig cfg;
  cfg.n_estimators = 50;
  cfg.max_depth = 4;
  cfg.learning_rate = 0.3;
  cfg.subsample = 1.0;
  cfg.colsample_bytree = 1.0;
  cfg.gamma = 0.0;
  cfg.reg_alpha = 0.0;
  etrm::EtrmModel model = etrm::train(x, y, cfg);
  REQUIRE(model.train_loss.size() == 50);
  for (std::size_t r = 1; r < model.train_loss.size(); ++r) {
    CHECK(model.train_loss[r] <= model.train_loss[r - 1] + 1e-12);
  }
}

TEST_CASE("heavy overfit memorizes the training points") {
  const CounterRng rng{13};
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 60; ++i) {
    x.push_back({rng.u01(0, i), rng.u01(1, i), rng.u01(2, i)});
    y.push_back(10.0 + 40.0 * rng.u01(4, i));
  }
  etrm::TrainConfig cfg;
  cfg.n_estimators = 400;
  cfg.max_depth = 15;
  cfg.learning_rate = 0.3;
  cfg.subsample = 1.0;
  cfg.colsample_bytree = 1.0;
  cfg.gamma = 0.0;
  cfg.reg_alpha = 0.0;
  cfg.reg_lambda = 0.01;
  cfg.min_child_weight = 1.0;
  etrm::EtrmModel model = etrm::train(x, y, cfg);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::fabs(etrm::predict(model, x[i]) - y[i]) / y[i] < 0.01);
  }
}

TEST_CASE("prediction is deterministic and checks dimensions") {
  etrm::EtrmModel model =
      etrm::train({{0.1, 0.2}, {0.9, 0.8}, {0.4, 0.5}}, {1, 2, 3}, tiny_config());
  const std::vector<double> probe = {0.6, 0.6};
  CHECK(etrm::predict(model, probe) == etrm::predict(model, probe));
  CHECK_THROWS_AS(etrm::predict(model, std::vector<double>{0.6}), data_error);
}

TEST_CASE("non-finite cells are rejected with the row index") {
  CHECK_THROWS_WITH_AS(
      etrm::train({{0.0}, {std::nan("")}}, {1.0, 2.0}, tiny_config()),
      doctest::Contains("row 1"), data_error);
  CHECK_THROWS_WITH_AS(etrm::train({{0.0}}, {std::nan("")}, tiny_config()),
                       doctest::Contains("row 0"), data_error);
}

TEST_CASE("importances: single split model and normalization") {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 20; ++i) {
    x.push_back({i < 10 ? 0.0 : 1.0, 0.5});
    y.push_back(i < 10 ? 1.0 : 9.0);
  }
  etrm::TrainConfig cfg = tiny_config();
  cfg.max_depth = 1;
  etrm::EtrmModel model = etrm::train(x, y, cfg, {"split_me", "constant"});
  auto importance = etrm::feature_importance(model);
  REQUIRE(importance.size() == 1);
  CHECK(importance[0].feature == "split_me");
  CHECK(importance[0].gain_importance == doctest::Approx(1.0));
  CHECK(importance[0].split_importance == 1);

  // Richer model: normalized gains sum to one.
  const CounterRng rng{17};
  x.clear();
  y.clear();
  for (int i = 0; i < 200; ++i) {
    const double a = rng.u01(0, i), b = rng.u01(1, i), c = rng.u01(2, i);
    x.push_back({a, b, c});
    y.push_back(5 * a + 2 * b * b - c);
  }
  cfg = tiny_config();
  cfg.n_estimators = 30;
  cfg.max_depth = 4;
  cfg.learning_rate = 0.2;
  etrm::EtrmModel rich = etrm::train(x, y, cfg);
  auto entries = etrm::feature_importance(rich);
  double total = 0.0;
  for (const auto& e : entries) total += e.gain_importance;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a model with no splits reports no importances") {
  etrm::EtrmModel model = etrm::train({{1.0}, {1.0}}, {2.0, 2.0}, tiny_config());
  CHECK(etrm::feature_importance(model).empty());
}

TEST_CASE("trees never exceed the configured depth") {
  const CounterRng rng{29};
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 300; ++i) {
    x.push_back({rng.u01(0, i), rng.u01(1, i), rng.u01(2, i), rng.u01(3, i)});
    y.push_back(9.0 * x.back()[0] * x.back()[1] - x.back()[2] + rng.u01(4, i));
  }
  etrm::TrainConfig cfg;
  cfg.n_estimators = 25;
  cfg.max_depth = 3;
  cfg.learning_rate = 0.2;
  etrm::EtrmModel model = etrm::train(x, y, cfg);

  std::function<int(const etrm::RegressionTree&, int)> depth_of =
      [&](const etrm::RegressionTree& t, int node) -> int {
    if (t.nodes[node].feature < 0) return 0;
    return 1 + std::max(depth_of(t, t.nodes[node].left),
                        depth_of(t, t.nodes[node].right));
  };
  for (const etrm::RegressionTree& t : model.trees) {
    REQUIRE_FALSE(t.nodes.empty());
    CHECK(depth_of(t, 0) <= 3);
  }
}

TEST_CASE("training ignores input row order") {
  const CounterRng rng{19};
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 80; ++i) {
    x.push_back({rng.u01(0, i), rng.u01(1, i)});
    y.push_back(4.0 * x.back()[0] + rng.u01(2, i));
  }
  etrm::TrainConfig cfg;
  cfg.n_estimators = 20;
  cfg.max_depth = 3;
  cfg.subsample = 0.6;
  cfg.colsample_bytree = 0.5;
  cfg.seed = 5;
  etrm::EtrmModel a = etrm::train(x, y, cfg);

  std::vector<std::vector<double>> xr(x.rbegin(), x.rend());
  std::vector<double> yr(y.rbegin(), y.rend());
  etrm::EtrmModel b = etrm::train(xr, yr, cfg);

  const std::vector<double> probe = {0.31, 0.77};
  CHECK(etrm::predict(a, probe) == etrm::predict(b, probe));
}

TEST_CASE("persistence round-trips predictions exactly") {
  helpers::TempDir tmp("etrm");
  const CounterRng rng{23};
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 50; ++i) {
    x.push_back({rng.u01(0, i), rng.u01(1, i), rng.u01(2, i)});
    y.push_back(7.0 * x.back()[2] - x.back()[0]);
  }
  etrm::TrainConfig cfg;
  cfg.n_estimators = 12;
  cfg.max_depth = 4;
  etrm::EtrmModel model = etrm::train(x, y, cfg, {"a", "b", "c"});
  etrm::save_model(model, tmp.path("m.json"));
  etrm::EtrmModel loaded = etrm::load_model(tmp.path("m.json"));
  CHECK(loaded.feature_names == model.feature_names);
  CHECK(loaded.trees.size() == model.trees.size());
  for (const auto& row : x) {
    CHECK(etrm::predict(loaded, row) == etrm::predict(model, row));
  }
}

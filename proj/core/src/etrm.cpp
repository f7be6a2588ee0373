/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "gpsel/etrm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "gpsel/rng.hpp"

namespace gpsel::etrm {

double split_gain(double g_left, double h_left, double g_right, double h_right,
                  double lambda, double gamma) {
  const double g_all = g_left + g_right;
  const double h_all = h_left + h_right;
  return g_left * g_left / (h_left + lambda) +
         g_right * g_right / (h_right + lambda) -
         g_all * g_all / (h_all + lambda) - gamma;
}

double RegressionTree::predict(std::span<const double> x) const {
  int i = 0;
  while (nodes[i].feature >= 0) {
    i = x[nodes[i].feature] <= nodes[i].threshold ? nodes[i].left : nodes[i].right;
  }
  return nodes[i].weight;
}

namespace {

double soft_threshold_l1(double g, double alpha) {
  if (g > alpha) return g - alpha;
  if (g < -alpha) return g + alpha;
  return 0.0;
}

struct SplitChoice {
  bool found = false;
  int feature = -1;
  double threshold = 0.0;
  double gain = 0.0;
};

struct TreeBuilder {
  const std::vector<std::vector<double>>& x;
  const std::vector<double>& grad;  // g_i for the current round
  const TrainConfig& cfg;
  const std::vector<int>& features;  // column-sampled, ascending
  RegressionTree tree;
  std::vector<double>& gain_sum;
  std::vector<std::uint64_t>& split_count;

  int build(std::vector<std::uint32_t>& rows, int depth) {
    double g_total = 0.0;
    for (std::uint32_t i : rows) g_total += grad[i];
    const double h_total = double(rows.size());  // h = 1 per row

    SplitChoice best;
    if (depth < cfg.max_depth && rows.size() >= 2) {
      best = find_best_split(rows, g_total, h_total);
    }
    if (!best.found) {
      TreeNode leaf;
      leaf.weight = -soft_threshold_l1(g_total, cfg.reg_alpha) /
                    (h_total + cfg.reg_lambda);
      tree.nodes.push_back(leaf);
      return int(tree.nodes.size()) - 1;
    }

    gain_sum[best.feature] += best.gain;
    split_count[best.feature] += 1;

    std::vector<std::uint32_t> left, right;
    left.reserve(rows.size());
    right.reserve(rows.size());
    for (std::uint32_t i : rows) {
      (x[i][best.feature] <= best.threshold ? left : right).push_back(i);
    }
    rows.clear();
    rows.shrink_to_fit();

    const int self = int(tree.nodes.size());
    tree.nodes.push_back({best.feature, best.threshold, -1, -1, 0.0});
    tree.nodes[self].left = build(left, depth + 1);
    tree.nodes[self].right = build(right, depth + 1);
    return self;
  }

  SplitChoice find_best_split(const std::vector<std::uint32_t>& rows,
                              double g_total, double h_total) {
    SplitChoice best;
    std::vector<std::pair<double, std::uint32_t>> order(rows.size());
    for (int f : features) {
      for (std::size_t k = 0; k < rows.size(); ++k) {
        order[k] = {x[rows[k]][f], rows[k]};
      }
      std::sort(order.begin(), order.end());
      double g_left = 0.0, h_left = 0.0;
      for (std::size_t k = 0; k + 1 < order.size(); ++k) {
        g_left += grad[order[k].second];
        h_left += 1.0;
        if (order[k].first == order[k + 1].first) continue;  // not a boundary
        const double h_right = h_total - h_left;
        if (h_left < cfg.min_child_weight || h_right < cfg.min_child_weight) {
          continue;
        }
        const double gain = split_gain(g_left, h_left, g_total - g_left, h_right,
                                       cfg.reg_lambda, cfg.gamma);
        // Deterministic argmax: strictly better gain wins; ties keep the
        // lowest feature index, then the lowest threshold.
        if (gain > best.gain || !best.found) {
          if (gain <= 0.0) continue;
          best.found = true;
          best.feature = f;
          best.threshold = order[k].first;  // left when x <= threshold
          best.gain = gain;
        }
      }
    }
    return best;
  }
};

}  // namespace

EtrmModel train(const std::vector<std::vector<double>>& x_in,
                const std::vector<double>& y_in, const TrainConfig& config,
                std::vector<std::string> feature_names,
                feat::ScalerParams scaler) {
  if (x_in.empty() || x_in.size() != y_in.size()) {
    throw data_error("training set is empty or misaligned");
  }
  const std::size_t num_features = x_in[0].size();
  for (std::size_t i = 0; i < x_in.size(); ++i) {
    if (x_in[i].size() != num_features) {
      throw data_error("row " + std::to_string(i) + " has inconsistent width");
    }
    for (double v : x_in[i]) {
      if (!std::isfinite(v)) {
        throw data_error("row " + std::to_string(i) + " contains a non-finite feature");
      }
    }
    if (!std::isfinite(y_in[i])) {
      throw data_error("row " + std::to_string(i) + " has a non-finite target");
    }
  }
  if (feature_names.empty()) {
    for (std::size_t f = 0; f < num_features; ++f) {
      feature_names.push_back("f" + std::to_string(f));
    }
  }
  if (feature_names.size() != num_features) {
    throw data_error("feature name table does not match feature count");
  }

  // Canonical row order: sort lexicographically by features, then target.
  // Subsampling is keyed on the sorted position, making training invariant
  // to the input row order.
  std::vector<std::uint32_t> perm(x_in.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (x_in[a] != x_in[b]) return x_in[a] < x_in[b];
    return y_in[a] < y_in[b];
  });
  std::vector<std::vector<double>> x(perm.size());
  std::vector<double> y(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    x[i] = x_in[perm[i]];
    y[i] = y_in[perm[i]];
  }

  EtrmModel model;
  model.config = config;
  model.feature_names = std::move(feature_names);
  model.scaler = std::move(scaler);
  model.gain_sum.assign(num_features, 0.0);
  model.split_count.assign(num_features, 0);
  model.base = std::accumulate(y.begin(), y.end(), 0.0) / double(y.size());

  std::vector<double> pred(y.size(), model.base);
  std::vector<double> grad(y.size(), 0.0);
  const CounterRng rng{config.seed};

  const int cols =
      std::max(1, int(std::ceil(config.colsample_bytree * double(num_features))));

  for (int round = 0; round < config.n_estimators; ++round) {
    for (std::size_t i = 0; i < y.size(); ++i) grad[i] = pred[i] - y[i];

    // Row subsample (seeded, per round).
    std::vector<std::uint32_t> rows;
    rows.reserve(y.size());
    if (config.subsample >= 1.0) {
      rows.resize(y.size());
      std::iota(rows.begin(), rows.end(), 0);
    } else {
      for (std::uint32_t i = 0; i < y.size(); ++i) {
        if (rng.u01(std::uint64_t(round) * 2 + 1, i) < config.subsample) {
          rows.push_back(i);
        }
      }
      if (rows.empty()) rows.push_back(std::uint32_t(round) % y.size());
    }

    // Column subsample: seeded partial Fisher-Yates, then ascending order.
    std::vector<int> features(num_features);
    std::iota(features.begin(), features.end(), 0);
    if (cols < int(num_features)) {
      for (int k = 0; k < cols; ++k) {
        const std::uint64_t j =
            k + rng.below(std::uint64_t(round) * 2 + 2, k, num_features - k);
        std::swap(features[k], features[j]);
      }
      features.resize(cols);
      std::sort(features.begin(), features.end());
    }

    TreeBuilder builder{x, grad, config, features, {}, model.gain_sum,
                        model.split_count};
    builder.build(rows, 0);
    model.trees.push_back(std::move(builder.tree));

    const RegressionTree& tree = model.trees.back();
    double loss = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      pred[i] += config.learning_rate * tree.predict(x[i]);
      const double r = pred[i] - y[i];
      loss += r * r;
    }
    model.train_loss.push_back(loss / double(y.size()));
  }
  return model;
}

double predict(const EtrmModel& model, std::span<const double> x) {
  if (x.size() != model.feature_names.size()) {
    throw data_error("input has " + std::to_string(x.size()) +
                     " features, model expects " +
                     std::to_string(model.feature_names.size()));
  }
  double out = model.base;
  for (const RegressionTree& t : model.trees) {
    out += model.config.learning_rate * t.predict(x);
  }
  return out;
}

std::vector<ImportanceEntry> feature_importance(const EtrmModel& model) {
  std::vector<ImportanceEntry> entries;
  double avg_total = 0.0;
  for (std::size_t f = 0; f < model.feature_names.size(); ++f) {
    if (model.split_count[f] == 0) continue;
    avg_total += model.gain_sum[f] / double(model.split_count[f]);
  }
  if (avg_total <= 0.0) return entries;
  for (std::size_t f = 0; f < model.feature_names.size(); ++f) {
    if (model.split_count[f] == 0) continue;
    const double avg = model.gain_sum[f] / double(model.split_count[f]);
    entries.push_back({model.feature_names[f], avg / avg_total, model.split_count[f]});
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.gain_importance != b.gain_importance) {
      return a.gain_importance > b.gain_importance;
    }
    return a.feature < b.feature;
  });
  return entries;
}

// ---------------------------------------------------------------------------
// Persistence (versioned JSON)

namespace {

using nlohmann::json;

json scaler_to_json(const feat::ScalerParams& s) {
  return json{{"lo", s.lo}, {"hi", s.hi}, {"scaled", s.scaled}};
}

feat::ScalerParams scaler_from_json(const json& j) {
  feat::ScalerParams s;
  s.lo = j.at("lo").get<std::vector<double>>();
  s.hi = j.at("hi").get<std::vector<double>>();
  s.scaled = j.at("scaled").get<std::vector<std::uint8_t>>();
  return s;
}

}  // namespace

void save_model(const EtrmModel& model, const std::string& path) {
  json j;
  j["format"] = "gpsel-etrm";
  j["version"] = 1;
  j["config"] = {{"colsample_bytree", model.config.colsample_bytree},
                 {"gamma", model.config.gamma},
                 {"learning_rate", model.config.learning_rate},
                 {"max_depth", model.config.max_depth},
                 {"min_child_weight", model.config.min_child_weight},
                 {"n_estimators", model.config.n_estimators},
                 {"reg_alpha", model.config.reg_alpha},
                 {"reg_lambda", model.config.reg_lambda},
                 {"subsample", model.config.subsample},
                 {"seed", model.config.seed}};
  j["base"] = model.base;
  j["feature_names"] = model.feature_names;
  j["scaler"] = scaler_to_json(model.scaler);
  j["gain_sum"] = model.gain_sum;
  j["split_count"] = model.split_count;
  j["train_loss"] = model.train_loss;
  json trees = json::array();
  for (const RegressionTree& t : model.trees) {
    json nodes = json::array();
    for (const TreeNode& n : t.nodes) {
      nodes.push_back({n.feature, n.threshold, n.left, n.right, n.weight});
    }
    trees.push_back(std::move(nodes));
  }
  j["trees"] = std::move(trees);

  std::ofstream out(path);
  if (!out) throw data_error("cannot write model file: " + path);
  out << j.dump(1) << "\n";
}

EtrmModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw not_found_error("cannot open model file: " + path);
  json j;
  in >> j;
  if (j.value("format", "") != "gpsel-etrm" || j.value("version", 0) != 1) {
    throw data_error("unrecognized model file format/version in " + path);
  }
  EtrmModel model;
  const json& c = j.at("config");
  model.config.colsample_bytree = c.at("colsample_bytree");
  model.config.gamma = c.at("gamma");
  model.config.learning_rate = c.at("learning_rate");
  model.config.max_depth = c.at("max_depth");
  model.config.min_child_weight = c.at("min_child_weight");
  model.config.n_estimators = c.at("n_estimators");
  model.config.reg_alpha = c.at("reg_alpha");
  model.config.reg_lambda = c.at("reg_lambda");
  model.config.subsample = c.at("subsample");
  model.config.seed = c.at("seed");
  model.base = j.at("base");
  model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
  model.scaler = scaler_from_json(j.at("scaler"));
  model.gain_sum = j.at("gain_sum").get<std::vector<double>>();
  model.split_count = j.at("split_count").get<std::vector<std::uint64_t>>();
  model.train_loss = j.at("train_loss").get<std::vector<double>>();
  for (const json& tn : j.at("trees")) {
    RegressionTree t;
    for (const json& n : tn) {
      t.nodes.push_back({n.at(0), n.at(1), n.at(2), n.at(3), n.at(4)});
    }
    model.trees.push_back(std::move(t));
  }
  return model;
}

}  // namespace gpsel::etrm

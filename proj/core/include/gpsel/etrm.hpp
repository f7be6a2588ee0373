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

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gpsel/features.hpp"

namespace gpsel::etrm {

/// Gradient-boosted regression trees with exact greedy splits.
/// Convention: squared-error loss with g = prediction - target and h = 1;
/// under it the split gain below is exactly the drop in the regularized
/// objective sum((residual - w)^2) + lambda*w^2 + gamma per leaf.
struct TrainConfig {
  double colsample_bytree = 0.4603;
  double gamma = 0.0468;
  double learning_rate = 0.05;
  int max_depth = 15;
  double min_child_weight = 1.7817;
  int n_estimators = 1000;
  double reg_alpha = 0.4640;
  double reg_lambda = 0.8571;
  double subsample = 0.5213;
  std::uint64_t seed = 0;
};

struct TreeNode {
  int feature = -1;        // -1 for leaves
  double threshold = 0.0;  // go left when x[feature] <= threshold
  int left = -1;
  int right = -1;
  double weight = 0.0;     // leaf value, unshrunk
};

struct RegressionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double predict(std::span<const double> x) const;
};

struct EtrmModel {
  TrainConfig config;
  double base = 0.0;  // mean of the training targets
  std::vector<RegressionTree> trees;
  feat::ScalerParams scaler;
  std::vector<std::string> feature_names;
  std::vector<double> gain_sum;            // per feature
  std::vector<std::uint64_t> split_count;  // per feature
  std::vector<double> train_loss;          // mean squared error per round
};

/// Gain of splitting a node with children (G_L, H_L) and (G_R, H_R):
///   G_L^2/(H_L+lambda) + G_R^2/(H_R+lambda) - (G_L+G_R)^2/(H_L+H_R+lambda) - gamma
double split_gain(double g_left, double h_left, double g_right, double h_right,
                  double lambda, double gamma);

/// Trains on pre-encoded rows. Rows are canonically sorted before seeded
/// subsampling, so the model is invariant to input row order. NaN or
/// non-finite cells raise data_error naming the row.
EtrmModel train(const std::vector<std::vector<double>>& x,
                const std::vector<double>& y, const TrainConfig& config,
                std::vector<std::string> feature_names = {},
                feat::ScalerParams scaler = {});

double predict(const EtrmModel& model, std::span<const double> x);

struct ImportanceEntry {
  std::string feature;
  double gain_importance = 0.0;       // normalized average gain, sums to 1
  std::uint64_t split_importance = 0; // raw split count
};

/// Per-feature importances for features with at least one split, ordered by
/// descending gain importance. Empty when the model never split.
std::vector<ImportanceEntry> feature_importance(const EtrmModel& model);

void save_model(const EtrmModel& model, const std::string& path);
EtrmModel load_model(const std::string& path);

}  // namespace gpsel::etrm

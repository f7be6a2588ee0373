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
#include <string>
#include <vector>

#include "gpsel/etrm.hpp"
#include "gpsel/features.hpp"
#include "gpsel/partition.hpp"

namespace gpsel::eval {

/// Predicted time for the chosen strategy list, plus the argmin (ties go to
/// the lowest psid). Predictions are returned in the order given.
struct Selection {
  int psid = 0;
  std::vector<double> predicted;  // aligned with the strategies argument
};

Selection select_strategy(const etrm::EtrmModel& model,
                          const feat::DataFeatureVector& df,
                          const feat::AlgorithmFeatureVector& af,
                          const std::vector<StrategySpec>& strategies);

/// Score row for one task. Rank counts strategies strictly faster than the
/// selected one plus one, so ties share the better rank.
struct ScoreRow {
  std::string graph;
  std::string algorithm;
  char test_set = 'D';  // A: unseen graph+algorithm, B: unseen graph,
                        // C: unseen algorithm, D: both seen
  int selected_psid = 0;
  int rank = 1;
  double t_best = 0.0;
  double t_worst = 0.0;
  double t_avg = 0.0;
  double t_sel = 0.0;
  double score_best = 0.0;
  double score_worst = 0.0;
  double score_avg = 0.0;
};

struct StrategyTime {
  int psid = 0;
  double time = 0.0;
};

/// Computes the score ratios of a selection against the measured times.
/// Times must be positive and contain the selected psid.
ScoreRow compute_scores(const std::vector<StrategyTime>& times, int selected_psid);

/// Cumulative fraction of tasks whose selection ranked <= r, for r = 1..n.
/// Non-decreasing and 1.0 at the last entry.
std::vector<double> rank_cumulative(const std::vector<ScoreRow>& rows,
                                    int num_strategies);

/// benefit / (feature_time + analysis_time + predict_time). The caller labels
/// the units; the components must be non-negative with a positive sum.
double bc_ratio(double benefit, double feature_time, double analysis_time,
                double predict_time);

char test_set_tag(bool graph_seen_in_training, bool algorithm_seen_in_training);

struct ScoreSummary {
  double mean_score_best = 0.0;
  double mean_score_worst = 0.0;
  double mean_score_avg = 0.0;
  std::size_t tasks = 0;
};

ScoreSummary summarize(const std::vector<ScoreRow>& rows);
ScoreSummary summarize(const std::vector<ScoreRow>& rows, char test_set);

/// Mean Score_best of uniformly random selection, estimated over `draws`
/// rounds across all tasks (seeded).
double random_selection_score_best(
    const std::vector<std::vector<StrategyTime>>& task_times, std::size_t draws,
    std::uint64_t seed);

/// Mean rank of uniformly random selection (same rank rule), estimated over
/// `draws` rounds across all tasks.
double random_selection_mean_rank(
    const std::vector<std::vector<StrategyTime>>& task_times, std::size_t draws,
    std::uint64_t seed);

}  // namespace gpsel::eval

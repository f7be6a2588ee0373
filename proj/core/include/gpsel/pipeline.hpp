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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpsel/algorithms.hpp"
#include "gpsel/augment.hpp"
#include "gpsel/etrm.hpp"
#include "gpsel/evaluator.hpp"
#include "gpsel/gas.hpp"
#include "gpsel/partition.hpp"

namespace gpsel::pipeline {

/// End-to-end run description. Flags given on the command line win over
/// manifest values, which win over the defaults here.
struct Manifest {
  struct GraphRef {
    std::string name;
    std::string path;
    bool directed = false;
  };

  std::vector<GraphRef> graphs;
  std::vector<std::string> algorithms;        // executed inventory
  std::vector<std::string> train_algorithms;  // augmentation constituents
  std::vector<std::string> train_graphs;      // augmentation graphs
  std::vector<int> strategies;                // psids; default inventory if empty
  std::uint32_t num_workers = 4;
  gas::CostModel cost;
  gas::EngineOptions engine;
  algo::AlgorithmParams params;
  std::uint64_t seed = 0;
  int r_min = 2;
  int r_max = 5;
  etrm::TrainConfig train;
  std::string algos_dir = "algos";
  std::string output_dir = "out";
};

Manifest load_manifest(const std::string& path);
void save_manifest(const Manifest& manifest, const std::string& path);

/// Everything the pipeline produced, plus where it was written.
struct PipelineResult {
  std::vector<aug::TaskRecord> real_logs;
  std::size_t synthetic_count = 0;
  etrm::EtrmModel model;
  std::vector<eval::ScoreRow> scores;
  std::vector<double> rank_curve;
  double random_baseline_score_best = 0.0;
  // Wall-clock selection costs (seconds), for benefit/cost reporting only.
  std::map<std::string, double> feature_seconds;   // per graph
  std::map<std::string, double> analysis_seconds;  // per algorithm
  double predict_seconds_per_task = 0.0;

  std::string logs_path;
  std::string synthetic_path;
  std::string model_path;
  std::string selections_path;
  std::string scores_path;
  std::string bc_path;
};

/// Runs partition -> execute -> featurize -> augment -> train -> select ->
/// score over the manifest corpus, writing every artifact under output_dir.
/// Deterministic given the manifest (wall-clock timings only appear in the
/// benefit/cost report).
PipelineResult run_pipeline(const Manifest& manifest);

/// The real-log production step alone: every (graph, algorithm, strategy)
/// task executed on the engine, with plans cached per (graph, psid) and
/// written under output_dir/plans.
std::vector<aug::TaskRecord> run_corpus(const Manifest& manifest,
                                        const std::string& plans_dir = "");

}  // namespace gpsel::pipeline

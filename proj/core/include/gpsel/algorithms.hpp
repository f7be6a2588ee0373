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
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gpsel/gas.hpp"
#include "gpsel/graph.hpp"

namespace gpsel::algo {

struct AlgorithmParams {
  int pr_iterations = 10;
  double pr_damping = 0.85;
  int rw_steps = 10;
  std::uint64_t rw_seed = 0;
};

/// Per-vertex degrees via the engine (mode in for AID, out for AOD).
std::map<VertexId, std::int64_t> run_degree(const Graph& g,
                                            const PartitionPlan& plan,
                                            DegreeMode mode,
                                            const gas::CostModel& cost = {},
                                            const gas::EngineOptions& opts = {});

/// Fixed-iteration PageRank: PR_t(v) = (1-d) + d * sum of PR_{t-1}(u)/outdeg(u)
/// over in-neighbors, starting from the uniform value 1/|V|. Vertices without
/// out-edges contribute nothing (no renormalization).
std::map<VertexId, double> run_pagerank(const Graph& g, const PartitionPlan& plan,
                                        int iterations = 10, double damping = 0.85,
                                        const gas::CostModel& cost = {},
                                        const gas::EngineOptions& opts = {});

/// Greedy coloring in ascending vertex-id priority: a vertex colors itself
/// once every lower-id neighbor is colored, taking the smallest free color.
/// Equals the sequential greedy scan over ascending ids.
std::map<VertexId, std::int64_t> run_greedy_coloring(
    const Graph& g, const PartitionPlan& plan, const gas::CostModel& cost = {},
    const gas::EngineOptions& opts = {});

/// Common-neighbor counts for every unordered vertex pair with at least one
/// common neighbor (direction-agnostic); zero-count pairs are omitted.
std::map<std::pair<VertexId, VertexId>, std::uint64_t> run_apcn(
    const Graph& g, const PartitionPlan& plan, const gas::CostModel& cost = {},
    const gas::EngineOptions& opts = {});

/// Number of unordered mutually adjacent triples, edge direction ignored.
std::uint64_t run_triangle_count(const Graph& g, const PartitionPlan& plan,
                                 const gas::CostModel& cost = {},
                                 const gas::EngineOptions& opts = {});

/// Local clustering coefficient per vertex: edges among the (distinct,
/// direction-agnostic) neighbors, each unordered neighbor pair counted once,
/// divided by k*(k-1); zero when k < 2.
std::map<VertexId, double> run_clustering_coeff(const Graph& g,
                                                const PartitionPlan& plan,
                                                const gas::CostModel& cost = {},
                                                const gas::EngineOptions& opts = {});

/// One random walk per source vertex, up to `steps` hops along uniformly
/// random out-edges, truncated at sinks. The returned sequence includes the
/// source. Choices are keyed by (seed, source, hop), so results do not
/// depend on the partitioning.
std::map<VertexId, std::vector<VertexId>> run_random_walk(
    const Graph& g, const PartitionPlan& plan, int steps = 10,
    std::uint64_t seed = 0, const gas::CostModel& cost = {},
    const gas::EngineOptions& opts = {});

/// Bundle of the outputs an algorithm can produce; used for result-invariance
/// checks and logging.
struct AlgoResult {
  std::map<VertexId, double> vertex_reals;
  std::map<VertexId, std::int64_t> vertex_ints;
  std::map<std::pair<VertexId, VertexId>, std::uint64_t> pair_counts;
  std::uint64_t scalar = 0;
  std::map<VertexId, std::vector<VertexId>> walks;

  bool operator==(const AlgoResult&) const = default;
};

/// Registry entry: runner plus the pseudo-code file shipped for the analyzer.
struct AlgorithmEntry {
  std::string name;          // AID AOD PR GC APCN TC CC RW
  std::string pseudocode;    // algos/<file>.gpc, relative to the repo root
};

const std::vector<AlgorithmEntry>& algorithm_registry();
const AlgorithmEntry& algorithm_by_name(const std::string& name);

/// Runs a registry algorithm under a plan, returning both the result bundle
/// and its execution log (graph/algorithm names filled in).
std::pair<AlgoResult, gas::ExecutionLog> run_algorithm(
    const std::string& name, const Graph& g, const PartitionPlan& plan,
    const AlgorithmParams& params = {}, const gas::CostModel& cost = {},
    const gas::EngineOptions& opts = {});

}  // namespace gpsel::algo

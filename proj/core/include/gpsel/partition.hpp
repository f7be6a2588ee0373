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
#include <iosfwd>
#include <string>
#include <vector>

#include "gpsel/graph.hpp"

namespace gpsel {

enum class StrategyKind {
  one_d_src,   // hash of the source id
  one_d_dst,   // hash of the destination id
  random2d,    // hash of the Cantor pair of (src, dst)
  canonical,   // hash of the Cantor pair of the ordered endpoints
  grid2d,      // (hash(src) mod s, hash(dst) mod s) tile on an s x s grid
  hybrid,      // destination-grouped below a degree threshold, else by source
  oblivious,   // greedy, replication + balance
  hdrf,        // greedy, degree-weighted replication + lambda * balance
  ginger       // greedy per destination-vertex group
};

/// One row of the strategy inventory. psids 0..11 are fixed:
///   0 1DSrc, 1 1DDst, 2 Random, 3 Cano, 4 2D, 5 Hybrid, 6 Oblivious,
///   7..10 HDRF with lambda 10/20/50/100, 11 Ginger.
struct StrategySpec {
  int psid = 0;
  std::string name;
  StrategyKind kind = StrategyKind::one_d_src;
  double lambda = 0.0;          // HDRF only
  std::size_t degree_threshold = 100;  // Hybrid only
  std::uint64_t seed = 0;
};

/// Spec for a psid from the fixed table. Throws config_error outside 0..11.
StrategySpec strategy_from_psid(int psid, std::uint64_t seed = 0);
/// Spec by inventory name (1DSrc, 1DDst, Random, Cano, 2D, Hybrid,
/// Oblivious, HDRF, Ginger). HDRF resolves to psid 7 (lambda 10).
StrategySpec strategy_from_name(const std::string& name, std::uint64_t seed = 0);

/// The default inventory: all psids except 6 (Oblivious).
std::vector<int> default_strategy_inventory();

/// Edge-to-worker assignment plus master/mirror placement for every vertex
/// that appears in an assigned edge. Mirror lists exclude the master and are
/// sorted; together master and mirrors are exactly the workers holding an
/// incident edge.
struct PartitionPlan {
  std::uint32_t num_workers = 1;
  int psid = 0;
  std::uint64_t seed = 0;
  std::vector<WorkerId> edge_assignment;        // by canonical edge index
  std::vector<WorkerId> master;                 // by dense vertex index
  std::vector<std::vector<WorkerId>> mirrors;   // by dense vertex index
  std::vector<std::uint64_t> worker_edge_count; // per worker

  std::size_t replicas(std::uint32_t vindex) const {
    return mirrors[vindex].size() + 1;
  }
};

struct PartitionOptions {
  bool include_oblivious = false;  // psid 6 errors unless enabled
};

/// Runs one strategy over the graph. Deterministic in (graph, spec, workers).
PartitionPlan partition(const Graph& g, const StrategySpec& spec,
                        std::uint32_t num_workers,
                        const PartitionOptions& options = {});

// Hash primitives behind the hash strategies; exposed for direct testing.
WorkerId hash_edge_1d(VertexId v, std::uint32_t num_workers, std::uint64_t seed);
WorkerId hash_edge_2d_random(VertexId u, VertexId v, std::uint32_t num_workers,
                             bool canonical, std::uint64_t seed);
WorkerId hash_edge_grid2d(VertexId u, VertexId v, std::uint32_t num_workers,
                          std::uint64_t seed);

PartitionPlan partition_hybrid(const Graph& g, std::uint32_t num_workers,
                               std::size_t degree_threshold, std::uint64_t seed,
                               int psid = 5);

enum class GreedyKind { oblivious, hdrf, ginger };

PartitionPlan partition_greedy(const Graph& g, std::uint32_t num_workers,
                               GreedyKind kind, double lambda,
                               std::uint64_t seed, int psid);

/// Total vertex copies divided by distinct vertices. >= 1, == 1 when nothing
/// is replicated. Throws data_error on an empty plan.
double replication_factor(const PartitionPlan& plan);

/// max worker edge load / mean worker edge load (mean over all workers).
double load_balance(const PartitionPlan& plan);

/// Versioned line format: header, one `e <index> <worker>` per edge, one
/// `v <id> <master> [mirror...]` block per vertex.
void write_plan(const PartitionPlan& plan, const Graph& g, std::ostream& out);
PartitionPlan read_plan(std::istream& in, const Graph& g);

}  // namespace gpsel

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

#include "gpsel/partition.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "gpsel/hash.hpp"

namespace gpsel {

namespace {

std::uint32_t exact_square_root(std::uint32_t w) {
  std::uint32_t s = static_cast<std::uint32_t>(std::lround(std::sqrt(double(w))));
  while (s * s > w) --s;
  while ((s + 1) * (s + 1) <= w) ++s;
  if (s * s != w) {
    throw config_error("2D partitioning needs a square worker count, got " +
                       std::to_string(w));
  }
  return s;
}

/// Incremental bookkeeping shared by the greedy strategies: per-worker edge
/// counts, per-(vertex, worker) presence, and per-vertex partial degrees
/// observed so far on the edge stream.
class GreedyState {
 public:
  GreedyState(std::size_t num_vertices, std::uint32_t num_workers)
      : num_workers_(num_workers),
        edge_count_(num_workers, 0),
        vertex_count_(num_workers, 0),
        presence_(num_vertices * num_workers, 0),
        partial_degree_(num_vertices, 0) {}

  bool present(std::uint32_t v, WorkerId w) const {
    return presence_[std::size_t(v) * num_workers_ + w] != 0;
  }

  void place(std::uint32_t v, WorkerId w) {
    auto& cell = presence_[std::size_t(v) * num_workers_ + w];
    if (!cell) {
      cell = 1;
      vertex_count_[w]++;
    }
  }

  void assign_edge(std::uint32_t src, std::uint32_t dst, WorkerId w) {
    edge_count_[w]++;
    place(src, w);
    place(dst, w);
  }

  void bump_degree(std::uint32_t v) { partial_degree_[v]++; }
  std::uint64_t partial_degree(std::uint32_t v) const { return partial_degree_[v]; }

  std::uint64_t edges(WorkerId w) const { return edge_count_[w]; }
  std::uint64_t vertices(WorkerId w) const { return vertex_count_[w]; }

  std::uint64_t max_edges() const {
    return *std::max_element(edge_count_.begin(), edge_count_.end());
  }
  std::uint64_t min_edges() const {
    return *std::min_element(edge_count_.begin(), edge_count_.end());
  }

 private:
  std::uint32_t num_workers_;
  std::vector<std::uint64_t> edge_count_;
  std::vector<std::uint64_t> vertex_count_;
  std::vector<std::uint8_t> presence_;
  std::vector<std::uint64_t> partial_degree_;
};

constexpr double kBalanceEpsilon = 1.0;

/// Replication term of the greedy scores. With degree_weighted the score of
/// an already-present endpoint grows as its share of the pair's partial
/// degree shrinks (keep the low-degree side whole, replicate the high-degree
/// one); otherwise presence simply scores 1.
double replication_score(bool src_present, bool dst_present, double src_deg,
                         double dst_deg, bool degree_weighted) {
  if (!degree_weighted) {
    return (src_present ? 1.0 : 0.0) + (dst_present ? 1.0 : 0.0);
  }
  const double total = src_deg + dst_deg;
  const double theta_src = total > 0 ? src_deg / total : 0.5;
  const double theta_dst = 1.0 - theta_src;
  double score = 0.0;
  if (src_present) score += 1.0 + (1.0 - theta_src);
  if (dst_present) score += 1.0 + (1.0 - theta_dst);
  return score;
}

void finalize_masters(const Graph& g, std::uint64_t seed, PartitionPlan& plan) {
  const std::size_t nv = g.num_vertices();
  const std::uint32_t w = plan.num_workers;
  std::vector<std::vector<std::uint8_t>> holds(nv);
  for (std::size_t v = 0; v < nv; ++v) holds[v].assign(w, 0);
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const WorkerId worker = plan.edge_assignment[e];
    holds[g.index_of(g.edge(e).src)][worker] = 1;
    holds[g.index_of(g.edge(e).dst)][worker] = 1;
  }
  plan.master.assign(nv, 0);
  plan.mirrors.assign(nv, {});
  for (std::size_t v = 0; v < nv; ++v) {
    const WorkerId preferred =
        static_cast<WorkerId>(hash_id(seed, g.id_of(v)) % w);
    WorkerId master = std::numeric_limits<WorkerId>::max();
    if (holds[v][preferred]) {
      master = preferred;
    } else {
      for (WorkerId i = 0; i < w; ++i) {
        if (holds[v][i]) {
          master = i;
          break;
        }
      }
    }
    plan.master[v] = master;
    for (WorkerId i = 0; i < w; ++i) {
      if (holds[v][i] && i != master) plan.mirrors[v].push_back(i);
    }
  }
  plan.worker_edge_count.assign(w, 0);
  for (WorkerId worker : plan.edge_assignment) plan.worker_edge_count[worker]++;
}

PartitionPlan make_plan(const Graph& g, int psid, std::uint64_t seed,
                        std::uint32_t num_workers,
                        std::vector<WorkerId> assignment) {
  PartitionPlan plan;
  plan.num_workers = num_workers;
  plan.psid = psid;
  plan.seed = seed;
  plan.edge_assignment = std::move(assignment);
  finalize_masters(g, seed, plan);
  return plan;
}

}  // namespace

WorkerId hash_edge_1d(VertexId v, std::uint32_t num_workers, std::uint64_t seed) {
  return static_cast<WorkerId>(hash_id(seed, v) % num_workers);
}

WorkerId hash_edge_2d_random(VertexId u, VertexId v, std::uint32_t num_workers,
                             bool canonical, std::uint64_t seed) {
  if (canonical && v < u) std::swap(u, v);
  return static_cast<WorkerId>(hash_id(seed, cantor_pair(u, v)) % num_workers);
}

WorkerId hash_edge_grid2d(VertexId u, VertexId v, std::uint32_t num_workers,
                          std::uint64_t seed) {
  const std::uint32_t s = exact_square_root(num_workers);
  const std::uint32_t row = static_cast<std::uint32_t>(hash_id(seed, u) % s);
  const std::uint32_t col = static_cast<std::uint32_t>(hash_id(seed ^ 0x51ED5EEDULL, v) % s);
  return row * s + col;
}

PartitionPlan partition_hybrid(const Graph& g, std::uint32_t num_workers,
                               std::size_t degree_threshold, std::uint64_t seed,
                               int psid) {
  if (degree_threshold < 1) throw config_error("hybrid threshold must be >= 1");
  std::vector<WorkerId> assignment(g.num_edges());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const std::size_t dst_in_degree = g.degree(edge.dst, DegreeMode::in);
    assignment[e] = dst_in_degree <= degree_threshold
                        ? hash_edge_1d(edge.dst, num_workers, seed)
                        : hash_edge_1d(edge.src, num_workers, seed);
  }
  return make_plan(g, psid, seed, num_workers, std::move(assignment));
}

PartitionPlan partition_greedy(const Graph& g, std::uint32_t num_workers,
                               GreedyKind kind, double lambda,
                               std::uint64_t seed, int psid) {
  const std::size_t nv = g.num_vertices();
  GreedyState state(nv, num_workers);
  std::vector<WorkerId> assignment(g.num_edges());

  if (kind == GreedyKind::ginger) {
    // Per destination vertex, in ascending id order: score every worker by
    // in-neighbor overlap minus the load penalty, then place the vertex's
    // in-edges there as a group.
    const double vertex_per_edge =
        static_cast<double>(g.num_vertices()) / static_cast<double>(g.num_edges());
    for (std::uint32_t vi = 0; vi < nv; ++vi) {
      auto in_block = g.inverted_block(vi);
      if (in_block.empty()) continue;
      std::vector<std::uint32_t> in_nbrs;
      in_nbrs.reserve(in_block.size());
      for (VertexId u : g.in_neighbors(g.id_of(vi))) {
        in_nbrs.push_back(g.index_of(u));
      }
      std::sort(in_nbrs.begin(), in_nbrs.end());
      in_nbrs.erase(std::unique(in_nbrs.begin(), in_nbrs.end()), in_nbrs.end());
      WorkerId best = 0;
      double best_score = -std::numeric_limits<double>::infinity();
      for (WorkerId w = 0; w < num_workers; ++w) {
        double overlap = 0.0;
        for (std::uint32_t u : in_nbrs) {
          if (state.present(u, w)) overlap += 1.0;
        }
        const double penalty =
            0.5 * (static_cast<double>(state.vertices(w)) +
                   vertex_per_edge * static_cast<double>(state.edges(w)));
        const double score = overlap - penalty;
        if (score > best_score) {
          best_score = score;
          best = w;
        }
      }
      for (EdgeIndex e : in_block) {
        assignment[e] = best;
        state.assign_edge(g.index_of(g.edge(e).src), vi, best);
      }
    }
    return make_plan(g, psid, seed, num_workers, std::move(assignment));
  }

  // Streaming per-edge greedy (Oblivious and HDRF), edges in canonical order.
  const bool degree_weighted = kind == GreedyKind::hdrf;
  const double balance_weight = kind == GreedyKind::hdrf ? lambda : 1.0;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const Edge& edge = g.edge(e);
    const std::uint32_t src = g.index_of(edge.src);
    const std::uint32_t dst = g.index_of(edge.dst);
    state.bump_degree(src);
    if (dst != src) state.bump_degree(dst);
    const double src_deg = static_cast<double>(state.partial_degree(src));
    const double dst_deg = static_cast<double>(state.partial_degree(dst));
    const double max_edges = static_cast<double>(state.max_edges());
    const double min_edges = static_cast<double>(state.min_edges());
    WorkerId best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (WorkerId w = 0; w < num_workers; ++w) {
      const double balance = (max_edges - static_cast<double>(state.edges(w))) /
                             (kBalanceEpsilon + max_edges - min_edges);
      const double score = replication_score(state.present(src, w),
                                             state.present(dst, w), src_deg,
                                             dst_deg, degree_weighted) +
                           balance_weight * balance;
      if (score > best_score) {
        best_score = score;
        best = w;
      }
    }
    assignment[e] = best;
    state.assign_edge(src, dst, best);
  }
  return make_plan(g, psid, seed, num_workers, std::move(assignment));
}

StrategySpec strategy_from_psid(int psid, std::uint64_t seed) {
  StrategySpec s;
  s.psid = psid;
  s.seed = seed;
  switch (psid) {
    case 0: s.name = "1DSrc"; s.kind = StrategyKind::one_d_src; break;
    case 1: s.name = "1DDst"; s.kind = StrategyKind::one_d_dst; break;
    case 2: s.name = "Random"; s.kind = StrategyKind::random2d; break;
    case 3: s.name = "Cano"; s.kind = StrategyKind::canonical; break;
    case 4: s.name = "2D"; s.kind = StrategyKind::grid2d; break;
    case 5: s.name = "Hybrid"; s.kind = StrategyKind::hybrid; break;
    case 6: s.name = "Oblivious"; s.kind = StrategyKind::oblivious; break;
    case 7: s.name = "HDRF10"; s.kind = StrategyKind::hdrf; s.lambda = 10; break;
    case 8: s.name = "HDRF20"; s.kind = StrategyKind::hdrf; s.lambda = 20; break;
    case 9: s.name = "HDRF50"; s.kind = StrategyKind::hdrf; s.lambda = 50; break;
    case 10: s.name = "HDRF100"; s.kind = StrategyKind::hdrf; s.lambda = 100; break;
    case 11: s.name = "Ginger"; s.kind = StrategyKind::ginger; break;
    default:
      throw config_error("psid out of range 0..11: " + std::to_string(psid));
  }
  return s;
}

StrategySpec strategy_from_name(const std::string& name, std::uint64_t seed) {
  static const std::vector<std::pair<std::string, int>> table = {
      {"1DSrc", 0},  {"1DDst", 1},   {"Random", 2},  {"Cano", 3},
      {"2D", 4},     {"Hybrid", 5},  {"Oblivious", 6}, {"HDRF", 7},
      {"HDRF10", 7}, {"HDRF20", 8},  {"HDRF50", 9},  {"HDRF100", 10},
      {"Ginger", 11}};
  for (const auto& [n, psid] : table) {
    if (n == name) return strategy_from_psid(psid, seed);
  }
  throw config_error("unknown strategy name: " + name);
}

std::vector<int> default_strategy_inventory() {
  return {0, 1, 2, 3, 4, 5, 7, 8, 9, 10, 11};
}

PartitionPlan partition(const Graph& g, const StrategySpec& spec,
                        std::uint32_t num_workers,
                        const PartitionOptions& options) {
  if (num_workers < 1) throw config_error("need at least one worker");
  if (g.num_edges() == 0) throw data_error("cannot partition an empty graph");

  switch (spec.kind) {
    case StrategyKind::one_d_src:
    case StrategyKind::one_d_dst:
    case StrategyKind::random2d:
    case StrategyKind::canonical:
    case StrategyKind::grid2d: {
      if (spec.kind == StrategyKind::grid2d) exact_square_root(num_workers);
      std::vector<WorkerId> assignment(g.num_edges());
      for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
        const Edge& edge = g.edge(e);
        switch (spec.kind) {
          case StrategyKind::one_d_src:
            assignment[e] = hash_edge_1d(edge.src, num_workers, spec.seed);
            break;
          case StrategyKind::one_d_dst:
            assignment[e] = hash_edge_1d(edge.dst, num_workers, spec.seed);
            break;
          case StrategyKind::random2d:
            assignment[e] = hash_edge_2d_random(edge.src, edge.dst, num_workers,
                                                false, spec.seed);
            break;
          case StrategyKind::canonical:
            assignment[e] = hash_edge_2d_random(edge.src, edge.dst, num_workers,
                                                true, spec.seed);
            break;
          case StrategyKind::grid2d:
            assignment[e] =
                hash_edge_grid2d(edge.src, edge.dst, num_workers, spec.seed);
            break;
          default:
            break;
        }
      }
      return make_plan(g, spec.psid, spec.seed, num_workers, std::move(assignment));
    }
    case StrategyKind::hybrid:
      return partition_hybrid(g, num_workers, spec.degree_threshold, spec.seed,
                              spec.psid);
    case StrategyKind::oblivious:
      if (!options.include_oblivious) {
        throw config_error(
            "Oblivious (psid 6) is excluded from the default inventory; "
            "pass include_oblivious to run it anyway");
      }
      return partition_greedy(g, num_workers, GreedyKind::oblivious, 0.0,
                              spec.seed, spec.psid);
    case StrategyKind::hdrf:
      return partition_greedy(g, num_workers, GreedyKind::hdrf, spec.lambda,
                              spec.seed, spec.psid);
    case StrategyKind::ginger:
      return partition_greedy(g, num_workers, GreedyKind::ginger, 0.0, spec.seed,
                              spec.psid);
  }
  throw config_error("unhandled strategy kind");
}

double replication_factor(const PartitionPlan& plan) {
  if (plan.master.empty()) throw data_error("replication factor of an empty plan");
  std::uint64_t copies = 0;
  for (std::size_t v = 0; v < plan.master.size(); ++v) copies += plan.replicas(v);
  return static_cast<double>(copies) / static_cast<double>(plan.master.size());
}

double load_balance(const PartitionPlan& plan) {
  if (plan.edge_assignment.empty()) throw data_error("load balance of an empty plan");
  const std::uint64_t max_load = *std::max_element(plan.worker_edge_count.begin(),
                                                   plan.worker_edge_count.end());
  const double mean = static_cast<double>(plan.edge_assignment.size()) /
                      static_cast<double>(plan.num_workers);
  return static_cast<double>(max_load) / mean;
}

void write_plan(const PartitionPlan& plan, const Graph& g, std::ostream& out) {
  out << "gpsel-plan 1\n";
  out << "seed " << plan.seed << "\n";
  out << "psid " << plan.psid << "\n";
  out << "workers " << plan.num_workers << "\n";
  out << "edges " << plan.edge_assignment.size() << "\n";
  out << "vertices " << plan.master.size() << "\n";
  for (EdgeIndex e = 0; e < plan.edge_assignment.size(); ++e) {
    out << "e " << e << " " << plan.edge_assignment[e] << "\n";
  }
  for (std::size_t v = 0; v < plan.master.size(); ++v) {
    out << "v " << g.id_of(static_cast<std::uint32_t>(v)) << " " << plan.master[v];
    for (WorkerId m : plan.mirrors[v]) out << " " << m;
    out << "\n";
  }
}

PartitionPlan read_plan(std::istream& in, const Graph& g) {
  PartitionPlan plan;
  std::string magic;
  int version = 0;
  in >> magic >> version;
  if (magic != "gpsel-plan" || version != 1) {
    throw parse_error("bad plan header", 1);
  }
  std::string key;
  std::size_t edges = 0, vertices = 0;
  while (in >> key) {
    if (key == "seed") in >> plan.seed;
    else if (key == "psid") in >> plan.psid;
    else if (key == "workers") in >> plan.num_workers;
    else if (key == "edges") in >> edges;
    else if (key == "vertices") {
      in >> vertices;
      break;
    } else {
      throw parse_error("unexpected plan key '" + key + "'", 0);
    }
  }
  if (edges != g.num_edges() || vertices != g.num_vertices()) {
    throw data_error("plan does not match graph dimensions");
  }
  plan.edge_assignment.assign(edges, 0);
  plan.master.assign(vertices, 0);
  plan.mirrors.assign(vertices, {});
  plan.worker_edge_count.assign(plan.num_workers, 0);
  std::string line;
  std::getline(in, line);  // finish the header line
  std::size_t seen_edges = 0, seen_vertices = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "e") {
      EdgeIndex e;
      WorkerId w;
      ls >> e >> w;
      plan.edge_assignment.at(e) = w;
      plan.worker_edge_count.at(w)++;
      ++seen_edges;
    } else if (tag == "v") {
      VertexId id;
      WorkerId master;
      ls >> id >> master;
      const std::uint32_t vi = g.index_of(id);
      plan.master[vi] = master;
      WorkerId m;
      while (ls >> m) plan.mirrors[vi].push_back(m);
      ++seen_vertices;
    } else {
      throw parse_error("unexpected plan row '" + line + "'", 0);
    }
  }
  if (seen_edges != edges || seen_vertices != vertices) {
    throw data_error("plan file is truncated");
  }
  return plan;
}

}  // namespace gpsel

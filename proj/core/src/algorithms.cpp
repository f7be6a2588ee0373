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

#include "gpsel/algorithms.hpp"

#include <algorithm>

#include "gpsel/rng.hpp"

namespace gpsel::algo {

namespace {

// ---------------------------------------------------------------------------
// Degree (AID / AOD)

struct DegreeProgram {
  using value_type = std::int64_t;
  using gather_type = std::int64_t;
  using emissions_type = gas::NoEmissions;

  DegreeMode mode;

  bool all_active() const { return true; }
  int fixed_supersteps() const { return 1; }
  bool gathers() const { return true; }
  DegreeMode gather_mode() const { return mode; }
  bool scatters() const { return false; }
  DegreeMode scatter_mode() const { return mode; }

  value_type init(const Graph&, std::uint32_t) const { return 0; }
  gather_type gather_init() const { return 0; }
  std::uint64_t gather(const Graph&, std::uint32_t, EdgeIndex, std::uint32_t,
                       const value_type&, const value_type&, int,
                       gather_type& acc) const {
    acc += 1;
    return 1;
  }
  void merge(gather_type& into, gather_type&& from) const { into += from; }
  gas::ApplyOutcome apply(const Graph&, std::uint32_t, value_type& val,
                          const gather_type& acc, bool, int,
                          emissions_type&) const {
    val = acc;
    return {true, 1, false};
  }
  bool scatter(const Graph&, std::uint32_t, const value_type&, EdgeIndex,
               std::uint32_t, int) const {
    return false;
  }
};

// ---------------------------------------------------------------------------
// PageRank

struct PageRankProgram {
  using value_type = double;
  using gather_type = double;
  using emissions_type = gas::NoEmissions;

  int iterations;
  double damping;

  bool all_active() const { return true; }
  int fixed_supersteps() const { return iterations; }
  bool gathers() const { return true; }
  DegreeMode gather_mode() const { return DegreeMode::in; }
  bool scatters() const { return false; }
  DegreeMode scatter_mode() const { return DegreeMode::out; }

  value_type init(const Graph& g, std::uint32_t) const {
    return 1.0 / double(g.num_vertices());
  }
  gather_type gather_init() const { return 0.0; }
  std::uint64_t gather(const Graph& g, std::uint32_t, EdgeIndex, std::uint32_t nbr,
                       const value_type&, const value_type& nbr_val, int,
                       gather_type& acc) const {
    acc += nbr_val / double(g.degree_by_index(nbr, DegreeMode::out));
    return 1;
  }
  void merge(gather_type& into, gather_type&& from) const { into += from; }
  gas::ApplyOutcome apply(const Graph&, std::uint32_t, value_type& val,
                          const gather_type& acc, bool, int,
                          emissions_type&) const {
    val = (1.0 - damping) + damping * acc;
    return {true, 1, false};
  }
  bool scatter(const Graph&, std::uint32_t, const value_type&, EdgeIndex,
               std::uint32_t, int) const {
    return false;
  }
};

// ---------------------------------------------------------------------------
// Greedy coloring, ascending-id priority

struct ColorGather {
  bool blocked = false;               // some lower-id neighbor still uncolored
  std::vector<std::int64_t> used;     // colors of lower-id colored neighbors
};

struct ColoringProgram {
  using value_type = std::int64_t;  // -1 = uncolored
  using gather_type = ColorGather;
  using emissions_type = gas::NoEmissions;

  bool all_active() const { return false; }
  int fixed_supersteps() const { return 0; }
  bool gathers() const { return true; }
  DegreeMode gather_mode() const { return DegreeMode::both; }
  bool scatters() const { return true; }
  DegreeMode scatter_mode() const { return DegreeMode::both; }

  value_type init(const Graph&, std::uint32_t) const { return -1; }
  gather_type gather_init() const { return {}; }
  std::uint64_t gather(const Graph&, std::uint32_t self, EdgeIndex,
                       std::uint32_t nbr, const value_type&,
                       const value_type& nbr_val, int, gather_type& acc) const {
    if (nbr < self) {
      if (nbr_val < 0) {
        acc.blocked = true;
      } else {
        acc.used.push_back(nbr_val);
      }
    }
    return 1;
  }
  void merge(gather_type& into, gather_type&& from) const {
    into.blocked |= from.blocked;
    into.used.insert(into.used.end(), from.used.begin(), from.used.end());
  }
  gas::ApplyOutcome apply(const Graph&, std::uint32_t, value_type& val,
                          const gather_type& acc, bool, int,
                          emissions_type&) const {
    if (val >= 0) return {false, 1, false};
    if (acc.blocked) return {false, 1, true};  // wait for lower neighbors
    std::vector<std::int64_t> used = acc.used;
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::int64_t color = 0;
    for (std::int64_t u : used) {
      if (u == color) ++color;
      else if (u > color) break;
    }
    val = color;
    return {true, 1 + used.size(), false};
  }
  bool scatter(const Graph&, std::uint32_t self, const value_type&, EdgeIndex,
               std::uint32_t nbr, int) const {
    return nbr > self;  // wake the higher neighbors that may now be unblocked
  }
};

// ---------------------------------------------------------------------------
// Neighborhood collection shared by APCN / TC / CC

std::uint64_t sorted_intersection_size(const std::vector<std::uint32_t>& a,
                                       const std::vector<std::uint32_t>& b) {
  std::size_t i = 0, j = 0;
  std::uint64_t n = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) ++i;
    else if (b[j] < a[i]) ++j;
    else { ++n; ++i; ++j; }
  }
  return n;
}

struct ApcnProgram {
  using value_type = std::uint32_t;  // distinct-neighbor count, informational
  using gather_type = std::vector<std::uint32_t>;
  using emissions_type = std::map<std::pair<VertexId, VertexId>, std::uint64_t>;

  bool all_active() const { return true; }
  int fixed_supersteps() const { return 1; }
  bool gathers() const { return true; }
  DegreeMode gather_mode() const { return DegreeMode::both; }
  bool scatters() const { return false; }
  DegreeMode scatter_mode() const { return DegreeMode::both; }

  value_type init(const Graph&, std::uint32_t) const { return 0; }
  gather_type gather_init() const { return {}; }
  std::uint64_t gather(const Graph&, std::uint32_t self, EdgeIndex,
                       std::uint32_t nbr, const value_type&, const value_type&,
                       int, gather_type& acc) const {
    if (nbr != self) acc.push_back(nbr);
    return 1;
  }
  void merge(gather_type& into, gather_type&& from) const {
    into.insert(into.end(), from.begin(), from.end());
  }
  gas::ApplyOutcome apply(const Graph& g, std::uint32_t, value_type& val,
                          const gather_type& acc, bool, int,
                          emissions_type& emissions) const {
    std::vector<std::uint32_t> nbrs = acc;
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    val = static_cast<std::uint32_t>(nbrs.size());
    std::uint64_t pairs = 0;
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        emissions[{g.id_of(nbrs[i]), g.id_of(nbrs[j])}]++;
        ++pairs;
      }
    }
    return {true, 1 + nbrs.size() + pairs, false};
  }
  bool scatter(const Graph&, std::uint32_t, const value_type&, EdgeIndex,
               std::uint32_t, int) const {
    return false;
  }
};

/// Phase 1 collects distinct direction-agnostic neighbor sets, phase 2 counts
/// per-vertex wedge closures (sum over neighbors of the intersection size, each
/// unordered incident pair visited through its canonical edge instance).
struct WedgeState {
  std::vector<std::uint32_t> nbrs;
  std::uint64_t wedges = 0;
};

struct WedgeGather {
  std::vector<std::uint32_t> ids;  // step 1
  std::uint64_t count = 0;         // step 2
};

struct WedgeProgram {
  using value_type = WedgeState;
  using gather_type = WedgeGather;
  using emissions_type = gas::NoEmissions;

  bool count_wedges_only = true;  // false adds the coefficient division cost

  bool all_active() const { return true; }
  int fixed_supersteps() const { return 2; }
  bool gathers() const { return true; }
  DegreeMode gather_mode() const { return DegreeMode::both; }
  bool scatters() const { return false; }
  DegreeMode scatter_mode() const { return DegreeMode::both; }

  value_type init(const Graph&, std::uint32_t) const { return {}; }
  gather_type gather_init() const { return {}; }
  std::uint64_t gather(const Graph& g, std::uint32_t self, EdgeIndex e,
                       std::uint32_t nbr, const value_type& self_val,
                       const value_type& nbr_val, int step,
                       gather_type& acc) const {
    if (step == 1) {
      if (nbr != self) acc.ids.push_back(nbr);
      return 1;
    }
    // Step 2: visit each unordered adjacent pair once, whichever worker holds
    // its canonical instance.
    if (nbr == self) return 1;
    if (g.canonical_instance(self, nbr) != e) return 1;
    acc.count += sorted_intersection_size(self_val.nbrs, nbr_val.nbrs);
    return 1 + self_val.nbrs.size() + nbr_val.nbrs.size();
  }
  void merge(gather_type& into, gather_type&& from) const {
    into.ids.insert(into.ids.end(), from.ids.begin(), from.ids.end());
    into.count += from.count;
  }
  gas::ApplyOutcome apply(const Graph&, std::uint32_t, value_type& val,
                          const gather_type& acc, bool, int step,
                          emissions_type&) const {
    if (step == 1) {
      val.nbrs = acc.ids;
      std::sort(val.nbrs.begin(), val.nbrs.end());
      val.nbrs.erase(std::unique(val.nbrs.begin(), val.nbrs.end()), val.nbrs.end());
      return {true, 1 + val.nbrs.size(), false};
    }
    val.wedges = acc.count;
    return {true, count_wedges_only ? 1u : 3u, false};
  }
  bool scatter(const Graph&, std::uint32_t, const value_type&, EdgeIndex,
               std::uint32_t, int) const {
    return false;
  }
};

// ---------------------------------------------------------------------------
// Random walk

struct Walker {
  VertexId source;
  std::vector<VertexId> path;

  std::size_t hops() const { return path.size() - 1; }
};

struct WalkerBag {
  std::vector<Walker> walkers;
};

struct RandomWalkProgram {
  using value_type = WalkerBag;
  using gather_type = std::vector<Walker>;
  using emissions_type = std::map<VertexId, std::vector<VertexId>>;

  int steps;
  CounterRng rng;
  const std::vector<std::vector<EdgeIndex>>* out_instances;  // per dense vertex

  bool all_active() const { return false; }
  int fixed_supersteps() const { return 0; }
  bool gathers() const { return true; }
  DegreeMode gather_mode() const { return DegreeMode::in; }
  bool scatters() const { return true; }
  DegreeMode scatter_mode() const { return DegreeMode::out; }

  bool terminal_at(std::uint32_t vi, const Walker& w) const {
    return static_cast<int>(w.hops()) >= steps || (*out_instances)[vi].empty();
  }
  EdgeIndex chosen_instance(std::uint32_t vi, const Walker& w) const {
    const auto& outs = (*out_instances)[vi];
    return outs[rng.below(w.source, w.hops(), outs.size())];
  }

  value_type init(const Graph& g, std::uint32_t vi) const {
    const VertexId id = g.id_of(vi);
    return {{Walker{id, {id}}}};
  }
  gather_type gather_init() const { return {}; }
  std::uint64_t gather(const Graph& g, std::uint32_t self, EdgeIndex e,
                       std::uint32_t nbr, const value_type&,
                       const value_type& nbr_val, int, gather_type& acc) const {
    // nbr is the walk pivot; pull over the walkers whose chosen out-edge is
    // exactly this instance.
    for (const Walker& w : nbr_val.walkers) {
      if (terminal_at(nbr, w)) continue;
      if (chosen_instance(nbr, w) != e) continue;
      Walker moved = w;
      moved.path.push_back(g.id_of(self));
      acc.push_back(std::move(moved));
    }
    return std::max<std::uint64_t>(1, nbr_val.walkers.size());
  }
  void merge(gather_type& into, gather_type&& from) const {
    into.insert(into.end(), std::make_move_iterator(from.begin()),
                std::make_move_iterator(from.end()));
  }
  gas::ApplyOutcome apply(const Graph&, std::uint32_t vi, value_type& val,
                          const gather_type& acc, bool, int step,
                          emissions_type& emissions) const {
    std::uint64_t ops = 1;
    const bool had = !val.walkers.empty();
    if (step == 1) {
      // Walkers that are already terminal at their source never move.
      for (const Walker& w : val.walkers) {
        if (terminal_at(vi, w)) emissions[w.source] = w.path;
        ++ops;
      }
    }
    std::vector<Walker> incoming = acc;
    std::sort(incoming.begin(), incoming.end(),
              [](const Walker& a, const Walker& b) { return a.source < b.source; });
    val.walkers.clear();
    for (Walker& w : incoming) {
      ++ops;
      if (terminal_at(vi, w)) {
        emissions[w.source] = std::move(w.path);
      } else {
        val.walkers.push_back(std::move(w));
      }
    }
    const bool changed = had || !val.walkers.empty();
    return {changed, ops, !val.walkers.empty()};
  }
  bool scatter(const Graph&, std::uint32_t self, const value_type& val,
               EdgeIndex e, std::uint32_t, int) const {
    for (const Walker& w : val.walkers) {
      if (!terminal_at(self, w) && chosen_instance(self, w) == e) return true;
    }
    return false;
  }
};

std::vector<std::vector<EdgeIndex>> build_out_instances(const Graph& g) {
  std::vector<std::vector<EdgeIndex>> outs(g.num_vertices());
  for (std::uint32_t vi = 0; vi < g.num_vertices(); ++vi) {
    outs[vi] = g.incident_edges(vi, DegreeMode::out);
  }
  return outs;
}

template <typename Map, typename Values, typename Fn>
Map collect(const Graph& g, const Values& values, Fn&& fn) {
  Map out;
  for (std::uint32_t vi = 0; vi < g.num_vertices(); ++vi) {
    out[g.id_of(vi)] = fn(values[vi]);
  }
  return out;
}

}  // namespace

std::map<VertexId, std::int64_t> run_degree(const Graph& g,
                                            const PartitionPlan& plan,
                                            DegreeMode mode,
                                            const gas::CostModel& cost,
                                            const gas::EngineOptions& opts) {
  auto r = gas::execute(g, plan, DegreeProgram{mode}, cost, opts);
  return collect<std::map<VertexId, std::int64_t>>(g, r.values,
                                                   [](std::int64_t v) { return v; });
}

std::map<VertexId, double> run_pagerank(const Graph& g, const PartitionPlan& plan,
                                        int iterations, double damping,
                                        const gas::CostModel& cost,
                                        const gas::EngineOptions& opts) {
  if (iterations < 1) throw config_error("pagerank needs at least one iteration");
  auto r = gas::execute(g, plan, PageRankProgram{iterations, damping}, cost, opts);
  return collect<std::map<VertexId, double>>(g, r.values, [](double v) { return v; });
}

std::map<VertexId, std::int64_t> run_greedy_coloring(const Graph& g,
                                                     const PartitionPlan& plan,
                                                     const gas::CostModel& cost,
                                                     const gas::EngineOptions& opts) {
  auto r = gas::execute(g, plan, ColoringProgram{}, cost, opts);
  return collect<std::map<VertexId, std::int64_t>>(g, r.values,
                                                   [](std::int64_t v) { return v; });
}

std::map<std::pair<VertexId, VertexId>, std::uint64_t> run_apcn(
    const Graph& g, const PartitionPlan& plan, const gas::CostModel& cost,
    const gas::EngineOptions& opts) {
  auto r = gas::execute(g, plan, ApcnProgram{}, cost, opts);
  return std::move(r.emissions);
}

std::uint64_t run_triangle_count(const Graph& g, const PartitionPlan& plan,
                                 const gas::CostModel& cost,
                                 const gas::EngineOptions& opts) {
  auto r = gas::execute(g, plan, WedgeProgram{true}, cost, opts);
  std::uint64_t total = 0;
  for (const WedgeState& s : r.values) total += s.wedges;
  return total / 6;  // every triangle contributes two wedges at each corner
}

std::map<VertexId, double> run_clustering_coeff(const Graph& g,
                                                const PartitionPlan& plan,
                                                const gas::CostModel& cost,
                                                const gas::EngineOptions& opts) {
  auto r = gas::execute(g, plan, WedgeProgram{false}, cost, opts);
  std::map<VertexId, double> out;
  for (std::uint32_t vi = 0; vi < g.num_vertices(); ++vi) {
    const WedgeState& s = r.values[vi];
    const double k = double(s.nbrs.size());
    // wedges/2 = distinct neighbor pairs that are themselves adjacent
    out[g.id_of(vi)] = k < 2 ? 0.0 : (double(s.wedges) / 2.0) / (k * (k - 1.0));
  }
  return out;
}

std::map<VertexId, std::vector<VertexId>> run_random_walk(
    const Graph& g, const PartitionPlan& plan, int steps, std::uint64_t seed,
    const gas::CostModel& cost, const gas::EngineOptions& opts) {
  if (steps < 1) throw config_error("random walk needs steps >= 1");
  const auto outs = build_out_instances(g);
  RandomWalkProgram prog{steps, CounterRng{seed}, &outs};
  auto r = gas::execute(g, plan, prog, cost, opts);
  return std::move(r.emissions);
}

const std::vector<AlgorithmEntry>& algorithm_registry() {
  static const std::vector<AlgorithmEntry> entries = {
      {"AID", "algos/aid.gpc"},   {"AOD", "algos/aod.gpc"},
      {"PR", "algos/pagerank.gpc"}, {"GC", "algos/coloring.gpc"},
      {"APCN", "algos/apcn.gpc"}, {"TC", "algos/triangles.gpc"},
      {"CC", "algos/clustering.gpc"}, {"RW", "algos/randomwalk.gpc"},
  };
  return entries;
}

const AlgorithmEntry& algorithm_by_name(const std::string& name) {
  for (const AlgorithmEntry& e : algorithm_registry()) {
    if (e.name == name) return e;
  }
  throw not_found_error("unknown algorithm: " + name);
}

std::pair<AlgoResult, gas::ExecutionLog> run_algorithm(
    const std::string& name, const Graph& g, const PartitionPlan& plan,
    const AlgorithmParams& params, const gas::CostModel& cost,
    const gas::EngineOptions& opts) {
  AlgoResult result;
  gas::ExecutionLog log;

  auto finish = [&](auto execres) {
    log = execres.log;
    return execres;
  };

  if (name == "AID" || name == "AOD") {
    auto r = finish(gas::execute(
        g, plan, DegreeProgram{name == "AID" ? DegreeMode::in : DegreeMode::out},
        cost, opts));
    for (std::uint32_t vi = 0; vi < g.num_vertices(); ++vi) {
      result.vertex_ints[g.id_of(vi)] = r.values[vi];
    }
  } else if (name == "PR") {
    auto r = finish(gas::execute(
        g, plan, PageRankProgram{params.pr_iterations, params.pr_damping}, cost,
        opts));
    for (std::uint32_t vi = 0; vi < g.num_vertices(); ++vi) {
      result.vertex_reals[g.id_of(vi)] = r.values[vi];
    }
  } else if (name == "GC") {
    auto r = finish(gas::execute(g, plan, ColoringProgram{}, cost, opts));
    for (std::uint32_t vi = 0; vi < g.num_vertices(); ++vi) {
      result.vertex_ints[g.id_of(vi)] = r.values[vi];
    }
  } else if (name == "APCN") {
    auto r = finish(gas::execute(g, plan, ApcnProgram{}, cost, opts));
    result.pair_counts = std::move(r.emissions);
  } else if (name == "TC") {
    auto r = finish(gas::execute(g, plan, WedgeProgram{true}, cost, opts));
    std::uint64_t total = 0;
    for (const WedgeState& s : r.values) total += s.wedges;
    result.scalar = total / 6;
  } else if (name == "CC") {
    auto r = finish(gas::execute(g, plan, WedgeProgram{false}, cost, opts));
    for (std::uint32_t vi = 0; vi < g.num_vertices(); ++vi) {
      const WedgeState& s = r.values[vi];
      const double k = double(s.nbrs.size());
      result.vertex_reals[g.id_of(vi)] =
          k < 2 ? 0.0 : (double(s.wedges) / 2.0) / (k * (k - 1.0));
    }
  } else if (name == "RW") {
    const auto outs = build_out_instances(g);
    RandomWalkProgram prog{params.rw_steps, CounterRng{params.rw_seed}, &outs};
    auto r = finish(gas::execute(g, plan, prog, cost, opts));
    result.walks = std::move(r.emissions);
  } else {
    throw not_found_error("unknown algorithm: " + name);
  }

  log.graph = g.name();
  log.algorithm = name;
  return {std::move(result), std::move(log)};
}

}  // namespace gpsel::algo

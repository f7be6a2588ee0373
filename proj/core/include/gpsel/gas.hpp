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

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "gpsel/graph.hpp"
#include "gpsel/partition.hpp"

namespace gpsel::gas {

/// Deterministic stand-in for wall-clock time. Compute is charged per
/// primitive gather/apply/scatter operation, messages per value transfer
/// (charged to sender and receiver), and one barrier per superstep.
struct CostModel {
  double c_compute = 1.0;
  double c_msg = 10.0;
  double c_sync = 50.0;
};

struct EngineOptions {
  std::uint32_t max_supersteps = 100000;
  bool parallel = false;        // thread the gather phase; results identical
  std::uint32_t num_threads = 0;  // 0 = hardware concurrency
};

/// One task record. execution_time covers the run after partitioning only:
/// sum over supersteps of (busiest worker's compute + message cost) plus the
/// barrier cost, in cost units.
struct ExecutionLog {
  std::string graph;
  std::string algorithm;
  int psid = 0;
  std::uint32_t num_workers = 1;
  double execution_time = 0.0;
  std::uint64_t message_count = 0;
  std::uint32_t superstep_count = 0;
  double max_worker_compute = 0.0;
  double vertex_sweeps = 0.0;  // instrumentation: init sweep + applied/|V| per superstep
  double wall_ms = 0.0;        // measured wall clock; never serialized
};

struct ApplyOutcome {
  bool changed = false;
  std::uint64_t ops = 1;
  bool reactivate = false;
};

/// Tag for programs without global emissions.
struct NoEmissions {};

/// Per-worker local adjacency over an edge assignment: for each worker, the
/// edges it holds indexed by source and by destination.
class WorkerAdjacency {
 public:
  WorkerAdjacency(const Graph& g, const PartitionPlan& plan);

  std::span<const EdgeIndex> local_forward(WorkerId w, std::uint32_t vi) const;
  std::span<const EdgeIndex> local_inverted(WorkerId w, std::uint32_t vi) const;
  std::uint64_t local_vertex_copies(WorkerId w) const { return copies_[w]; }

  /// Endpoint dense indices of edge e, computed once up front.
  std::pair<std::uint32_t, std::uint32_t> endpoints(EdgeIndex e) const {
    return endpoints_[e];
  }

  template <typename Fn>
  void for_each_local_edge(WorkerId w, std::uint32_t vi, bool directed,
                           DegreeMode mode, Fn&& fn) const {
    const bool want_out = !directed || mode != DegreeMode::in;
    const bool want_in = !directed || mode != DegreeMode::out;
    if (want_out) {
      for (EdgeIndex e : local_forward(w, vi)) fn(e, endpoints_[e].second);
    }
    if (want_in) {
      for (EdgeIndex e : local_inverted(w, vi)) {
        if (endpoints_[e].first == endpoints_[e].second && want_out) continue;
        fn(e, endpoints_[e].first);
      }
    }
  }

 private:
  std::uint32_t num_vertices_;
  std::vector<std::vector<EdgeIndex>> fwd_edges_;  // per worker, sorted (src,dst)
  std::vector<std::vector<EdgeIndex>> inv_edges_;  // per worker, sorted (dst,src)
  std::vector<std::vector<std::uint32_t>> fwd_off_;
  std::vector<std::vector<std::uint32_t>> inv_off_;
  std::vector<std::uint64_t> copies_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> endpoints_;
};

template <typename Program>
struct ExecResult {
  std::vector<typename Program::value_type> values;  // by dense vertex index
  typename Program::emissions_type emissions;
  ExecutionLog log;
};

/// Synchronous superstep executor. Per superstep and active vertex: every
/// holder computes a local gather partial over its local edges, mirrors ship
/// one partial to the master, the master folds partials in ascending worker
/// id, applies, and broadcasts the new value to mirrors when it changed;
/// scatter then runs on every holder's local edges and activates neighbors.
/// Activations are visible engine-wide at the next superstep. All folds use
/// fixed orders, so identical inputs give identical results and logs.
template <typename Program>
ExecResult<Program> execute(const Graph& g, const PartitionPlan& plan,
                            const Program& prog, const CostModel& cost = {},
                            const EngineOptions& options = {}) {
  using value_type = typename Program::value_type;
  using gather_type = typename Program::gather_type;

  const auto wall_start = std::chrono::steady_clock::now();
  const std::uint32_t nv = static_cast<std::uint32_t>(g.num_vertices());
  const std::uint32_t num_workers = plan.num_workers;
  const WorkerAdjacency adj(g, plan);

  ExecResult<Program> result;
  result.log.num_workers = num_workers;
  result.log.psid = plan.psid;
  result.log.graph = g.name();

  std::vector<double> worker_compute(num_workers, 0.0);

  // Init phase: every worker materializes its local vertex copies.
  result.values.reserve(nv);
  for (std::uint32_t vi = 0; vi < nv; ++vi) result.values.push_back(prog.init(g, vi));
  {
    double max_init = 0.0;
    for (WorkerId w = 0; w < num_workers; ++w) {
      const double c = cost.c_compute * double(adj.local_vertex_copies(w));
      worker_compute[w] += c;
      max_init = std::max(max_init, c);
    }
    result.log.execution_time += max_init + cost.c_sync;
    result.log.vertex_sweeps += 1.0;
  }

  std::vector<std::uint32_t> active(nv);
  for (std::uint32_t vi = 0; vi < nv; ++vi) active[vi] = vi;

  const bool all_active = prog.all_active();
  const int fixed = prog.fixed_supersteps();

  struct Staged {
    std::uint32_t vi;
    value_type value;
    bool changed;
    bool reactivate;
  };

  std::vector<gather_type> accs;
  std::vector<std::uint8_t> gathered_any;
  std::vector<Staged> staged;
  std::vector<std::uint8_t> next_mark(nv, 0);

  std::uint32_t t = 0;
  while (true) {
    if (all_active) {
      if (static_cast<int>(t) >= fixed) break;
    } else if (active.empty()) {
      break;
    }
    ++t;
    if (t > options.max_supersteps) {
      throw nonconvergence_error("program exceeded the superstep cap of " +
                                 std::to_string(options.max_supersteps));
    }

    std::vector<double> step_compute(num_workers, 0.0);
    std::vector<std::uint64_t> sent(num_workers, 0), received(num_workers, 0);

    // Gather: per active vertex, one partial per holder, folded in ascending
    // worker id. Optionally threaded over the active list.
    accs.assign(active.size(), prog.gather_init());
    gathered_any.assign(active.size(), 0);
    if (prog.gathers()) {
      auto gather_range = [&](std::size_t lo, std::size_t hi,
                              std::vector<double>& compute_acc) {
        for (std::size_t k = lo; k < hi; ++k) {
          const std::uint32_t vi = active[k];
          gather_type folded = prog.gather_init();
          bool any = false;
          auto gather_on = [&](WorkerId w) {
            gather_type partial = prog.gather_init();
            bool local_any = false;
            std::uint64_t ops = 0;
            adj.for_each_local_edge(
                w, vi, g.directed(), prog.gather_mode(), [&](EdgeIndex e, std::uint32_t nbr) {
                  ops += prog.gather(g, vi, e, nbr, result.values[vi],
                                     result.values[nbr], static_cast<int>(t), partial);
                  local_any = true;
                });
            compute_acc[w] += cost.c_compute * double(ops);
            if (local_any) {
              prog.merge(folded, std::move(partial));
              any = true;
            }
          };
          const WorkerId master = plan.master[vi];
          // Ascending worker-id fold over master + mirrors.
          std::size_t mi = 0;
          const auto& mirrors = plan.mirrors[vi];
          bool master_done = false;
          while (mi < mirrors.size() || !master_done) {
            if (!master_done && (mi >= mirrors.size() || master < mirrors[mi])) {
              gather_on(master);
              master_done = true;
            } else {
              gather_on(mirrors[mi++]);
            }
          }
          accs[k] = std::move(folded);
          gathered_any[k] = any ? 1 : 0;
        }
      };

      std::uint32_t threads =
          options.parallel
              ? std::max<std::uint32_t>(1, options.num_threads
                                               ? options.num_threads
                                               : std::thread::hardware_concurrency())
              : 1;
      threads = std::min<std::uint32_t>(threads,
                                        std::max<std::size_t>(1, active.size()));
      if (threads <= 1) {
        gather_range(0, active.size(), step_compute);
      } else {
        std::vector<std::vector<double>> per_thread(threads,
                                                    std::vector<double>(num_workers, 0.0));
        std::vector<std::thread> pool;
        const std::size_t chunk = (active.size() + threads - 1) / threads;
        for (std::uint32_t i = 0; i < threads; ++i) {
          const std::size_t lo = i * chunk;
          const std::size_t hi = std::min(active.size(), lo + chunk);
          if (lo >= hi) break;
          pool.emplace_back([&, lo, hi, i] { gather_range(lo, hi, per_thread[i]); });
        }
        for (auto& th : pool) th.join();
        for (const auto& part : per_thread) {
          for (WorkerId w = 0; w < num_workers; ++w) step_compute[w] += part[w];
        }
      }

      // One partial per active mirror travels to the master.
      for (std::size_t k = 0; k < active.size(); ++k) {
        const std::uint32_t vi = active[k];
        const WorkerId master = plan.master[vi];
        for (WorkerId m : plan.mirrors[vi]) {
          sent[m]++;
          received[master]++;
          result.log.message_count++;
        }
      }
    }

    // Apply at masters, in ascending vertex order; stage the commits.
    staged.clear();
    staged.reserve(active.size());
    for (std::size_t k = 0; k < active.size(); ++k) {
      const std::uint32_t vi = active[k];
      const WorkerId master = plan.master[vi];
      value_type updated = result.values[vi];
      ApplyOutcome outcome =
          prog.apply(g, vi, updated, accs[k], gathered_any[k] != 0,
                     static_cast<int>(t), result.emissions);
      step_compute[master] += cost.c_compute * double(outcome.ops);
      if (outcome.changed) {
        for (WorkerId m : plan.mirrors[vi]) {
          sent[master]++;
          received[m]++;
          result.log.message_count++;
        }
      }
      staged.push_back({vi, std::move(updated), outcome.changed, outcome.reactivate});
    }
    result.log.vertex_sweeps += double(active.size()) / double(nv);

    for (Staged& s : staged) result.values[s.vi] = std::move(s.value);

    // Scatter from every holder's local edges; activations are shared.
    if (!all_active) {
      std::fill(next_mark.begin(), next_mark.end(), 0);
      for (const Staged& s : staged) {
        if (s.reactivate) next_mark[s.vi] = 1;
        if (!prog.scatters() || !s.changed) continue;
        const std::uint32_t vi = s.vi;
        auto scatter_on = [&](WorkerId w) {
          adj.for_each_local_edge(
              w, vi, g.directed(), prog.scatter_mode(), [&](EdgeIndex e, std::uint32_t nbr) {
                step_compute[w] += cost.c_compute;
                if (prog.scatter(g, vi, result.values[vi], e, nbr,
                                 static_cast<int>(t))) {
                  next_mark[nbr] = 1;
                }
              });
        };
        scatter_on(plan.master[vi]);
        for (WorkerId m : plan.mirrors[vi]) scatter_on(m);
      }
    }

    double step_max = 0.0;
    for (WorkerId w = 0; w < num_workers; ++w) {
      const double total =
          step_compute[w] + cost.c_msg * double(sent[w] + received[w]);
      step_max = std::max(step_max, total);
      worker_compute[w] += step_compute[w];
    }
    result.log.execution_time += step_max + cost.c_sync;
    result.log.superstep_count = t;

    if (!all_active) {
      active.clear();
      for (std::uint32_t vi = 0; vi < nv; ++vi) {
        if (next_mark[vi]) active.push_back(vi);
      }
    }
  }

  result.log.max_worker_compute =
      *std::max_element(worker_compute.begin(), worker_compute.end());
  result.log.wall_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - wall_start)
                           .count();
  return result;
}

/// The trivial single-worker plan (everything on worker 0).
PartitionPlan single_worker_plan(const Graph& g);

}  // namespace gpsel::gas

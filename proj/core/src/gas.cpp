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

#include "gpsel/gas.hpp"

#include <algorithm>

namespace gpsel::gas {

WorkerAdjacency::WorkerAdjacency(const Graph& g, const PartitionPlan& plan)
    : num_vertices_(static_cast<std::uint32_t>(g.num_vertices())) {
  const std::uint32_t w = plan.num_workers;
  endpoints_.resize(g.num_edges());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    endpoints_[e] = {g.index_of(g.edge(e).src), g.index_of(g.edge(e).dst)};
  }

  fwd_edges_.assign(w, {});
  inv_edges_.assign(w, {});
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const WorkerId worker = plan.edge_assignment[e];
    fwd_edges_[worker].push_back(e);
    inv_edges_[worker].push_back(e);
  }
  // Canonical order already sorts by (src, dst); per-worker subsequences keep it.
  for (WorkerId i = 0; i < w; ++i) {
    std::sort(inv_edges_[i].begin(), inv_edges_[i].end(),
              [this](EdgeIndex a, EdgeIndex b) {
                if (endpoints_[a].second != endpoints_[b].second)
                  return endpoints_[a].second < endpoints_[b].second;
                if (endpoints_[a].first != endpoints_[b].first)
                  return endpoints_[a].first < endpoints_[b].first;
                return a < b;
              });
  }

  fwd_off_.assign(w, {});
  inv_off_.assign(w, {});
  copies_.assign(w, 0);
  for (WorkerId i = 0; i < w; ++i) {
    fwd_off_[i].assign(num_vertices_ + 1, 0);
    inv_off_[i].assign(num_vertices_ + 1, 0);
    for (EdgeIndex e : fwd_edges_[i]) fwd_off_[i][endpoints_[e].first + 1]++;
    for (EdgeIndex e : inv_edges_[i]) inv_off_[i][endpoints_[e].second + 1]++;
    for (std::uint32_t v = 0; v < num_vertices_; ++v) {
      fwd_off_[i][v + 1] += fwd_off_[i][v];
      inv_off_[i][v + 1] += inv_off_[i][v];
    }
  }
  for (std::uint32_t v = 0; v < num_vertices_; ++v) {
    copies_[plan.master[v]]++;
    for (WorkerId m : plan.mirrors[v]) copies_[m]++;
  }
}

std::span<const EdgeIndex> WorkerAdjacency::local_forward(WorkerId w,
                                                          std::uint32_t vi) const {
  const auto& off = fwd_off_[w];
  return {fwd_edges_[w].data() + off[vi], off[vi + 1] - off[vi]};
}

std::span<const EdgeIndex> WorkerAdjacency::local_inverted(WorkerId w,
                                                           std::uint32_t vi) const {
  const auto& off = inv_off_[w];
  return {inv_edges_[w].data() + off[vi], off[vi + 1] - off[vi]};
}

PartitionPlan single_worker_plan(const Graph& g) {
  PartitionPlan plan;
  plan.num_workers = 1;
  plan.psid = -1;
  plan.edge_assignment.assign(g.num_edges(), 0);
  plan.master.assign(g.num_vertices(), 0);
  plan.mirrors.assign(g.num_vertices(), {});
  plan.worker_edge_count = {g.num_edges()};
  return plan;
}

}  // namespace gpsel::gas

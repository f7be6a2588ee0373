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

#include "gpsel/gen.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <utility>

#include "gpsel/rng.hpp"

namespace gpsel::gen {

namespace {

using EdgeKey = std::pair<VertexId, VertexId>;

EdgeKey key_of(VertexId a, VertexId b, bool directed) {
  if (!directed && b < a) std::swap(a, b);
  return {a, b};
}

}  // namespace

Graph power_law(std::size_t n, std::size_t m, bool directed, std::uint64_t seed,
                std::string name) {
  if (n < 3 || m < n) throw config_error("power_law: need n >= 3 and m >= n");
  SequentialRng rng(seed, 1);
  std::set<EdgeKey> seen;
  std::vector<Edge> edges;
  std::vector<VertexId> endpoints;  // degree-weighted sampling pool

  auto add = [&](VertexId a, VertexId b) {
    if (a == b) return false;
    if (!seen.insert(key_of(a, b, directed)).second) return false;
    edges.push_back({a, b});
    endpoints.push_back(a);
    endpoints.push_back(b);
    return true;
  };

  // Seed clique large enough to absorb the per-vertex attachment budget.
  std::size_t k0 = 3;
  while (k0 * (k0 - 1) / 2 < (m - (n - k0)) / std::max<std::size_t>(1, n - k0) + 2 &&
         k0 < n) {
    ++k0;
  }
  for (VertexId i = 0; i < k0; ++i) {
    for (VertexId j = i + 1; j < k0; ++j) add(i, j);
  }

  // Attach the remaining vertices with a per-vertex budget that lands on m.
  const std::size_t remaining = n - k0;
  for (VertexId v = k0; v < n; ++v) {
    const std::size_t left = n - v;
    const std::size_t need = m - edges.size();
    std::size_t budget = need > left ? (need - left) / left + 1 : 1;
    budget = std::min(budget, v);  // cannot attach to more than v targets
    std::size_t attached = 0;
    std::size_t attempts = 0;
    while (attached < budget && attempts < budget * 30 + 50) {
      ++attempts;
      VertexId target = endpoints[rng.below(endpoints.size())];
      if (add(v, target)) ++attached;
    }
    // Fall back to sequential targets if sampling kept colliding.
    for (VertexId t = 0; attached < budget && t < v; ++t) {
      if (add(v, t)) ++attached;
    }
  }
  (void)remaining;

  // Top up with preferential extras to the exact edge count.
  std::size_t attempts = 0;
  while (edges.size() < m) {
    VertexId a = endpoints[rng.below(endpoints.size())];
    VertexId b = endpoints[rng.below(endpoints.size())];
    if (!add(a, b) && ++attempts > 100 * m) {
      throw config_error("power_law: cannot reach requested edge count");
    }
  }
  return Graph(std::move(edges), directed, std::move(name));
}

Graph uniform_random(std::size_t n, std::size_t m, bool directed,
                     std::uint64_t seed, std::string name) {
  if (n < 2 || m < n) throw config_error("uniform_random: need n >= 2 and m >= n");
  SequentialRng rng(seed, 2);
  std::set<EdgeKey> seen;
  std::vector<Edge> edges;
  auto add = [&](VertexId a, VertexId b) {
    if (a == b) return false;
    if (!seen.insert(key_of(a, b, directed)).second) return false;
    edges.push_back({a, b});
    return true;
  };
  for (VertexId v = 0; v < n; ++v) add(v, (v + 1) % n);  // spanning cycle
  while (edges.size() < m) {
    add(rng.below(n), rng.below(n));
  }
  return Graph(std::move(edges), directed, std::move(name));
}

Graph grid(std::size_t rows, std::size_t cols, std::string name) {
  std::vector<Edge> edges;
  auto id = [cols](std::size_t r, std::size_t c) {
    return static_cast<VertexId>(r * cols + c);
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
    }
  }
  return Graph(std::move(edges), /*directed=*/false, std::move(name));
}

Graph ring_with_chords(std::size_t n, std::size_t m, std::uint64_t seed,
                       std::string name) {
  return uniform_random(n, m, /*directed=*/false, seed, std::move(name));
}

const std::vector<DatasetSpec>& bundled_datasets() {
  static const std::vector<DatasetSpec> specs = {
      {"social-a", 600, 4800, false, "power_law", 101},
      {"web-a", 500, 3000, true, "uniform", 102},
      {"road-a", 900, 1740, false, "grid", 103},
      {"social-b", 800, 4000, false, "ring", 104},
      {"web-b", 1000, 8000, true, "power_law", 105},
      {"mesh-a", 400, 1600, false, "uniform", 106},
      {"cite-a", 700, 2100, true, "power_law", 107},
      {"social-c", 300, 3600, true, "uniform", 108},
      {"facebook", 4039, 88234, false, "power_law", 109},
      {"wiki", 7115, 103689, true, "uniform", 110},
  };
  return specs;
}

Graph build_dataset(const DatasetSpec& spec) {
  if (spec.kind == "power_law") {
    return power_law(spec.vertices, spec.edges, spec.directed, spec.seed, spec.name);
  }
  if (spec.kind == "uniform") {
    return uniform_random(spec.vertices, spec.edges, spec.directed, spec.seed,
                          spec.name);
  }
  if (spec.kind == "grid") {
    // rows*cols must equal spec.vertices; the bundled grid is 30x30.
    std::size_t rows = 1;
    while (rows * rows < spec.vertices) ++rows;
    if (rows * rows != spec.vertices) {
      throw config_error("grid dataset needs a square vertex count");
    }
    return grid(rows, rows, spec.name);
  }
  if (spec.kind == "ring") {
    return ring_with_chords(spec.vertices, spec.edges, spec.seed, spec.name);
  }
  throw config_error("unknown dataset kind: " + spec.kind);
}

Graph build_dataset(const std::string& name) {
  for (const DatasetSpec& spec : bundled_datasets()) {
    if (spec.name == name) return build_dataset(spec);
  }
  throw not_found_error("unknown bundled dataset: " + name);
}

void write_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write edge list file: " + path);
  out << "# " << g.name() << " |V|=" << g.num_vertices()
      << " |E|=" << g.num_edges() << (g.directed() ? " directed" : " undirected")
      << "\n";
  for (const Edge& e : g.edges()) out << e.src << " " << e.dst << "\n";
}

std::vector<std::string> write_bundled_datasets(const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> paths;
  for (const DatasetSpec& spec : bundled_datasets()) {
    const std::string path = dir + "/" + spec.name + ".txt";
    if (!std::filesystem::exists(path)) {
      write_edge_list(build_dataset(spec), path);
    }
    paths.push_back(path);
  }
  return paths;
}

}  // namespace gpsel::gen

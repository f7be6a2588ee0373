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

#include "gpsel/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

namespace gpsel {

Graph::Graph(std::vector<Edge> edges, bool directed, std::string name)
    : edges_(std::move(edges)), directed_(directed), name_(std::move(name)) {
  std::sort(edges_.begin(), edges_.end());
  build_indices();
}

void Graph::build_indices() {
  vertices_.clear();
  vertices_.reserve(edges_.size() * 2);
  for (const Edge& e : edges_) {
    vertices_.push_back(e.src);
    vertices_.push_back(e.dst);
  }
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());

  const std::size_t nv = vertices_.size();
  const std::size_t ne = edges_.size();

  fwd_order_.resize(ne);
  inv_order_.resize(ne);
  for (EdgeIndex e = 0; e < ne; ++e) {
    fwd_order_[e] = e;
    inv_order_[e] = e;
  }
  std::sort(inv_order_.begin(), inv_order_.end(), [this](EdgeIndex a, EdgeIndex b) {
    const Edge& ea = edges_[a];
    const Edge& eb = edges_[b];
    if (ea.dst != eb.dst) return ea.dst < eb.dst;
    if (ea.src != eb.src) return ea.src < eb.src;
    return a < b;
  });

  fwd_off_.assign(nv + 1, 0);
  inv_off_.assign(nv + 1, 0);
  self_loops_.assign(nv, 0);
  for (const Edge& e : edges_) {
    fwd_off_[index_of(e.src) + 1]++;
    inv_off_[index_of(e.dst) + 1]++;
    if (e.src == e.dst) self_loops_[index_of(e.src)]++;
  }
  for (std::size_t i = 0; i < nv; ++i) {
    fwd_off_[i + 1] += fwd_off_[i];
    inv_off_[i + 1] += inv_off_[i];
  }
}

bool Graph::has_vertex(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::uint32_t Graph::index_of(VertexId v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) {
    throw not_found_error("unknown vertex " + std::to_string(v));
  }
  return static_cast<std::uint32_t>(it - vertices_.begin());
}

std::span<const EdgeIndex> Graph::block(const std::vector<std::uint32_t>& offsets,
                                        const std::vector<EdgeIndex>& order,
                                        std::uint32_t vindex) const {
  return {order.data() + offsets[vindex], offsets[vindex + 1] - offsets[vindex]};
}

std::span<const EdgeIndex> Graph::forward_block(std::uint32_t vindex) const {
  return block(fwd_off_, fwd_order_, vindex);
}

std::span<const EdgeIndex> Graph::inverted_block(std::uint32_t vindex) const {
  return block(inv_off_, inv_order_, vindex);
}

std::vector<VertexId> Graph::out_neighbors(VertexId v) const {
  const std::uint32_t vi = index_of(v);
  std::vector<VertexId> result;
  if (directed_) {
    for (EdgeIndex e : forward_block(vi)) result.push_back(edges_[e].dst);
    return result;
  }
  return both_neighbors(v);
}

std::vector<VertexId> Graph::in_neighbors(VertexId v) const {
  const std::uint32_t vi = index_of(v);
  std::vector<VertexId> result;
  if (directed_) {
    for (EdgeIndex e : inverted_block(vi)) result.push_back(edges_[e].src);
    return result;
  }
  return both_neighbors(v);
}

std::vector<VertexId> Graph::both_neighbors(VertexId v) const {
  const std::uint32_t vi = index_of(v);
  std::vector<VertexId> result;
  for (EdgeIndex e : forward_block(vi)) result.push_back(edges_[e].dst);
  for (EdgeIndex e : inverted_block(vi)) result.push_back(edges_[e].src);
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::size_t Graph::degree(VertexId v, DegreeMode mode) const {
  return degree_by_index(index_of(v), mode);
}

std::size_t Graph::degree_by_index(std::uint32_t vi, DegreeMode mode) const {
  const std::size_t out = fwd_off_[vi + 1] - fwd_off_[vi];
  const std::size_t in = inv_off_[vi + 1] - inv_off_[vi];
  const std::size_t incident = out + in - self_loops_[vi];
  if (!directed_) return incident;
  switch (mode) {
    case DegreeMode::out:
      return out;
    case DegreeMode::in:
      return in;
    case DegreeMode::both:
      return incident;
  }
  return 0;
}

std::vector<EdgeIndex> Graph::incident_edges(std::uint32_t vi, DegreeMode mode) const {
  std::vector<EdgeIndex> result;
  const bool want_out = !directed_ || mode != DegreeMode::in;
  const bool want_in = !directed_ || mode != DegreeMode::out;
  if (want_out) {
    for (EdgeIndex e : forward_block(vi)) result.push_back(e);
  }
  if (want_in) {
    for (EdgeIndex e : inverted_block(vi)) {
      if (edges_[e].src == edges_[e].dst && want_out) continue;  // already seen
      result.push_back(e);
    }
  }
  return result;
}

EdgeIndex Graph::canonical_instance(std::uint32_t ai, std::uint32_t bi) const {
  const VertexId a = vertices_[ai];
  const VertexId b = vertices_[bi];
  EdgeIndex best = edges_.size();
  auto scan = [&](std::uint32_t from, VertexId to) {
    for (EdgeIndex e : forward_block(from)) {
      if (edges_[e].dst == to) {
        best = std::min(best, e);
        break;  // forward block is dst-sorted; first hit is smallest
      }
      if (edges_[e].dst > to) break;
    }
  };
  scan(ai, b);
  scan(bi, a);
  return best;  // == num_edges() when no such edge exists
}

Graph Graph::transposed() const {
  std::vector<Edge> flipped;
  flipped.reserve(edges_.size());
  for (const Edge& e : edges_) flipped.push_back({e.dst, e.src});
  return Graph(std::move(flipped), directed_, name_ + ".T");
}

namespace {

bool parse_vertex_token(const std::string& tok, VertexId& out) {
  if (tok.empty()) return false;
  out = 0;
  for (char c : tok) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    out = out * 10 + static_cast<VertexId>(c - '0');
  }
  return true;
}

}  // namespace

Graph load_edge_list_stream(std::istream& in, bool directed,
                            const LoadOptions& options, const std::string& name) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    ls >> a >> b;
    VertexId src, dst;
    if (!parse_vertex_token(a, src) || !parse_vertex_token(b, dst)) {
      throw parse_error("malformed edge line '" + line + "'", lineno);
    }
    if (ls >> extra) {
      throw parse_error("trailing tokens on edge line '" + line + "'", lineno);
    }
    edges.push_back({src, dst});
  }
  if (edges.empty()) {
    throw data_error("edge list '" + name + "' contains no edges");
  }
  std::sort(edges.begin(), edges.end());
  if (options.dedup) {
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  if (options.remap_ids) {
    std::vector<VertexId> ids;
    ids.reserve(edges.size() * 2);
    for (const Edge& e : edges) {
      ids.push_back(e.src);
      ids.push_back(e.dst);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    std::unordered_map<VertexId, VertexId> remap;
    remap.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) remap[ids[i]] = i;
    for (Edge& e : edges) {
      e.src = remap[e.src];
      e.dst = remap[e.dst];
    }
    std::sort(edges.begin(), edges.end());
  }
  return Graph(std::move(edges), directed, name);
}

Graph load_edge_list(const std::string& path, bool directed,
                     const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw not_found_error("cannot open edge list file: " + path);
  return load_edge_list_stream(in, directed, options, path);
}

}  // namespace gpsel

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
#include <span>
#include <string>
#include <vector>

#include "gpsel/common.hpp"

namespace gpsel {

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend bool operator<(const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  }
};

enum class DegreeMode { in, out, both };

struct LoadOptions {
  bool dedup = false;      // drop parallel duplicate edges
  bool remap_ids = false;  // compact ids to 0..|V|-1 in sorted-id order
};

/// Immutable edge-list graph. Edges are stored once, sorted by (src, dst);
/// an inverted index (edge positions sorted by (dst, src)) serves in-neighbor
/// queries. Undirected graphs store each input edge once and answer neighbor
/// queries symmetrically. Vertex lookup is a binary search over the sorted
/// distinct ids, then all per-vertex queries are O(1) block lookups.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<Edge> edges, bool directed, std::string name = "");

  bool directed() const { return directed_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }

  bool has_vertex(VertexId v) const;
  /// Dense index of v in [0, |V|). Throws not_found_error for unknown ids.
  std::uint32_t index_of(VertexId v) const;
  VertexId id_of(std::uint32_t index) const { return vertices_[index]; }

  /// Edge positions with src == v (canonical order).
  std::span<const EdgeIndex> forward_block(std::uint32_t vindex) const;
  /// Edge positions with dst == v, sorted by (dst, src).
  std::span<const EdgeIndex> inverted_block(std::uint32_t vindex) const;

  /// Neighbor lists by raw vertex id. Directed graphs keep multiplicity in
  /// file order of the sorted edge list; undirected lists are deduplicated
  /// unions over both stored orientations.
  std::vector<VertexId> out_neighbors(VertexId v) const;
  std::vector<VertexId> in_neighbors(VertexId v) const;
  std::vector<VertexId> both_neighbors(VertexId v) const;

  std::size_t degree(VertexId v, DegreeMode mode) const;
  std::size_t degree_by_index(std::uint32_t vindex, DegreeMode mode) const;

  /// Incident edge positions for engine traversal. For undirected graphs all
  /// three modes coincide (each stored edge appears once; self-loops are not
  /// double-counted). For directed graphs `both` concatenates out then in
  /// instances, skipping the duplicate self-loop in the inverted pass.
  std::vector<EdgeIndex> incident_edges(std::uint32_t vindex, DegreeMode mode) const;

  /// First canonical position of an edge joining {a, b} in either stored
  /// orientation; used to deduplicate pair work independent of partitioning.
  EdgeIndex canonical_instance(std::uint32_t a_index, std::uint32_t b_index) const;

  Graph transposed() const;

 private:
  void build_indices();
  std::span<const EdgeIndex> block(const std::vector<std::uint32_t>& offsets,
                                   const std::vector<EdgeIndex>& order,
                                   std::uint32_t vindex) const;

  std::vector<VertexId> vertices_;       // sorted distinct ids
  std::vector<Edge> edges_;              // sorted by (src, dst)
  std::vector<EdgeIndex> fwd_order_;     // identity, kept for uniform block API
  std::vector<EdgeIndex> inv_order_;     // edge positions sorted by (dst, src)
  std::vector<std::uint32_t> fwd_off_;   // size |V|+1
  std::vector<std::uint32_t> inv_off_;   // size |V|+1
  std::vector<std::uint32_t> self_loops_;  // per-vertex self-loop count
  bool directed_ = true;
  std::string name_;
};

/// Loads a whitespace-separated `src dst` edge list. Lines starting with `#`
/// are comments. Malformed lines raise parse_error with the line number; a
/// file with no edges raises data_error.
Graph load_edge_list(const std::string& path, bool directed,
                     const LoadOptions& options = {});

/// Same parser over an already-open stream (used by tests and ingestion).
Graph load_edge_list_stream(std::istream& in, bool directed,
                            const LoadOptions& options = {},
                            const std::string& name = "");

}  // namespace gpsel

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
#include <string>
#include <vector>

#include "gpsel/graph.hpp"

namespace gpsel::gen {

/// Deterministic synthetic graphs. All generators hit the requested vertex
/// and edge counts exactly, make every id in [0, n) appear in some edge, and
/// emit simple graphs (no parallel duplicates; no self-loops).

/// Preferential attachment, heavy-tailed degrees.
Graph power_law(std::size_t n, std::size_t m, bool directed, std::uint64_t seed,
                std::string name);

/// Spanning cycle plus uniformly random extra edges.
Graph uniform_random(std::size_t n, std::size_t m, bool directed,
                     std::uint64_t seed, std::string name);

/// rows x cols lattice with 4-neighborhoods (undirected).
Graph grid(std::size_t rows, std::size_t cols, std::string name);

/// Ring plus random chords (undirected small-world shape).
Graph ring_with_chords(std::size_t n, std::size_t m, std::uint64_t seed,
                       std::string name);

struct DatasetSpec {
  std::string name;
  std::size_t vertices;
  std::size_t edges;
  bool directed;
  std::string kind;  // power_law | uniform | grid | ring
  std::uint64_t seed;
};

/// The bundled corpus: eight desk-scale graphs of varied shape plus two
/// larger stand-ins with the published vertex/edge cardinalities of
/// Ego-Facebook (4039 / 88234, undirected) and Wiki-Vote (7115 / 103689,
/// directed).
const std::vector<DatasetSpec>& bundled_datasets();

Graph build_dataset(const DatasetSpec& spec);
Graph build_dataset(const std::string& name);

/// Writes a graph as a plain-text edge list (with a comment header).
void write_edge_list(const Graph& g, const std::string& path);

/// Generates every bundled dataset into `dir` (one .txt each); returns paths.
std::vector<std::string> write_bundled_datasets(const std::string& dir);

}  // namespace gpsel::gen

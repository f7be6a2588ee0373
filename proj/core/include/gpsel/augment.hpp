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
#include <functional>
#include <string>
#include <vector>

#include "gpsel/features.hpp"

namespace gpsel::aug {

/// One task row: a (graph, algorithm, strategy) execution with its features.
/// Synthetic rows carry the sorted multiset of constituent algorithm names
/// joined with '+' in `algorithm`.
struct TaskRecord {
  std::string graph;
  std::string algorithm;
  int psid = 0;
  std::uint32_t num_workers = 1;
  double exec_time = 0.0;
  std::uint64_t message_count = 0;
  std::uint32_t superstep_count = 0;
  feat::DataFeatureVector df;
  feat::AlgorithmFeatureVector af;
};

/// Combinations with replacement: (n+r-1)! / (r! (n-1)!), exact.
/// Throws data_error on uint64 overflow.
std::uint64_t crw_count(std::uint64_t n, std::uint64_t r);

/// Sum of crw_count(n, r) for r in [r_min, r_max].
std::uint64_t crw_total(std::uint64_t n, int r_min, int r_max);

struct AugmentSpec {
  std::vector<std::string> algorithms;  // sorted lexicographically internally
  int r_min = 2;
  int r_max = 9;
};

/// Expected synthetic corpus size for the given real-log corpus.
std::uint64_t augment_count(const std::vector<TaskRecord>& real_logs,
                            const AugmentSpec& spec);

/// Streams every synthetic record in canonical order: graph ascending, then
/// multiset (size, then lexicographic), then psid ascending. Each record sums
/// the constituents' algorithm features, times, message and superstep counts;
/// data features are the graph's. Real records are never emitted. A missing
/// (graph, algorithm, psid) constituent raises data_error naming the gap.
/// Returns the number of records produced.
std::uint64_t augment_stream(const std::vector<TaskRecord>& real_logs,
                             const AugmentSpec& spec,
                             const std::function<void(const TaskRecord&)>& sink);

/// Materialized variant of augment_stream.
std::vector<TaskRecord> augment(const std::vector<TaskRecord>& real_logs,
                                const AugmentSpec& spec);

}  // namespace gpsel::aug

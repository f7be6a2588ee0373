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

#include "gpsel/augment.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gpsel::aug {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw data_error("combination count overflows 64 bits");
  }
  return r;
}

}  // namespace

std::uint64_t crw_count(std::uint64_t n, std::uint64_t r) {
  if (n < 1 || r < 1) throw config_error("crw_count needs n >= 1 and r >= 1");
  // C(n+r-1, r) via the multiplicative form, dividing early to stay exact.
  std::uint64_t result = 1;
  for (std::uint64_t k = 1; k <= r; ++k) {
    result = checked_mul(result, n - 1 + k);
    result /= k;  // exact: result is C(n-1+k, k) after this step
  }
  return result;
}

std::uint64_t crw_total(std::uint64_t n, int r_min, int r_max) {
  std::uint64_t total = 0;
  for (int r = r_min; r <= r_max; ++r) {
    const std::uint64_t c = crw_count(n, std::uint64_t(r));
    if (total + c < total) throw data_error("combination total overflows 64 bits");
    total += c;
  }
  return total;
}

namespace {

struct CorpusIndex {
  std::vector<std::string> graphs;   // sorted
  std::vector<int> psids;            // sorted
  std::map<std::tuple<std::string, std::string, int>, const TaskRecord*> by_key;
};

CorpusIndex index_corpus(const std::vector<TaskRecord>& real_logs,
                         const std::vector<std::string>& algorithms) {
  CorpusIndex idx;
  std::set<std::string> graphs;
  std::set<int> psids;
  for (const TaskRecord& r : real_logs) {
    graphs.insert(r.graph);
    psids.insert(r.psid);
    idx.by_key[{r.graph, r.algorithm, r.psid}] = &r;
  }
  idx.graphs.assign(graphs.begin(), graphs.end());
  idx.psids.assign(psids.begin(), psids.end());
  for (const std::string& g : idx.graphs) {
    for (const std::string& a : algorithms) {
      for (int p : idx.psids) {
        if (!idx.by_key.count({g, a, p})) {
          throw data_error("incomplete corpus: no real log for (" + g + ", " + a +
                           ", psid " + std::to_string(p) + ")");
        }
      }
    }
  }
  return idx;
}

/// Enumerates multisets of {0..n-1} of size r as non-decreasing index
/// sequences, in lexicographic order.
template <typename Fn>
void for_each_multiset(std::size_t n, int r, Fn&& fn) {
  std::vector<std::size_t> pick(r, 0);
  while (true) {
    fn(pick);
    int i = r - 1;
    while (i >= 0 && pick[i] == n - 1) --i;
    if (i < 0) return;
    const std::size_t next = pick[i] + 1;
    for (int j = i; j < r; ++j) pick[j] = next;
  }
}

}  // namespace

std::uint64_t augment_count(const std::vector<TaskRecord>& real_logs,
                            const AugmentSpec& spec) {
  const CorpusIndex idx = index_corpus(real_logs, spec.algorithms);
  return checked_mul(
      checked_mul(crw_total(spec.algorithms.size(), spec.r_min, spec.r_max),
                  idx.graphs.size()),
      idx.psids.size());
}

std::uint64_t augment_stream(const std::vector<TaskRecord>& real_logs,
                             const AugmentSpec& spec,
                             const std::function<void(const TaskRecord&)>& sink) {
  if (spec.r_min < 2) {
    throw config_error("augmentation multisets start at size 2; real records are "
                       "never re-emitted");
  }
  if (spec.r_max < spec.r_min) throw config_error("r_max must be >= r_min");
  if (spec.algorithms.empty()) throw config_error("no algorithms to combine");

  std::vector<std::string> algos = spec.algorithms;
  std::sort(algos.begin(), algos.end());
  const CorpusIndex idx = index_corpus(real_logs, algos);

  std::uint64_t produced = 0;
  TaskRecord synth;
  for (const std::string& graph : idx.graphs) {
    for (int r = spec.r_min; r <= spec.r_max; ++r) {
      for_each_multiset(algos.size(), r, [&](const std::vector<std::size_t>& pick) {
        std::string tag;
        for (std::size_t i = 0; i < pick.size(); ++i) {
          if (i) tag += '+';
          tag += algos[pick[i]];
        }
        for (int psid : idx.psids) {
          const TaskRecord* first =
              idx.by_key.at({graph, algos[pick[0]], psid});
          synth = *first;
          synth.algorithm = tag;
          synth.exec_time = 0.0;
          synth.message_count = 0;
          synth.superstep_count = 0;
          synth.af = {};
          for (std::size_t i = 0; i < pick.size(); ++i) {
            const TaskRecord* part = idx.by_key.at({graph, algos[pick[i]], psid});
            synth.exec_time += part->exec_time;
            synth.message_count += part->message_count;
            synth.superstep_count += part->superstep_count;
            synth.af = synth.af + part->af;
          }
          sink(synth);
          ++produced;
        }
      });
    }
  }
  return produced;
}

std::vector<TaskRecord> augment(const std::vector<TaskRecord>& real_logs,
                                const AugmentSpec& spec) {
  std::vector<TaskRecord> out;
  augment_stream(real_logs, spec, [&](const TaskRecord& r) { out.push_back(r); });
  return out;
}

}  // namespace gpsel::aug

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

#include "gpsel/hash.hpp"

namespace gpsel {

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, counter), so results never depend on call order,
// thread count, or partitioning. Used for random walks, subsampling
// and synthetic graph generation.
struct CounterRng {
  std::uint64_t seed = 0;

  std::uint64_t u64(std::uint64_t stream, std::uint64_t counter) const {
    return mix64(mix64(seed ^ 0xA0761D6478BD642FULL) ^ mix64(stream) ^
                 mix64(counter ^ 0xE7037ED1A0B428DBULL));
  }

  /// Uniform double in [0, 1).
  double u01(std::uint64_t stream, std::uint64_t counter) const {
    return static_cast<double>(u64(stream, counter) >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t stream, std::uint64_t counter,
                      std::uint64_t n) const {
    return u64(stream, counter) % n;
  }
};

/// Stateful convenience wrapper over CounterRng for sequential use.
class SequentialRng {
 public:
  explicit SequentialRng(std::uint64_t seed, std::uint64_t stream = 0)
      : rng_{seed}, stream_(stream) {}

  std::uint64_t u64() { return rng_.u64(stream_, counter_++); }
  double u01() { return rng_.u01(stream_, counter_++); }
  std::uint64_t below(std::uint64_t n) { return rng_.below(stream_, counter_++, n); }

 private:
  CounterRng rng_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace gpsel

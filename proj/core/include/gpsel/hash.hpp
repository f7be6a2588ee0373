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

namespace gpsel {

// 64-bit finalizer from the splitmix64 generator (Steele, Lea, Flood 2014).
// The constants are the published ones; the function is a full-avalanche
// bijection on uint64, which makes worker assignment reproducible across
// platforms and runs.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seeded id hash used by every hash-based partitioning strategy.
inline std::uint64_t hash_id(std::uint64_t seed, std::uint64_t id) {
  return mix64(seed ^ mix64(id));
}

/// Cantor pairing (a+b)(a+b+1)/2 + b. Maps a 2-D input to a 1-D hash input.
/// Wraps around on overflow, which is harmless for hashing.
inline std::uint64_t cantor_pair(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s * (s + 1) / 2 + b;
}

}  // namespace gpsel

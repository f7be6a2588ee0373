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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gpsel/graph.hpp"

namespace gpsel::feat {

/// Moments of a per-vertex degree sequence. Skewness is Fisher-Pearson g1,
/// kurtosis is the non-excess m4/m2^2; both split into absolute value and a
/// sign bit (1 for >= 0). A zero-variance sequence reports 0 with sign 0.
struct DegreeMoments {
  double mean = 0.0;
  double stddev = 0.0;
  double skew_abs = 0.0;
  int skew_sign = 0;
  double kurt_abs = 0.0;
  int kurt_sign = 0;
};

struct DataFeatureVector {
  std::uint64_t num_vertex = 0;
  std::uint64_t num_edge = 0;
  DegreeMoments in;
  DegreeMoments out;
  bool directed = false;
};

DataFeatureVector extract_data_features(const Graph& g);

// Algorithm feature inventory, in fixed order. These are the operation
// counts the code analyzer produces.
inline constexpr int kAlgorithmFeatureCount = 21;
const std::array<std::string, kAlgorithmFeatureCount>& algorithm_feature_names();
int algorithm_feature_index(const std::string& name);  // -1 when unknown

struct AlgorithmFeatureVector {
  std::array<double, kAlgorithmFeatureCount> values{};

  double& operator[](int i) { return values[i]; }
  double operator[](int i) const { return values[i]; }
  double get(const std::string& name) const;

  friend AlgorithmFeatureVector operator+(const AlgorithmFeatureVector& a,
                                          const AlgorithmFeatureVector& b) {
    AlgorithmFeatureVector r;
    for (int i = 0; i < kAlgorithmFeatureCount; ++i) r.values[i] = a.values[i] + b.values[i];
    return r;
  }
};

// Encoded model input: scaled data features, sign/direction bits, scaled
// algorithm features, then a 12-slot strategy one-hot (psids 0..11). The
// layout is frozen; see docs/encoding.md.
inline constexpr int kNumStrategySlots = 12;
inline constexpr int kEncodedLength = 15 + kAlgorithmFeatureCount + kNumStrategySlots;

const std::vector<std::string>& encoded_feature_names();

/// Raw (unscaled) encoded row; the first 15+21 slots carry raw counts/bits.
std::vector<double> encode_raw(const DataFeatureVector& df,
                               const AlgorithmFeatureVector& af, int psid);

/// Per-dimension log1p + min-max parameters, fitted on the training corpus
/// and persisted inside the model artifact. Sign bits, the direction bit and
/// the one-hot block pass through unscaled.
struct ScalerParams {
  std::vector<double> lo;           // post-log1p minimum per dimension
  std::vector<double> hi;           // post-log1p maximum per dimension
  std::vector<std::uint8_t> scaled; // 1 where the dimension is transformed

  bool fitted() const { return !lo.empty(); }
};

ScalerParams fit_scaler(const std::vector<std::vector<double>>& raw_rows);

/// Applies the fitted transform; out-of-range values clip to [0, 1].
std::vector<double> apply_scaler(const ScalerParams& scaler,
                                 const std::vector<double>& raw);

struct EncodedInput {
  std::vector<double> x;
};

EncodedInput encode(const DataFeatureVector& df, const AlgorithmFeatureVector& af,
                    int psid, const ScalerParams& scaler);

/// Index of the 1 in the one-hot block, or -1 when malformed.
int decode_psid(const EncodedInput& input);

}  // namespace gpsel::feat

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

#include "gpsel/features.hpp"

#include <algorithm>
#include <cmath>

namespace gpsel::feat {

namespace {

DegreeMoments moments_of(const std::vector<double>& xs) {
  DegreeMoments m;
  const double n = double(xs.size());
  if (xs.empty()) return m;
  double sum = 0.0;
  for (double x : xs) sum += x;
  m.mean = sum / n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : xs) {
    const double d = x - m.mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  m.stddev = std::sqrt(m2);
  if (m2 <= 0.0) {
    // Degenerate (regular) distribution: report 0 with sign 0.
    return m;
  }
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2);
  m.skew_abs = std::fabs(skew);
  m.skew_sign = skew >= 0.0 ? 1 : 0;
  m.kurt_abs = std::fabs(kurt);
  m.kurt_sign = kurt >= 0.0 ? 1 : 0;
  return m;
}

}  // namespace

DataFeatureVector extract_data_features(const Graph& g) {
  if (g.num_vertices() == 0) throw data_error("cannot featurize an empty graph");
  DataFeatureVector df;
  df.num_vertex = g.num_vertices();
  df.num_edge = g.num_edges();
  df.directed = g.directed();
  std::vector<double> in_deg(g.num_vertices()), out_deg(g.num_vertices());
  for (std::uint32_t vi = 0; vi < g.num_vertices(); ++vi) {
    in_deg[vi] = double(g.degree_by_index(vi, DegreeMode::in));
    out_deg[vi] = double(g.degree_by_index(vi, DegreeMode::out));
  }
  df.in = moments_of(in_deg);
  df.out = moments_of(out_deg);
  return df;
}

const std::array<std::string, kAlgorithmFeatureCount>& algorithm_feature_names() {
  static const std::array<std::string, kAlgorithmFeatureCount> names = {
      "num_vertex",         "num_edge",          "num_in_degree",
      "num_out_degree",     "num_both_degree",   "all_vertex_list",
      "all_edge_list",      "get_in_vertex_to",  "get_out_vertex_from",
      "get_both_vertex_of", "vertex_value_read", "vertex_value_write",
      "edge_value_read",    "edge_value_write",  "add",
      "subtract",           "multiply",          "divide",
      "others_value_read",  "others_value_write", "apply"};
  return names;
}

int algorithm_feature_index(const std::string& name) {
  const auto& names = algorithm_feature_names();
  for (int i = 0; i < kAlgorithmFeatureCount; ++i) {
    if (names[i] == name) return i;
  }
  return -1;
}

double AlgorithmFeatureVector::get(const std::string& name) const {
  const int i = algorithm_feature_index(name);
  if (i < 0) throw not_found_error("unknown algorithm feature: " + name);
  return values[i];
}

const std::vector<std::string>& encoded_feature_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n = {
        "df_num_vertex",    "df_num_edge",      "df_in_mean",
        "df_in_std",        "df_in_skew_abs",   "df_in_kurt_abs",
        "df_out_mean",      "df_out_std",       "df_out_skew_abs",
        "df_out_kurt_abs",  "df_in_skew_sign",  "df_in_kurt_sign",
        "df_out_skew_sign", "df_out_kurt_sign", "df_directed"};
    for (const std::string& a : algorithm_feature_names()) n.push_back("af_" + a);
    for (int p = 0; p < kNumStrategySlots; ++p) n.push_back("psid_" + std::to_string(p));
    return n;
  }();
  return names;
}

std::vector<double> encode_raw(const DataFeatureVector& df,
                               const AlgorithmFeatureVector& af, int psid) {
  if (psid < 0 || psid >= kNumStrategySlots) {
    throw config_error("psid outside 0..11: " + std::to_string(psid));
  }
  std::vector<double> x;
  x.reserve(kEncodedLength);
  x.push_back(double(df.num_vertex));
  x.push_back(double(df.num_edge));
  x.push_back(df.in.mean);
  x.push_back(df.in.stddev);
  x.push_back(df.in.skew_abs);
  x.push_back(df.in.kurt_abs);
  x.push_back(df.out.mean);
  x.push_back(df.out.stddev);
  x.push_back(df.out.skew_abs);
  x.push_back(df.out.kurt_abs);
  x.push_back(double(df.in.skew_sign));
  x.push_back(double(df.in.kurt_sign));
  x.push_back(double(df.out.skew_sign));
  x.push_back(double(df.out.kurt_sign));
  x.push_back(df.directed ? 1.0 : 0.0);
  for (int i = 0; i < kAlgorithmFeatureCount; ++i) x.push_back(af[i]);
  for (int p = 0; p < kNumStrategySlots; ++p) x.push_back(p == psid ? 1.0 : 0.0);
  return x;
}

namespace {

std::vector<std::uint8_t> scaled_mask() {
  std::vector<std::uint8_t> mask(kEncodedLength, 0);
  for (int i = 0; i < 10; ++i) mask[i] = 1;                       // df numeric block
  for (int i = 15; i < 15 + kAlgorithmFeatureCount; ++i) mask[i] = 1;  // af block
  return mask;
}

}  // namespace

ScalerParams fit_scaler(const std::vector<std::vector<double>>& raw_rows) {
  if (raw_rows.empty()) throw data_error("cannot fit a scaler on an empty corpus");
  ScalerParams p;
  p.scaled = scaled_mask();
  p.lo.assign(kEncodedLength, 0.0);
  p.hi.assign(kEncodedLength, 0.0);
  for (int d = 0; d < kEncodedLength; ++d) {
    if (!p.scaled[d]) continue;
    double lo = std::log1p(raw_rows[0][d]);
    double hi = lo;
    for (const auto& row : raw_rows) {
      const double v = std::log1p(row[d]);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    p.lo[d] = lo;
    p.hi[d] = hi;
  }
  return p;
}

std::vector<double> apply_scaler(const ScalerParams& scaler,
                                 const std::vector<double>& raw) {
  if (!scaler.fitted()) throw config_error("scaler has not been fitted");
  if (raw.size() != std::size_t(kEncodedLength)) {
    throw data_error("encoded row has wrong length");
  }
  std::vector<double> out = raw;
  for (int d = 0; d < kEncodedLength; ++d) {
    if (!scaler.scaled[d]) continue;
    const double v = std::log1p(raw[d]);
    const double span = scaler.hi[d] - scaler.lo[d];
    double s = span > 0.0 ? (v - scaler.lo[d]) / span : 0.0;
    out[d] = std::clamp(s, 0.0, 1.0);
  }
  return out;
}

EncodedInput encode(const DataFeatureVector& df, const AlgorithmFeatureVector& af,
                    int psid, const ScalerParams& scaler) {
  return {apply_scaler(scaler, encode_raw(df, af, psid))};
}

int decode_psid(const EncodedInput& input) {
  if (input.x.size() != std::size_t(kEncodedLength)) return -1;
  int found = -1;
  for (int p = 0; p < kNumStrategySlots; ++p) {
    if (input.x[15 + kAlgorithmFeatureCount + p] == 1.0) {
      if (found >= 0) return -1;
      found = p;
    }
  }
  return found;
}

}  // namespace gpsel::feat

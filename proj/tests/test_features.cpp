#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gpsel/features.hpp"
#include "gpsel/gen.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace gpsel;

TEST_CASE("regular graphs have degenerate moments") {
  // An undirected cycle is 2-regular.
  std::vector<Edge> edges;
  for (VertexId v = 0; v < 12; ++v) edges.push_back({v, (v + 1) % 12});
  Graph g = helpers::from_edges(std::move(edges), false, "ring");
  feat::DataFeatureVector df = feat::extract_data_features(g);
  CHECK(df.in.mean == 2.0);
  CHECK(df.in.stddev == 0.0);
  CHECK(df.in.skew_abs == 0.0);
  CHECK(df.in.skew_sign == 0);
  CHECK(df.in.kurt_abs == 0.0);
  CHECK(df.in.kurt_sign == 0);
}

TEST_CASE("cardinalities and direction flags") {
  Graph fb = gen::build_dataset("facebook");
  feat::DataFeatureVector df = feat::extract_data_features(fb);
  CHECK(df.num_vertex == 4039);
  CHECK(df.num_edge == 88234);
  CHECK_FALSE(df.directed);
  // Undirected graphs report identical in/out distributions.
  CHECK(df.in.mean == df.out.mean);
  CHECK(df.in.stddev == df.out.stddev);
  // mean * |V| equals the total degree of the orientation.
  CHECK(df.in.mean * double(df.num_vertex) == doctest::Approx(2.0 * 88234));
}

TEST_CASE("moments match the two-pass oracle") {
  Graph g = helpers::random_power_law(200, 1400, true, 5);
  feat::DataFeatureVector df = feat::extract_data_features(g);
  std::vector<double> in_deg, out_deg;
  for (VertexId v : g.vertices()) {
    in_deg.push_back(double(oracle::degree_scan(g, v, DegreeMode::in)));
    out_deg.push_back(double(oracle::degree_scan(g, v, DegreeMode::out)));
  }
  const oracle::Moments mi = oracle::moments(in_deg);
  const oracle::Moments mo = oracle::moments(out_deg);
  CHECK(df.in.mean == doctest::Approx(mi.mean).epsilon(1e-12));
  CHECK(df.in.stddev == doctest::Approx(mi.stddev).epsilon(1e-12));
  CHECK(df.in.skew_abs == doctest::Approx(std::fabs(mi.skew)).epsilon(1e-9));
  CHECK(df.in.kurt_abs == doctest::Approx(std::fabs(mi.kurt)).epsilon(1e-9));
  CHECK(df.out.mean == doctest::Approx(mo.mean).epsilon(1e-12));
  CHECK(df.out.skew_sign == (mo.skew >= 0 ? 1 : 0));
}

TEST_CASE("data features ignore edge-list permutation") {
  helpers::TempDir tmp("feat");
  helpers::write_file(tmp.path("a.txt"), "2 3\n0 1\n1 2\n3 0\n");
  helpers::write_file(tmp.path("b.txt"), "0 1\n1 2\n2 3\n3 0\n");
  auto da = feat::extract_data_features(load_edge_list(tmp.path("a.txt"), true));
  auto db = feat::extract_data_features(load_edge_list(tmp.path("b.txt"), true));
  CHECK(da.in.mean == db.in.mean);
  CHECK(da.in.stddev == db.in.stddev);
  CHECK(da.out.kurt_abs == db.out.kurt_abs);
}

namespace {

std::vector<std::vector<double>> toy_rows(const feat::DataFeatureVector& df,
                                          const feat::AlgorithmFeatureVector& af) {
  std::vector<std::vector<double>> rows;
  for (int psid = 0; psid < 4; ++psid) {
    feat::AlgorithmFeatureVector scaled = af;
    for (int i = 0; i < feat::kAlgorithmFeatureCount; ++i) {
      scaled[i] = af[i] * double(psid + 1);
    }
    rows.push_back(feat::encode_raw(df, scaled, psid));
  }
  return rows;
}

}  // namespace

TEST_CASE("encoding layout and one-hot") {
  Graph g = helpers::random_graph(30, 100, true, 9);
  feat::DataFeatureVector df = feat::extract_data_features(g);
  feat::AlgorithmFeatureVector af;
  for (int i = 0; i < feat::kAlgorithmFeatureCount; ++i) af[i] = double(i * 3 + 1);

  const auto rows = toy_rows(df, af);
  feat::ScalerParams scaler = feat::fit_scaler(rows);
  feat::EncodedInput x = feat::encode(df, af, 5, scaler);
  CHECK(x.x.size() == std::size_t(feat::kEncodedLength));
  CHECK(feat::encoded_feature_names().size() == std::size_t(feat::kEncodedLength));
  CHECK(feat::decode_psid(x) == 5);
  for (int p = 0; p < feat::kNumStrategySlots; ++p) {
    const double bit = x.x[15 + feat::kAlgorithmFeatureCount + p];
    CHECK(bit == (p == 5 ? 1.0 : 0.0));
  }
  CHECK_THROWS_AS(feat::encode(df, af, 12, scaler), config_error);
  CHECK_THROWS_AS(feat::encode(df, af, -1, scaler), config_error);
}

TEST_CASE("scaling hits 1 at the training maximum and clips beyond") {
  Graph g = helpers::random_graph(30, 100, true, 9);
  feat::DataFeatureVector df = feat::extract_data_features(g);
  feat::AlgorithmFeatureVector af;
  for (int i = 0; i < feat::kAlgorithmFeatureCount; ++i) af[i] = 10.0;

  const auto rows = toy_rows(df, af);
  feat::ScalerParams scaler = feat::fit_scaler(rows);

  // The psid-3 row holds the maxima of the af block.
  feat::AlgorithmFeatureVector at_max = af;
  for (int i = 0; i < feat::kAlgorithmFeatureCount; ++i) at_max[i] = af[i] * 4.0;
  feat::EncodedInput top = feat::encode(df, at_max, 3, scaler);
  for (int i = 15; i < 15 + feat::kAlgorithmFeatureCount; ++i) {
    CHECK(top.x[i] == doctest::Approx(1.0));
  }

  feat::AlgorithmFeatureVector beyond = af;
  for (int i = 0; i < feat::kAlgorithmFeatureCount; ++i) beyond[i] = af[i] * 40.0;
  feat::EncodedInput clipped = feat::encode(df, beyond, 3, scaler);
  for (int i = 15; i < 15 + feat::kAlgorithmFeatureCount; ++i) {
    CHECK(clipped.x[i] == 1.0);
  }
}

TEST_CASE("scaling is monotone") {
  Graph g = helpers::random_graph(30, 100, false, 10);
  feat::DataFeatureVector df = feat::extract_data_features(g);
  feat::AlgorithmFeatureVector lo, hi;
  for (int i = 0; i < feat::kAlgorithmFeatureCount; ++i) {
    lo[i] = 2.0;
    hi[i] = 200.0;
  }
  const auto rows = toy_rows(df, hi);
  feat::ScalerParams scaler = feat::fit_scaler(rows);
  feat::EncodedInput xlo = feat::encode(df, lo, 0, scaler);
  feat::EncodedInput xhi = feat::encode(df, hi, 0, scaler);
  for (int i = 15; i < 15 + feat::kAlgorithmFeatureCount; ++i) {
    CHECK(xlo.x[i] <= xhi.x[i]);
  }
}

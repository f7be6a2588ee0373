#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gpsel/augment.hpp"

using namespace gpsel;

namespace {

aug::TaskRecord make_record(const std::string& graph, const std::string& algo,
                            int psid, double et) {
  aug::TaskRecord r;
  r.graph = graph;
  r.algorithm = algo;
  r.psid = psid;
  r.exec_time = et;
  r.message_count = std::uint64_t(et * 10);
  r.superstep_count = 3;
  r.df.num_vertex = 100;
  r.df.num_edge = 300;
  for (int i = 0; i < feat::kAlgorithmFeatureCount; ++i) {
    r.af[i] = et + double(i);
  }
  return r;
}

std::vector<aug::TaskRecord> tiny_corpus(const std::vector<std::string>& graphs,
                                         const std::vector<std::string>& algos,
                                         const std::vector<int>& psids) {
  std::vector<aug::TaskRecord> logs;
  double t = 1.0;
  for (const auto& g : graphs) {
    for (const auto& a : algos) {
      for (int p : psids) {
        logs.push_back(make_record(g, a, p, t));
        t += 1.0;
      }
    }
  }
  return logs;
}

}  // namespace

TEST_CASE("combinations with replacement") {
  CHECK(aug::crw_count(6, 2) == 21);
  CHECK(aug::crw_total(6, 2, 9) == 4998);
  for (int r = 1; r <= 12; ++r) CHECK(aug::crw_count(1, r) == 1);
  CHECK_THROWS_AS(aug::crw_count(0, 2), config_error);
  CHECK_THROWS_AS(aug::crw_count(100000, 12), data_error);  // overflows
}

TEST_CASE("pairs of two algorithms yield the three multisets") {
  auto logs = tiny_corpus({"g"}, {"A", "B"}, {0});
  auto synth = aug::augment(logs, {{"A", "B"}, 2, 2});
  REQUIRE(synth.size() == 3);
  CHECK(synth[0].algorithm == "A+A");
  CHECK(synth[1].algorithm == "A+B");
  CHECK(synth[2].algorithm == "B+B");
}

TEST_CASE("a doubled algorithm doubles features and time") {
  auto logs = tiny_corpus({"g"}, {"PR", "TC"}, {0});
  auto synth = aug::augment(logs, {{"PR", "TC"}, 2, 2});
  const aug::TaskRecord* pr = nullptr;
  const aug::TaskRecord* doubled = nullptr;
  for (const auto& r : logs) {
    if (r.algorithm == "PR") pr = &r;
  }
  for (const auto& r : synth) {
    if (r.algorithm == "PR+PR") doubled = &r;
  }
  REQUIRE(pr);
  REQUIRE(doubled);
  CHECK(doubled->exec_time == 2.0 * pr->exec_time);
  CHECK(doubled->message_count == 2 * pr->message_count);
  for (int i = 0; i < feat::kAlgorithmFeatureCount; ++i) {
    CHECK(doubled->af[i] == 2.0 * pr->af[i]);
  }
  CHECK(doubled->df.num_vertex == pr->df.num_vertex);
}

TEST_CASE("sums are exact and data features come from the graph") {
  auto logs = tiny_corpus({"g1", "g2"}, {"A", "B", "C"}, {0, 4});
  aug::AugmentSpec spec{{"A", "B", "C"}, 2, 4};
  auto synth = aug::augment(logs, spec);

  std::map<std::tuple<std::string, std::string, int>, const aug::TaskRecord*> real;
  for (const auto& r : logs) real[{r.graph, r.algorithm, r.psid}] = &r;

  for (const auto& s : synth) {
    double expect_et = 0.0;
    feat::AlgorithmFeatureVector expect_af;
    std::string part;
    std::vector<std::string> names;
    for (char c : s.algorithm + "+") {
      if (c == '+') {
        names.push_back(part);
        part.clear();
      } else {
        part += c;
      }
    }
    for (const std::string& n : names) {
      const aug::TaskRecord* r = real.at({s.graph, n, s.psid});
      expect_et += r->exec_time;
      expect_af = expect_af + r->af;
    }
    CHECK(s.exec_time == expect_et);
    for (int i = 0; i < feat::kAlgorithmFeatureCount; ++i) {
      CHECK(s.af[i] == expect_af[i]);
    }
    CHECK(s.df.num_vertex == real.at({s.graph, names[0], s.psid})->df.num_vertex);
    // No synthetic record repeats a real single-algorithm record.
    CHECK(s.algorithm.find('+') != std::string::npos);
  }
}

TEST_CASE("output size matches the closed form and order is canonical") {
  auto logs = tiny_corpus({"g1", "g2", "g3"}, {"A", "B"}, {0, 1, 2});
  aug::AugmentSpec spec{{"A", "B"}, 2, 3};
  auto synth = aug::augment(logs, spec);
  CHECK(synth.size() == aug::augment_count(logs, spec));
  CHECK(synth.size() == aug::crw_total(2, 2, 3) * 3 * 3);

  auto key = [](const aug::TaskRecord& r) {
    return std::make_tuple(r.graph, r.algorithm.size(), r.algorithm, r.psid);
  };
  for (std::size_t i = 1; i < synth.size(); ++i) {
    CHECK(key(synth[i - 1]) < key(synth[i]));
  }

  auto again = aug::augment(logs, spec);
  REQUIRE(again.size() == synth.size());
  for (std::size_t i = 0; i < synth.size(); ++i) {
    CHECK(again[i].algorithm == synth[i].algorithm);
    CHECK(again[i].exec_time == synth[i].exec_time);
  }
}

TEST_CASE("gaps in the corpus are reported") {
  auto logs = tiny_corpus({"g1"}, {"A", "B"}, {0, 1});
  logs.pop_back();  // drop (g1, B, 1)
  CHECK_THROWS_WITH_AS(aug::augment(logs, {{"A", "B"}, 2, 2}),
                       doctest::Contains("(g1, B, psid 1)"), data_error);
}

TEST_CASE("streaming matches materialization") {
  auto logs = tiny_corpus({"g1", "g2"}, {"A", "B", "C"}, {0});
  aug::AugmentSpec spec{{"A", "B", "C"}, 2, 5};
  std::size_t streamed = 0;
  double checksum = 0.0;
  aug::augment_stream(logs, spec, [&](const aug::TaskRecord& r) {
    ++streamed;
    checksum += r.exec_time;
  });
  auto all = aug::augment(logs, spec);
  CHECK(streamed == all.size());
  double expect = 0.0;
  for (const auto& r : all) expect += r.exec_time;
  CHECK(checksum == expect);
}

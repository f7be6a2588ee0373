#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gpsel/algorithms.hpp"
#include "gpsel/gen.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace gpsel;

namespace {

PartitionPlan solo(const Graph& g) { return gas::single_worker_plan(g); }

}  // namespace

TEST_CASE("degree programs match the graph queries") {
  Graph g = helpers::from_edges({{0, 1}}, true);
  auto aid = algo::run_degree(g, solo(g), DegreeMode::in);
  auto aod = algo::run_degree(g, solo(g), DegreeMode::out);
  CHECK(aid[1] == 1);
  CHECK(aid[0] == 0);
  CHECK(aod[0] == 1);
  CHECK(aod[1] == 0);

  Graph r = helpers::random_graph(60, 240, true, 5);
  auto out = algo::run_degree(r, solo(r), DegreeMode::out);
  for (const auto& [v, d] : out) {
    CHECK(std::size_t(d) == oracle::degree_scan(r, v, DegreeMode::out));
  }
}

TEST_CASE("undirected degree sums to twice the stored edge count") {
  Graph fb = gen::build_dataset("facebook");
  auto deg = algo::run_degree(fb, solo(fb), DegreeMode::both);
  std::uint64_t total = 0;
  for (const auto& [v, d] : deg) total += std::uint64_t(d);
  CHECK(total == 2 * 88234);
}

TEST_CASE("pagerank fixed points") {
  // No in-edges: the damped constant term alone.
  Graph g = helpers::from_edges({{0, 1}}, true);
  auto pr = algo::run_pagerank(g, solo(g), 10, 0.85);
  CHECK(pr[0] == doctest::Approx(0.15).epsilon(1e-12));

  // Two-cycle: both scores climb toward 1 under the undamped-norm form.
  Graph cycle = helpers::from_edges({{0, 1}, {1, 0}}, true);
  auto pr_few = algo::run_pagerank(cycle, solo(cycle), 5);
  auto pr_many = algo::run_pagerank(cycle, solo(cycle), 60);
  CHECK(pr_many[0] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(pr_many[1] == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(pr_few[0] < pr_many[0]);

  Graph r = helpers::random_graph(10, 35, true, 7);
  auto mine = algo::run_pagerank(r, solo(r), 10, 0.85);
  auto expected = oracle::pagerank(r, 10, 0.85);
  for (const auto& [v, score] : mine) {
    CHECK(score == doctest::Approx(expected.at(v)).epsilon(1e-9));
  }
}

TEST_CASE("greedy coloring equals the ascending sequential scan") {
  Graph tri = helpers::triangle();
  auto colors = algo::run_greedy_coloring(tri, solo(tri));
  CHECK(colors[0] == 0);
  CHECK(colors[1] == 1);
  CHECK(colors[2] == 2);

  Graph star = helpers::star(6, false);
  auto sc = algo::run_greedy_coloring(star, solo(star));
  CHECK(sc[0] == 0);
  for (VertexId leaf = 1; leaf <= 6; ++leaf) CHECK(sc[leaf] == 1);

  Graph r = helpers::random_power_law(70, 350, false, 9);
  auto mine = algo::run_greedy_coloring(r, solo(r));
  auto expected = oracle::greedy_coloring(r);
  for (const auto& [v, c] : mine) CHECK(c == expected.at(v));
  // Proper coloring: no edge joins equal colors.
  for (const Edge& e : r.edges()) {
    if (e.src != e.dst) CHECK(mine[e.src] != mine[e.dst]);
  }
}

TEST_CASE("common neighbor pairs") {
  Graph path = helpers::from_edges({{0, 1}, {1, 2}}, false);
  auto counts = algo::run_apcn(path, solo(path));
  CHECK(counts.size() == 1);
  CHECK(counts[{0, 2}] == 1);

  Graph k3 = helpers::triangle();
  auto k3c = algo::run_apcn(k3, solo(k3));
  CHECK(k3c[{0, 1}] == 1);
  CHECK(k3c[{0, 2}] == 1);
  CHECK(k3c[{1, 2}] == 1);

  Graph r = helpers::random_graph(30, 120, false, 11);
  CHECK(algo::run_apcn(r, solo(r)) == oracle::apcn(r));
}

TEST_CASE("triangle counting") {
  Graph k3 = helpers::triangle();
  CHECK(algo::run_triangle_count(k3, solo(k3)) == 1);
  Graph k4 = helpers::k4();
  CHECK(algo::run_triangle_count(k4, solo(k4)) == 4);

  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Graph r = helpers::random_graph(25, 90, seed % 2 == 0, seed);
    CHECK(algo::run_triangle_count(r, solo(r)) == oracle::triangle_count(r));
  }
}

TEST_CASE("clustering coefficients") {
  Graph k3 = helpers::triangle();
  auto cc = algo::run_clustering_coeff(k3, solo(k3));
  for (const auto& [v, c] : cc) CHECK(c == doctest::Approx(0.5));

  Graph star = helpers::star(5, false);
  auto sc = algo::run_clustering_coeff(star, solo(star));
  CHECK(sc[0] == 0.0);

  Graph path = helpers::from_edges({{0, 1}, {1, 2}}, false);
  CHECK(algo::run_clustering_coeff(path, solo(path))[1] == 0.0);

  Graph r = helpers::random_graph(30, 110, false, 13);
  auto mine = algo::run_clustering_coeff(r, solo(r));
  auto expected = oracle::clustering_coeff(r);
  for (const auto& [v, c] : mine) {
    CHECK(c == doctest::Approx(expected.at(v)).epsilon(1e-12));
  }
}

TEST_CASE("random walks") {
  // A sink never moves: the walk is just the source.
  Graph g = helpers::from_edges({{0, 1}}, true);
  auto walks = algo::run_random_walk(g, solo(g), 10, 42);
  CHECK(walks[1] == std::vector<VertexId>{1});
  CHECK(walks[0] == std::vector<VertexId>{0, 1});

  // A single out-edge chain walks its prefix exactly.
  std::vector<Edge> chain;
  for (VertexId v = 0; v < 10; ++v) chain.push_back({v, v + 1});
  Graph line = helpers::from_edges(std::move(chain), true, "line");
  auto lw = algo::run_random_walk(line, solo(line), 10, 7);
  std::vector<VertexId> full;
  for (VertexId v = 0; v <= 10; ++v) full.push_back(v);
  CHECK(lw[0] == full);

  // Same seed, same samples.
  Graph r = helpers::random_power_law(40, 200, true, 15);
  auto w1 = algo::run_random_walk(r, solo(r), 10, 99);
  auto w2 = algo::run_random_walk(r, solo(r), 10, 99);
  CHECK(w1 == w2);
  CHECK(w1 == oracle::random_walks(r, 10, 99));
}

TEST_CASE("every walk is a real path of bounded length") {
  for (bool directed : {true, false}) {
    Graph g = helpers::random_power_law(50, 220, directed, 33);
    auto walks = algo::run_random_walk(g, solo(g), 10, 9);
    CHECK(walks.size() == g.num_vertices());
    for (const auto& [source, path] : walks) {
      REQUIRE_FALSE(path.empty());
      CHECK(path.front() == source);
      CHECK(path.size() <= 11);  // at most `steps` hops past the source
      for (std::size_t i = 1; i < path.size(); ++i) {
        auto nbrs = g.out_neighbors(path[i - 1]);
        CHECK(std::find(nbrs.begin(), nbrs.end(), path[i]) != nbrs.end());
      }
      // Truncation only happens at sinks.
      if (path.size() < 11) {
        CHECK(g.incident_edges(g.index_of(path.back()), DegreeMode::out).empty());
      }
    }
  }
}

TEST_CASE("walks are identical under any partitioning") {
  Graph r = helpers::random_power_law(60, 300, true, 21);
  auto reference = algo::run_random_walk(r, gas::single_worker_plan(r), 10, 5);
  for (int psid : {0, 4, 7, 11}) {
    PartitionPlan plan = partition(r, strategy_from_psid(psid), 4);
    CHECK(algo::run_random_walk(r, plan, 10, 5) == reference);
  }
}

TEST_CASE("self-loops and parallel edges flow through consistently") {
  // Directed self-loop: it is its own in-neighbor.
  Graph loop = helpers::from_edges({{0, 0}, {0, 1}, {1, 0}, {2, 0}}, true, "loop");
  CHECK(loop.degree(0, DegreeMode::in) == 3);
  CHECK(loop.degree(0, DegreeMode::out) == 2);
  CHECK(loop.degree(0, DegreeMode::both) == 4);
  auto pr = algo::run_pagerank(loop, solo(loop), 8, 0.85);
  auto expected = oracle::pagerank(loop, 8, 0.85);
  for (const auto& [v, score] : pr) {
    CHECK(score == doctest::Approx(expected.at(v)).epsilon(1e-9));
  }

  // A parallel duplicate doubles the contribution on both routes.
  Graph dup = helpers::from_edges({{0, 1}, {0, 1}, {1, 2}, {2, 0}}, true, "dup");
  auto dup_pr = algo::run_pagerank(dup, solo(dup), 8, 0.85);
  auto dup_expected = oracle::pagerank(dup, 8, 0.85);
  for (const auto& [v, score] : dup_pr) {
    CHECK(score == doctest::Approx(dup_expected.at(v)).epsilon(1e-9));
  }
  // Triangle counting treats the duplicated pair as one adjacency.
  CHECK(algo::run_triangle_count(dup, solo(dup)) == 1);

  // Distributed runs keep agreeing in the presence of both.
  PartitionPlan plan = partition(dup, strategy_from_psid(7), 3);
  auto dist = algo::run_pagerank(dup, plan, 8, 0.85);
  for (const auto& [v, score] : dist) {
    CHECK(score == doctest::Approx(dup_pr.at(v)).epsilon(1e-9));
  }
}

TEST_CASE("registry covers the eight algorithms and their pseudo-code") {
  CHECK(algo::algorithm_registry().size() == 8);
  for (const auto& entry : algo::algorithm_registry()) {
    CHECK_FALSE(entry.pseudocode.empty());
  }
  CHECK_THROWS_AS(algo::algorithm_by_name("nope"), not_found_error);
}

TEST_CASE("every algorithm is invariant across strategies on a small graph") {
  Graph g = helpers::random_power_law(80, 420, false, 27);
  for (const auto& entry : algo::algorithm_registry()) {
    auto [reference, reflog] =
        algo::run_algorithm(entry.name, g, gas::single_worker_plan(g));
    for (int psid : {1, 4, 10}) {
      PartitionPlan plan = partition(g, strategy_from_psid(psid), 4);
      auto [result, log] = algo::run_algorithm(entry.name, g, plan);
      if (entry.name == "PR" || entry.name == "CC") {
        REQUIRE(result.vertex_reals.size() == reference.vertex_reals.size());
        for (const auto& [v, x] : result.vertex_reals) {
          CHECK(x == doctest::Approx(reference.vertex_reals.at(v)).epsilon(1e-9));
        }
      } else {
        CHECK(result == reference);
      }
    }
  }
}

#include <benchmark/benchmark.h>

#include "gpsel/algorithms.hpp"
#include "gpsel/gen.hpp"

using namespace gpsel;

namespace {

const Graph& bench_graph() {
  static const Graph g = gen::power_law(1000, 8000, true, 7, "bench");
  return g;
}

void BM_PageRank(benchmark::State& state) {
  const Graph& g = bench_graph();
  const PartitionPlan plan =
      partition(g, strategy_from_psid(int(state.range(0))), 16);
  for (auto _ : state) {
    auto scores = algo::run_pagerank(g, plan, 10, 0.85);
    benchmark::DoNotOptimize(scores.size());
  }
  state.SetItemsProcessed(state.iterations() * g.num_edges() * 10);
}
BENCHMARK(BM_PageRank)->Arg(0)->Arg(4)->Arg(10);

void BM_TriangleCount(benchmark::State& state) {
  const Graph& g = bench_graph();
  const PartitionPlan plan = partition(g, strategy_from_psid(4), 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(algo::run_triangle_count(g, plan));
  }
}
BENCHMARK(BM_TriangleCount);

void BM_RandomWalk(benchmark::State& state) {
  const Graph& g = bench_graph();
  const PartitionPlan plan = partition(g, strategy_from_psid(7), 16);
  for (auto _ : state) {
    auto walks = algo::run_random_walk(g, plan, 10, 3);
    benchmark::DoNotOptimize(walks.size());
  }
}
BENCHMARK(BM_RandomWalk);

}  // namespace

BENCHMARK_MAIN();

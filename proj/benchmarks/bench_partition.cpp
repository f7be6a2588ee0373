#include <benchmark/benchmark.h>

#include "gpsel/gen.hpp"
#include "gpsel/partition.hpp"

using namespace gpsel;

namespace {

const Graph& bench_graph() {
  static const Graph g = gen::power_law(2000, 16000, false, 5, "bench");
  return g;
}

void BM_PartitionStrategy(benchmark::State& state) {
  const Graph& g = bench_graph();
  const StrategySpec spec = strategy_from_psid(int(state.range(0)));
  PartitionOptions opts;
  opts.include_oblivious = true;
  for (auto _ : state) {
    PartitionPlan plan = partition(g, spec, 16, opts);
    benchmark::DoNotOptimize(plan.edge_assignment.data());
  }
  state.SetItemsProcessed(state.iterations() * g.num_edges());
}
BENCHMARK(BM_PartitionStrategy)
    ->Arg(0)   // 1DSrc
    ->Arg(3)   // Cano
    ->Arg(4)   // 2D
    ->Arg(5)   // Hybrid
    ->Arg(7)   // HDRF
    ->Arg(11); // Ginger

void BM_ReplicationFactor(benchmark::State& state) {
  const Graph& g = bench_graph();
  const PartitionPlan plan = partition(g, strategy_from_psid(4), 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(replication_factor(plan));
  }
}
BENCHMARK(BM_ReplicationFactor);

}  // namespace

BENCHMARK_MAIN();

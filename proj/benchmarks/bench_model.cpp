#include <benchmark/benchmark.h>

#include "gpsel/dsl.hpp"
#include "gpsel/etrm.hpp"
#include "gpsel/gen.hpp"
#include "gpsel/rng.hpp"

using namespace gpsel;

namespace {

const char* kSource = R"(
int iterator_num = 20;
float damping_factor = 0.85;
float temp_value;
for(list v in ALL_VERTEX_LIST){
    v.value = 1.0 / NUM_VERTEX;
}
for(iterator_num){
    for(list v in ALL_VERTEX_LIST){
        temp_value = 0;
        for(list v_in in GET_IN_VERTEX_TO(v)){
            temp_value = temp_value + v_in.value / v_in.NUM_OUT_DEGREE;
        }
        v.value = (1 - damping_factor) / NUM_VERTEX + damping_factor * temp_value;
        Global.apply(v, "float");
    }
}
)";

void BM_ParseAndCount(benchmark::State& state) {
  for (auto _ : state) {
    dsl::OpCountIR ir = dsl::count_ops(dsl::parse(kSource));
    benchmark::DoNotOptimize(ir.counts.size());
  }
}
BENCHMARK(BM_ParseAndCount);

void BM_Evaluate(benchmark::State& state) {
  const dsl::OpCountIR ir = dsl::count_ops(dsl::parse(kSource));
  const feat::DataFeatureVector df =
      feat::extract_data_features(gen::power_law(1000, 8000, true, 9, "bench"));
  for (auto _ : state) {
    auto af = dsl::evaluate(ir, df);
    benchmark::DoNotOptimize(af.values[0]);
  }
}
BENCHMARK(BM_Evaluate);

std::pair<std::vector<std::vector<double>>, std::vector<double>> toy_dataset(
    std::size_t rows, std::size_t cols) {
  const CounterRng rng{11};
  std::vector<std::vector<double>> x(rows, std::vector<double>(cols));
  std::vector<double> y(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t f = 0; f < cols; ++f) x[i][f] = rng.u01(f, i);
    y[i] = 3.0 * x[i][0] - x[i][1] + 0.25 * x[i][2] * x[i][3];
  }
  return {std::move(x), std::move(y)};
}

void BM_TrainRound(benchmark::State& state) {
  auto [x, y] = toy_dataset(std::size_t(state.range(0)), 48);
  etrm::TrainConfig cfg;
  cfg.n_estimators = 1;
  cfg.max_depth = 7;
  for (auto _ : state) {
    etrm::EtrmModel model = etrm::train(x, y, cfg);
    benchmark::DoNotOptimize(model.trees.size());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TrainRound)->Arg(2000)->Arg(10000);

void BM_Predict(benchmark::State& state) {
  auto [x, y] = toy_dataset(4000, 48);
  etrm::TrainConfig cfg;
  cfg.n_estimators = 100;
  cfg.max_depth = 7;
  const etrm::EtrmModel model = etrm::train(x, y, cfg);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(etrm::predict(model, x[i++ % x.size()]));
  }
}
BENCHMARK(BM_Predict);

}  // namespace

BENCHMARK_MAIN();

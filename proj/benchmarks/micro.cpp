#include <benchmark/benchmark.h>

#include "siri/select.hpp"
#include "siri/sim.hpp"
#include "siri/stats.hpp"

namespace {

siri::Dataset scenario_data(int n, int p) {
  siri::ScenarioSpec spec = siri::scenario("2.3");
  spec.n = n;
  spec.p = p;
  spec.seed = 11;
  return siri::generate(spec);
}

void BM_DStarScan(benchmark::State& state) {
  const siri::Dataset data = scenario_data(200, static_cast<int>(state.range(0)));
  const siri::SlicingScheme scheme = siri::make_scheme(data, siri::HyperParams{});
  const std::vector<int> selected{0, 1};
  const siri::StatContext ctx(data, scheme, selected);
  for (auto _ : state) {
    double total = 0.0;
    for (int j = 2; j < data.p(); ++j) total += siri::d_star(ctx, j).scaled;
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * (data.p() - 2));
}
BENCHMARK(BM_DStarScan)->Arg(200)->Arg(1000);

void BM_SisStar(benchmark::State& state) {
  const siri::Dataset data = scenario_data(200, static_cast<int>(state.range(0)));
  const siri::SlicingScheme scheme = siri::make_scheme(data, siri::HyperParams{});
  for (auto _ : state) benchmark::DoNotOptimize(siri::sis_star(data, scheme, data.p()));
}
BENCHMARK(BM_SisStar)->Arg(200)->Arg(1000);

void BM_SelectVariables(benchmark::State& state) {
  const siri::Dataset data = scenario_data(200, static_cast<int>(state.range(0)));
  siri::HyperParams hyper;
  hyper.q = 0;
  for (auto _ : state) benchmark::DoNotOptimize(siri::select_variables(data, hyper));
}
BENCHMARK(BM_SelectVariables)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

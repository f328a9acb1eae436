#include <benchmark/benchmark.h>

#include "silvarisk/age_density.hpp"
#include "silvarisk/economics.hpp"
#include "silvarisk/oracle.hpp"
#include "silvarisk/regimes.hpp"
#include "silvarisk/sweep.hpp"

namespace {

using namespace silvarisk;

void BM_Pdf(benchmark::State& state) {
  const AgeDensity density(60.0, 1.0 / 180.0);
  double a = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(density.pdf(a));
    a = a >= 59.0 ? 0.0 : a + 1.0;
  }
}
BENCHMARK(BM_Pdf);

void BM_ExpectedCapitalization(benchmark::State& state) {
  const RotationRegime regime = austria_spruce_rotation();
  const AgeDensity density(60.0, 1.0 / 180.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        expected_over_age(density, [&](double a) { return capitalization_at_age(regime, a); }));
  }
}
BENCHMARK(BM_ExpectedCapitalization);

void BM_RfSummary(benchmark::State& state) {
  const RotationRegime regime = austria_spruce_rotation();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rf_summary(regime, {.disturbance_rate = 1.0 / 180.0}));
  }
}
BENCHMARK(BM_RfSummary);

void BM_DefaultSweep(benchmark::State& state) {
  const RotationRegime rf = austria_spruce_rotation();
  const CcfRegime ccf = austria_spruce_ccf();
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(rf, ccf, 2.0, 0.0, 1.0 / 180.0, 51));
  }
}
BENCHMARK(BM_DefaultSweep)->Unit(benchmark::kMillisecond);

void BM_SimulateRf(benchmark::State& state) {
  const RotationRegime regime = austria_spruce_rotation();
  const OracleConfig config{.replicates = static_cast<std::size_t>(state.range(0)),
                            .horizon = 6000.0,
                            .seed = 42,
                            .burn_in = 0.0,
                            .threads = 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_rf(regime, {.disturbance_rate = 1.0 / 180.0}, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateRf)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

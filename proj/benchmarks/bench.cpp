#include <benchmark/benchmark.h>

#include "statrules/backtest.hpp"
#include "statrules/datagen.hpp"
#include "statrules/indicators.hpp"
#include "statrules/spa.hpp"
#include "statrules/strategy.hpp"

using namespace statrules;

namespace {

const BarSeries& big_series() {
  static const BarSeries s = [] {
    GbmSpec spec;
    spec.days = 250;  // one trading year of 15s bars
    spec.seed = 1;
    return gbm_series(spec);
  }();
  return s;
}

void bm_ma_ratio(benchmark::State& state) {
  const auto& s = big_series();
  for (auto _ : state) {
    auto r = sma_ratio(s, 10, 120);
    benchmark::DoNotOptimize(r.values.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(s.size()));
}
BENCHMARK(bm_ma_ratio);

void bm_kdj(benchmark::State& state) {
  const auto& s = big_series();
  for (auto _ : state) {
    auto r = kdj(s, 19, 3, 3);
    benchmark::DoNotOptimize(r.k.values.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(s.size()));
}
BENCHMARK(bm_kdj);

void bm_sboll(benchmark::State& state) {
  const auto& s = big_series();
  for (auto _ : state) {
    auto r = sboll(s, 120);
    benchmark::DoNotOptimize(r.values.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(s.size()));
}
BENCHMARK(bm_sboll);

void bm_full_backtest(benchmark::State& state) {
  const auto& s = big_series();
  StrategySpec spec{Family::MA, 15, 10, 120, 0, 0.0005};
  for (auto _ : state) {
    auto pos = run_strategy(s, spec);
    auto res = run_backtest(s, pos, {});
    benchmark::DoNotOptimize(res.daily.data());
  }
}
BENCHMARK(bm_full_backtest);

void bm_bootstrap_indices(benchmark::State& state) {
  for (auto _ : state) {
    auto idx = stationary_bootstrap_indices(500, 500, 0.9, 7);
    benchmark::DoNotOptimize(idx.data());
  }
}
BENCHMARK(bm_bootstrap_indices);

void bm_spa_50x500(benchmark::State& state) {
  auto m = planted_matrix(50, 500, 0.0, 0, 3);
  BootstrapPlan plan;
  plan.B = 500;
  plan.Q = 0.9;
  plan.seed = 5;
  for (auto _ : state) {
    auto res = spa_test(m, plan, 0.05);
    benchmark::DoNotOptimize(res.qstar);
  }
}
BENCHMARK(bm_spa_50x500);

}  // namespace

BENCHMARK_MAIN();

#include <doctest.h>

#include <chrono>
#include <cmath>

#include "statrules/strategy.hpp"
#include "test_support.hpp"

using namespace statrules;

namespace {

IndicatorSeries series_of(std::vector<double> values, int warmup = 0) {
  IndicatorSeries s;
  s.values = std::move(values);
  s.warmup_length = warmup;
  return s;
}

}  // namespace

TEST_CASE("grid enumeration: 192 MA + 15 KDJ + 72 Boll = 279") {
  auto t0 = std::chrono::steady_clock::now();
  auto grid = enumerate_grid();
  auto elapsed = std::chrono::steady_clock::now() - t0;
  CHECK(grid.size() == 279);
  CHECK(enumerate_grid(Family::MA).size() == 192);
  CHECK(enumerate_grid(Family::KDJ).size() == 15);
  CHECK(enumerate_grid(Family::BOLL).size() == 72);
  CHECK(std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count() <
        1000);

  // ids are unique
  std::vector<std::string> names;
  for (const auto& s : grid) names.push_back(s.name());
  std::sort(names.begin(), names.end());
  CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
}

TEST_CASE("strategy ids carry family, frequency and parameters") {
  StrategySpec ma{Family::MA, 15, 10, 120, 0, 0.0001};
  CHECK(ma.name() == "MA_15(10,120,0.0001)");
  StrategySpec kd{Family::KDJ, 60, 5, 1, 3, 0.0};
  CHECK(kd.name() == "KDJ_60(5,1,3)");
  StrategySpec bo{Family::BOLL, 30, 120, 0, 0, 0.1};
  CHECK(bo.name() == "Boll_30(120,0.1)");
}

TEST_CASE("constant ratio inside the band produces no positions") {
  auto r = series_of(std::vector<double>(20, 1.0));
  std::vector<std::size_t> day_start{0};
  auto pos = ma_signals(r, day_start, 0.0001);
  for (auto p : pos.positions) CHECK(p == 0);
}

TEST_CASE("MA band rule hand-trace: long open/close then short open") {
  auto r = series_of({1.0, 1.001, 1.0005, 0.998, 0.998});
  std::vector<std::size_t> day_start{0};
  auto pos = ma_signals(r, day_start, 0.0005);
  REQUIRE(pos.size() == 5);
  CHECK(pos.positions[0] == 0);
  CHECK(pos.positions[1] == 1);   // up-cross of 1.0005
  CHECK(pos.positions[2] == 0);   // back inside the band
  CHECK(pos.positions[3] == -1);  // down-cross of 0.9995
  CHECK(pos.positions[4] == 0);   // forced flat at day end
}

TEST_CASE("b = 0 makes an up-cross of 1 a direct reversal") {
  auto r = series_of({1.01, 0.99, 1.01, 1.01, 1.0});
  std::vector<std::size_t> day_start{0};
  auto pos = ma_signals(r, day_start, 0.0);
  CHECK(pos.positions[1] == -1);  // open short on the down-cross
  CHECK(pos.positions[2] == 1);   // close-short then open-long in one bar
}

TEST_CASE("KDJ: equal %K and %D never cross") {
  auto k = series_of(std::vector<double>(10, 55.0));
  std::vector<std::size_t> day_start{0};
  auto pos = kdj_signals(k, k, day_start);
  for (auto p : pos.positions) CHECK(p == 0);
}

TEST_CASE("KDJ band filter blocks opens outside [20,80] but not closes") {
  auto k = series_of({60, 40, 90, 90, 90});
  auto d = series_of({50, 50, 85, 85, 85});
  std::vector<std::size_t> day_start{0};
  auto pos = kdj_signals(k, d, day_start);
  CHECK(pos.positions[1] == -1);  // down-cross at %K = 40, inside the band
  CHECK(pos.positions[2] == 0);   // up-cross at %K = 90: close fires, open blocked
  CHECK(pos.positions[3] == 0);
}

TEST_CASE("KDJ down-cross inside the band reverses a long position") {
  auto k = series_of({30, 50, 35, 35, 35});
  auto d = series_of({40, 40, 40, 40, 40});
  std::vector<std::size_t> day_start{0};
  auto pos = kdj_signals(k, d, day_start);
  CHECK(pos.positions[1] == 1);   // up-cross at %K = 50
  CHECK(pos.positions[2] == -1);  // close long + open short in one bar
}

TEST_CASE("Bollinger band rule traces") {
  std::vector<std::size_t> day_start{0};

  auto inside = series_of({0.0, 0.5, -0.5, 0.3, 0.0});
  for (auto p : boll_signals(inside, day_start, 1.0).positions) CHECK(p == 0);

  auto up = series_of({0.0, 1.2, 0.8, 0.8});
  auto pos = boll_signals(up, day_start, 1.0);
  CHECK(pos.positions[1] == 1);
  CHECK(pos.positions[2] == 0);

  auto down = series_of({0.0, -1.2, -0.8, -0.8});
  auto neg = boll_signals(down, day_start, 1.0);
  CHECK(neg.positions[1] == -1);
  CHECK(neg.positions[2] == 0);
}

TEST_CASE("warmup bars produce no positions") {
  auto r = series_of({std::nan(""), std::nan(""), 1.0, 1.002, 1.002}, 2);
  std::vector<std::size_t> day_start{0};
  auto pos = ma_signals(r, day_start, 0.0005);
  CHECK(pos.positions[0] == 0);
  CHECK(pos.positions[1] == 0);
  CHECK(pos.positions[3] == 1);
}

TEST_CASE("every grid strategy is flat at every day boundary") {
  auto days = std::vector<std::vector<double>>{
      testsup::random_prices(400, 1), testsup::random_prices(400, 2),
      testsup::random_prices(400, 3)};
  auto bars = testsup::make_series(days);
  for (const auto& spec : enumerate_grid()) {
    auto pos = run_strategy(bars, spec);
    REQUIRE(pos.size() == bars.size());
    for (std::size_t d = 0; d < bars.day_count(); ++d) {
      auto [first, last] = bars.day_range(d);
      CHECK(pos.positions[last - 1] == 0);
    }
    for (auto p : pos.positions) CHECK((p == -1 || p == 0 || p == 1));
  }
}

TEST_CASE("identical inputs give bit-identical positions") {
  auto bars = testsup::one_day(testsup::random_prices(600, 12));
  StrategySpec spec{Family::MA, 15, 5, 20, 0, 0.0005};
  auto a = run_strategy(bars, spec);
  auto b = run_strategy(bars, spec);
  CHECK(a.positions == b.positions);
}

TEST_CASE("b = 0 ratio rule equals the MA-difference rule") {
  auto prices = testsup::random_prices(800, 44);
  auto bars = testsup::one_day(prices);
  auto ratio = sma_ratio(bars, 5, 20);
  auto ma_s = ma(bars, 5), ma_l = ma(bars, 20);

  // crossing of R over 1 is exactly crossing of 1 + (MA_s - MA_l) over 1
  IndicatorSeries diff;
  diff.warmup_length = ratio.warmup_length;
  diff.values.resize(ratio.size(), std::nan(""));
  for (std::size_t i = 0; i < ratio.size(); ++i)
    if (ratio.defined(i))
      diff.values[i] = 1.0 + (ma_s.values[i] - ma_l.values[i]);

  std::vector<std::size_t> day_start{0};
  auto via_ratio = ma_signals(ratio, day_start, 0.0);
  auto via_diff = ma_signals(diff, day_start, 0.0);
  CHECK(via_ratio.positions == via_diff.positions);
}

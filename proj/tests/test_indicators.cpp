#include <doctest.h>

#include <cmath>

#include "statrules/adf.hpp"
#include "statrules/datagen.hpp"
#include "statrules/indicators.hpp"
#include "test_support.hpp"

using namespace statrules;

TEST_CASE("MA: constant, direct and n=1 cases") {
  std::vector<double> c(10, 7.5);
  for (double v : ma_kernel(c, 3))
    if (!std::isnan(v)) CHECK(v == doctest::Approx(7.5).epsilon(1e-15));

  auto m = ma_kernel(std::vector<double>{1, 2, 4}, 2);
  REQUIRE(m.size() == 3);
  CHECK(std::isnan(m[0]));
  CHECK(m[1] == doctest::Approx(1.5));
  CHECK(m[2] == doctest::Approx(3.0));

  std::vector<double> p{3, 1, 4, 1, 5};
  auto identity = ma_kernel(p, 1);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(identity[i] == p[i]);
}

TEST_CASE("MA ratio: constant prices give 1, small case matches hand values") {
  auto flat = testsup::one_day(std::vector<double>(50, 42.0));
  auto r = sma_ratio(flat, 2, 5);
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r.defined(i)) CHECK(r.values[i] == doctest::Approx(1.0).epsilon(1e-14));

  auto s = testsup::one_day({1, 2, 4});
  auto r2 = sma_ratio(s, 1, 2);
  CHECK_FALSE(r2.defined(0));
  CHECK(r2.values[1] == doctest::Approx(2.0 / 1.5).epsilon(1e-12));
  CHECK(r2.values[2] == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("MA ratio equals the price-normalized two-route computation") {
  auto prices = testsup::random_prices(500, 17);
  auto s = testsup::one_day(prices);
  auto r = sma_ratio(s, 5, 20);
  auto short_ma = ma(s, 5);
  auto long_ma = ma(s, 20);
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r.defined(i)) continue;
    // route 2: both sides divided by the current price first
    double sma_s = short_ma.values[i] / prices[i];
    double sma_l = long_ma.values[i] / prices[i];
    CHECK(r.values[i] == doctest::Approx(sma_s / sma_l).epsilon(1e-12));
  }
}

TEST_CASE("KDJ: rising prices drive RSV to 100 and constant prices pin 50") {
  std::vector<double> rising(120);
  for (std::size_t i = 0; i < rising.size(); ++i)
    rising[i] = 100.0 + static_cast<double>(i);
  auto kd = kdj(testsup::one_day(rising), 9, 3, 3);
  // P_t is the window high, so RSV = 100 throughout; %K converges upward
  std::size_t last = rising.size() - 1;
  CHECK(kd.k.values[last] > 99.0);
  CHECK(kd.d.values[last] > 98.0);

  auto flat = kdj(testsup::one_day(std::vector<double>(60, 5.0)), 9, 3, 3);
  for (std::size_t i = 0; i < flat.k.size(); ++i) {
    if (!flat.k.defined(i)) continue;
    CHECK(flat.k.values[i] == doctest::Approx(50.0));
    CHECK(flat.d.values[i] == doctest::Approx(50.0));
    CHECK(flat.j.values[i] == doctest::Approx(50.0));
  }
}

TEST_CASE("KDJ: hand-traced rolling window on [1,2,3,2], n=3, m=1") {
  auto res = kdj_kernel(std::vector<double>{1, 2, 3, 2}, 3, 1, 3);
  REQUIRE(res.k.size() == 4);
  CHECK(std::isnan(res.k[0]));
  CHECK(std::isnan(res.k[1]));
  // window {1,2,3}: P=high -> RSV 100; m=1 collapses the recursion to %K=RSV
  CHECK(res.k[2] == doctest::Approx(100.0));
  // window {2,3,2}: (2-2)/(3-2) -> RSV 0
  CHECK(res.k[3] == doctest::Approx(0.0));
}

TEST_CASE("KDJ: %J = 3K - 2D wherever defined") {
  auto prices = testsup::random_prices(800, 23);
  auto kd = kdj(testsup::one_day(prices), 9, 3, 3);
  for (std::size_t i = 0; i < kd.j.size(); ++i) {
    if (!kd.j.defined(i)) continue;
    CHECK(kd.j.values[i] ==
          doctest::Approx(3.0 * kd.k.values[i] - 2.0 * kd.d.values[i])
              .epsilon(1e-12));
  }
}

TEST_CASE("EMA and z-score on the [1,1,4] example") {
  auto e = ema_kernel(std::vector<double>{1, 1, 4}, 2);
  // weights (2,1)/3 on (P_t, P_{t-1}): (2*4 + 1)/3 = 3
  CHECK(e[2] == doctest::Approx(3.0).epsilon(1e-14));

  auto z = sboll_kernel(std::vector<double>{1, 1, 4}, 2);
  // sigma with the (n-1) divisor: sqrt((4-3)^2 + (1-3)^2) = sqrt(5)
  CHECK(z[2] == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("z-score of constant prices is 0 by the vanishing-sigma convention") {
  auto z = sboll_kernel(std::vector<double>(30, 2.5), 5);
  for (std::size_t i = 4; i < z.size(); ++i) CHECK(z[i] == 0.0);
}

TEST_CASE("scale invariance under price scaling P -> cP") {
  auto prices = testsup::random_prices(600, 31);
  std::mt19937_64 g(77);
  for (int rep = 0; rep < 50; ++rep) {
    double c = std::exp(4.0 * (testsup::uniform01(g) - 0.5));
    std::vector<double> scaled(prices.size());
    for (std::size_t i = 0; i < prices.size(); ++i) scaled[i] = c * prices[i];

    auto day = testsup::one_day(prices);
    auto day_c = testsup::one_day(scaled);

    auto r = sma_ratio(day, 5, 20), rc = sma_ratio(day_c, 5, 20);
    auto z = sboll(day, 20), zc = sboll(day_c, 20);
    auto kd = kdj(day, 9, 3, 3), kdc = kdj(day_c, 9, 3, 3);
    for (std::size_t i = 0; i < prices.size(); ++i) {
      if (r.defined(i))
        CHECK(rc.values[i] == doctest::Approx(r.values[i]).epsilon(1e-9));
      if (z.defined(i))
        CHECK(zc.values[i] == doctest::Approx(z.values[i]).epsilon(1e-9));
      if (kd.k.defined(i)) {
        CHECK(kdc.k.values[i] == doctest::Approx(kd.k.values[i]).epsilon(1e-9));
        CHECK(kdc.d.values[i] == doctest::Approx(kd.d.values[i]).epsilon(1e-9));
        CHECK(kdc.j.values[i] ==
              doctest::Approx(kd.j.values[i]).epsilon(1e-9).scale(100.0));
      }
    }
  }
}

TEST_CASE("window locality: values ignore prices before the warmup window") {
  auto prices = testsup::random_prices(300, 41);
  auto perturbed = prices;
  perturbed[10] *= 3.0;  // far outside any window ending late in the day

  auto a = ma_kernel(prices, 20);
  auto b = ma_kernel(perturbed, 20);
  for (std::size_t i = 40; i < prices.size(); ++i) CHECK(a[i] == b[i]);

  auto ka = kdj_kernel(prices, 9, 3, 3);
  auto kb = kdj_kernel(perturbed, 9, 3, 3);
  // %K carries exponentially decaying memory; far from the perturbation the
  // difference is numerically negligible
  CHECK(ka.k[299] == doctest::Approx(kb.k[299]).epsilon(1e-9));
}

TEST_CASE("crossing 1+b in ratio form matches the MA-difference form") {
  auto prices = testsup::random_prices(400, 59);
  auto s = testsup::one_day(prices);
  auto r = sma_ratio(s, 5, 20);
  auto ma_s = ma(s, 5), ma_l = ma(s, 20);
  double b = 0.0005;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!r.defined(i)) continue;
    bool ratio_above = r.values[i] > 1.0 + b;
    bool diff_above =
        ma_s.values[i] - ma_l.values[i] > b * ma_l.values[i];
    CHECK(ratio_above == diff_above);
  }
}

TEST_CASE("indicators on GBM log-price data reject the unit root") {
  GbmSpec spec;
  spec.days = 10;
  spec.seed = 5;
  auto bars = gbm_series(spec);
  IndicatorOptions cont;
  cont.cross_day_windows = true;

  auto collect = [](const IndicatorSeries& s) {
    std::vector<double> out;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s.defined(i)) out.push_back(s.values[i]);
    return out;
  };

  AdfOptions opts;  // drift+trend, lags 0
  CHECK(adf_test(collect(sma_ratio(bars, 5, 20, cont)), opts).reject);
  CHECK(adf_test(collect(sboll(bars, 20, cont)), opts).reject);
  CHECK(adf_test(collect(kdj(bars, 9, 3, 3, cont).k), opts).reject);
}

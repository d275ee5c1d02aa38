#include <doctest.h>

#include <cmath>

#include "statrules/adf.hpp"
#include "statrules/datagen.hpp"
#include "test_support.hpp"

using namespace statrules;

TEST_CASE("bar counts and timestamps follow the session calendar") {
  GbmSpec spec;
  spec.days = 3;
  auto s = gbm_series(spec);
  CHECK(s.day_count() == 3);
  CHECK(s.size() == 3 * 1080);  // pre-2016 sessions at 15s
  CHECK(s.bars[0].ts.date == 20120104);
  CHECK(s.bars[0].ts.sec == 9 * 3600 + 15 * 60 + 15);
  // dates skip weekends
  CHECK(s.bars[2 * 1080].ts.date == 20120106);

  GbmSpec post;
  post.start_date = 20160104;
  post.days = 1;
  CHECK(gbm_series(post).size() == 960);
}

TEST_CASE("zero volatility yields a deterministic exponential drift") {
  GbmSpec spec;
  spec.sigma = 0.0;
  spec.drift = 0.03;
  spec.days = 2;
  auto s = gbm_series(spec);
  double dt = 15.0 / (250.0 * 16200.0);
  for (std::size_t i = 1; i < s.size(); ++i) {
    double step = std::log(s.bars[i].price) - std::log(s.bars[i - 1].price);
    if (s.bars[i].ts.date == s.bars[i - 1].ts.date)
      CHECK(step == doctest::Approx(0.03 * dt).epsilon(1e-9));
  }
}

TEST_CASE("per-bar log returns have the specified moments") {
  GbmSpec spec;
  spec.days = 930;  // about 1e6 bars
  spec.sigma = 0.20;
  spec.drift = 0.03;
  spec.seed = 3;
  auto s = gbm_series(spec);
  REQUIRE(s.size() > 1000000);

  double dt = 15.0 / (250.0 * 16200.0);
  double mu = (spec.drift - 0.5 * spec.sigma * spec.sigma) * dt;
  double sd = spec.sigma * std::sqrt(dt);

  std::vector<double> steps;
  steps.reserve(s.size());
  for (std::size_t i = 1; i < s.size(); ++i)
    steps.push_back(std::log(s.bars[i].price) -
                    std::log(s.bars[i - 1].price));
  double mean = 0.0;
  for (double v : steps) mean += v;
  mean /= static_cast<double>(steps.size());
  double ss = 0.0;
  for (double v : steps) ss += (v - mean) * (v - mean);
  double var = ss / static_cast<double>(steps.size() - 1);

  double se_mean = sd / std::sqrt(static_cast<double>(steps.size()));
  CHECK(std::abs(mean - mu) < 3.0 * se_mean);
  double se_var = var * std::sqrt(2.0 / static_cast<double>(steps.size()));
  CHECK(std::abs(var - sd * sd) < 3.0 * se_var);
}

TEST_CASE("fixed seeds reproduce, different seeds decorrelate") {
  GbmSpec spec;
  spec.days = 93;  // ~1e5 bars
  spec.seed = 10;
  auto a = gbm_series(spec);
  auto b = gbm_series(spec);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a.bars[i].price == b.bars[i].price);

  spec.seed = 11;
  auto c = gbm_series(spec);
  double sum_ab = 0.0, sum_a = 0.0, sum_c = 0.0, sa = 0.0, sc = 0.0;
  std::vector<double> ra, rc;
  for (std::size_t i = 1; i < a.size(); ++i) {
    ra.push_back(std::log(a.bars[i].price / a.bars[i - 1].price));
    rc.push_back(std::log(c.bars[i].price / c.bars[i - 1].price));
  }
  std::size_t n = ra.size();
  for (std::size_t i = 0; i < n; ++i) {
    sum_a += ra[i];
    sum_c += rc[i];
  }
  double ma = sum_a / n, mc = sum_c / n;
  for (std::size_t i = 0; i < n; ++i) {
    sum_ab += (ra[i] - ma) * (rc[i] - mc);
    sa += (ra[i] - ma) * (ra[i] - ma);
    sc += (rc[i] - mc) * (rc[i] - mc);
  }
  double corr = sum_ab / std::sqrt(sa * sc);
  CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("log returns of GBM data are stationary by the unit-root test") {
  GbmSpec spec;
  spec.days = 5;
  spec.seed = 21;
  auto s = gbm_series(spec);
  std::vector<double> steps;
  for (std::size_t i = 1; i < s.size(); ++i)
    steps.push_back(std::log(s.bars[i].price / s.bars[i - 1].price));
  for (int lags : {0, 1, 2}) {
    AdfOptions opts;
    opts.lags = lags;
    CHECK(adf_test(steps, opts).reject);
  }
}

TEST_CASE("invalid GBM parameters are rejected") {
  GbmSpec bad;
  bad.initial_price = 0.0;
  CHECK_THROWS(gbm_series(bad));
  GbmSpec neg;
  neg.sigma = -0.1;
  CHECK_THROWS(gbm_series(neg));
  GbmSpec days;
  days.days = 0;
  CHECK_THROWS(gbm_series(days));
}

TEST_CASE("planted matrix: shape, effect and exchangeability") {
  auto m = planted_matrix(10, 100, 0.5, 4, 9);
  CHECK(m.strategies() == 10);
  CHECK(m.days() == 100);
  CHECK(m.ids[4] == "S004");

  // column means: planted one near its effect, others near zero (sigma = 1)
  for (std::size_t k = 0; k < 10; ++k) {
    double mean = 0.0;
    for (std::size_t t = 0; t < 100; ++t) mean += m.at(k, t);
    mean /= 100.0;
    double target = k == 4 ? 0.5 : 0.0;
    CHECK(std::abs(mean - target) < 3.0 / std::sqrt(100.0));
  }
  CHECK_THROWS(planted_matrix(1, 100, 0.1, 0, 1));
  CHECK_THROWS(planted_matrix(5, 5, 0.1, 0, 1));
  CHECK_THROWS(planted_matrix(5, 100, 0.1, 7, 1));
}

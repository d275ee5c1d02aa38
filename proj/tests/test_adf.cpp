#include <doctest.h>

#include <cmath>

#include "statrules/adf.hpp"
#include "test_support.hpp"

using namespace statrules;

namespace {

std::vector<double> random_walk(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::vector<double> y(n);
  double v = 0.0;
  for (auto& x : y) {
    v += testsup::gaussian(g);
    x = v;
  }
  return y;
}

std::vector<double> white_noise(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::vector<double> y(n);
  for (auto& x : y) x = testsup::gaussian(g);
  return y;
}

}  // namespace

TEST_CASE("critical values approach the asymptotic surface constants") {
  CHECK(adf_critical_value(AdfVariant::TrendDrift, 0.05, 1000000) ==
        doctest::Approx(-3.41049).epsilon(1e-3));
  CHECK(adf_critical_value(AdfVariant::Drift, 0.05, 1000000) ==
        doctest::Approx(-2.86154).epsilon(1e-3));
  CHECK(adf_critical_value(AdfVariant::None, 0.05, 1000000) ==
        doctest::Approx(-1.94100).epsilon(1e-3));
  // finite-sample correction moves the 5% point left
  CHECK(adf_critical_value(AdfVariant::TrendDrift, 0.05, 50) <
        adf_critical_value(AdfVariant::TrendDrift, 0.05, 5000));
}

TEST_CASE("no-constant DF statistic matches an independent two-pass oracle") {
  for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    auto y = random_walk(400, seed);
    AdfOptions opts;
    opts.variant = AdfVariant::None;
    opts.lags = 0;
    auto res = adf_test(y, opts);

    // dy_t = gamma * y_{t-1} + e_t fitted by direct sums
    double sxy = 0.0, sxx = 0.0;
    std::size_t n = y.size() - 1;
    for (std::size_t t = 1; t < y.size(); ++t) {
      double dy = y[t] - y[t - 1];
      sxy += y[t - 1] * dy;
      sxx += y[t - 1] * y[t - 1];
    }
    double gamma = sxy / sxx;
    double rss = 0.0;
    for (std::size_t t = 1; t < y.size(); ++t) {
      double e = (y[t] - y[t - 1]) - gamma * y[t - 1];
      rss += e * e;
    }
    double se = std::sqrt(rss / (static_cast<double>(n) - 1.0) / sxx);
    CHECK(res.coeff[0] == doctest::Approx(gamma).epsilon(1e-10));
    CHECK(res.tstat == doctest::Approx(gamma / se).epsilon(1e-10));
    CHECK(res.nobs == n);
  }
}

TEST_CASE("regression residuals are orthogonal to the regressors") {
  auto y = random_walk(600, 11);
  AdfOptions opts;
  opts.lags = 2;
  auto res = adf_test(y, opts);

  // rebuild fitted residuals and check the normal equations
  std::size_t start = 3;  // lags + 1
  double dot_y = 0.0, dot_1 = 0.0, dot_t = 0.0, norm = 0.0;
  for (std::size_t t = start; t < y.size(); ++t) {
    double dy = y[t] - y[t - 1];
    double fit = res.drift + res.trend * static_cast<double>(t) +
                 res.coeff[0] * y[t - 1] +
                 res.coeff[1] * (y[t - 1] - y[t - 2]) +
                 res.coeff[2] * (y[t - 2] - y[t - 3]);
    double e = dy - fit;
    dot_1 += e;
    dot_t += e * static_cast<double>(t);
    dot_y += e * y[t - 1];
    norm += std::abs(dy);
  }
  CHECK(std::abs(dot_1) / norm < 1e-8);
  CHECK(std::abs(dot_t) / norm / static_cast<double>(y.size()) < 1e-8);
  CHECK(std::abs(dot_y) / norm / std::abs(y.back()) < 1e-8);
}

TEST_CASE("adding a lag never decreases the maximized likelihood") {
  auto y = random_walk(500, 17);
  for (int p = 0; p < 4; ++p) {
    AdfOptions small, big;
    small.lags = p;
    big.lags = p + 1;
    // matched effective samples: drop one leading point for the smaller model
    std::vector<double> shifted(y.begin() + 1, y.end());
    auto res_small = adf_test(shifted, small);
    auto res_big = adf_test(y, big);
    REQUIRE(res_small.nobs == res_big.nobs);
    CHECK(res_big.loglik >= res_small.loglik - 1e-9);
  }
}

TEST_CASE("F statistic is +inf at zero lags and finite otherwise") {
  auto y = random_walk(300, 23);
  AdfOptions opts;
  CHECK(std::isinf(adf_test(y, opts).fstat));
  opts.lags = 2;
  CHECK(std::isfinite(adf_test(y, opts).fstat));
}

TEST_CASE("p-values are clamped and monotone in the statistic") {
  auto stationary = white_noise(2000, 31);
  auto res = adf_test(stationary);
  CHECK(res.pvalue >= 0.001);
  CHECK(res.pvalue <= 0.05);
  CHECK(res.reject);

  auto rw = random_walk(2000, 32);
  auto res_rw = adf_test(rw);
  CHECK(res_rw.pvalue <= 0.999);
}

TEST_CASE("small Monte Carlo: unit root retained, stationarity detected") {
  int reject_rw = 0, reject_wn = 0;
  const int reps = 60;
  for (int r = 0; r < reps; ++r) {
    if (adf_test(random_walk(800, 100 + r)).reject) ++reject_rw;
    if (adf_test(white_noise(800, 200 + r)).reject) ++reject_wn;
  }
  CHECK(reject_rw <= reps / 4);  // nominal 5%, loose bound for a small sample
  CHECK(reject_wn == reps);
}

TEST_CASE("too-short series and degenerate input are rejected") {
  std::vector<double> tiny(10, 1.0);
  CHECK_THROWS(adf_test(tiny));
  std::vector<double> constant(100, 2.0);
  CHECK_THROWS(adf_test(constant));
}

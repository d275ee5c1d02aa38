#pragma once

#include <cstdint>

#include "statrules/bars.hpp"
#include "statrules/spa.hpp"

namespace statrules {

// Geometric Brownian motion bar generator: per-bar log returns are i.i.d.
// Gaussian with mean (r - sigma^2/2)*dt and variance sigma^2*dt, where
// dt = frequency / (250 * session seconds per day).
struct GbmSpec {
  double initial_price = 3000.0;
  double sigma = 0.20;  // annualized volatility
  double drift = 0.03;  // annualized r
  int frequency = 15;   // seconds per bar
  int days = 5;
  int start_date = 20120104;
  std::uint64_t seed = 42;
  SessionCalendar calendar = SessionCalendar::csi300_default();
};

BarSeries gbm_series(const GbmSpec& spec);

// K x T matrix of i.i.d. standard normal entries with one column shifted by
// `effect`; ids are "S000".."S(K-1)" with the planted column marked.
PerformanceMatrix planted_matrix(std::size_t K, std::size_t T, double effect,
                                 std::size_t planted_col, std::uint64_t seed,
                                 double sigma = 1.0);

}  // namespace statrules

#pragma once

#include <string>
#include <vector>

#include "statrules/spa.hpp"

namespace statrules {

struct WindowPlan {
  int train = 20;  // trailing ranking window, days
  int test = 10;   // deployment window, days

  friend bool operator==(const WindowPlan&, const WindowPlan&) = default;
};

// Train in {20..80 step 10} x test in {10..train step 10}: 35 plans.
std::vector<WindowPlan> enumerate_window_plans();

struct Deployment {
  std::size_t begin = 0;  // day range [begin, end) of the deployment
  std::size_t end = 0;
  std::size_t member = 0;  // index into the pool matrix
};

struct CompositeSeries {
  std::vector<double> d;  // daily performance; 0 during the initial warmup
  std::vector<int> dates;
  std::vector<Deployment> deployments;
};

// Score used to rank pool members over a training window: annualized return
// over max drawdown of the window's compounded daily d. MDP = 0 with positive
// return ranks above every finite score, ordered by return; ties break by
// lexicographically smallest strategy id.
double window_annual_return(std::span<const double> window_d);
double window_max_drawdown(std::span<const double> window_d);

// Rolling train/test selection: every `test` days, rank pool members on the
// trailing `train` days of realized d and deploy the winner forward. Only
// data strictly before the deployment window is used.
CompositeSeries rolling_select(const PerformanceMatrix& pool, WindowPlan plan);

}  // namespace statrules

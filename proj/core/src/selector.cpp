#include "statrules/selector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace statrules {

std::vector<WindowPlan> enumerate_window_plans() {
  std::vector<WindowPlan> out;
  for (int train = 20; train <= 80; train += 10)
    for (int test = 10; test <= train; test += 10)
      out.push_back({train, test});
  return out;
}

double window_annual_return(std::span<const double> window_d) {
  double sum = 0.0;
  for (double v : window_d) sum += v;
  return sum * 250.0 / static_cast<double>(window_d.size());
}

double window_max_drawdown(std::span<const double> window_d) {
  double cum = 0.0, peak = 0.0, worst = 0.0;
  for (double v : window_d) {
    cum += v;
    peak = std::max(peak, cum);
    worst = std::max(worst, 1.0 - std::exp(cum - peak));
  }
  return worst;
}

namespace {

struct Score {
  bool infinite = false;  // MDP = 0 with AR > 0
  double value = 0.0;     // AR/MDP, or AR in the infinite class

  bool better_than(const Score& o) const {
    if (infinite != o.infinite) return infinite;
    return value > o.value;
  }
};

Score score_window(std::span<const double> window_d) {
  double ar = window_annual_return(window_d);
  double mdp = window_max_drawdown(window_d);
  if (mdp == 0.0) return ar > 0.0 ? Score{true, ar} : Score{false, 0.0};
  return Score{false, ar / mdp};
}

}  // namespace

CompositeSeries rolling_select(const PerformanceMatrix& pool,
                               WindowPlan plan) {
  const std::size_t K = pool.strategies();
  const std::size_t T = pool.days();
  const auto train = static_cast<std::size_t>(plan.train);
  const auto test = static_cast<std::size_t>(plan.test);
  if (plan.train < 1 || plan.test < 1 || plan.test > plan.train)
    throw std::invalid_argument("rolling_select: bad window plan");
  if (K == 0) throw std::invalid_argument("rolling_select: empty pool");
  if (T < train + test)
    throw std::invalid_argument("rolling_select: window exceeds data");

  // Sorting pool columns by id once makes the tie-break lexicographic
  // regardless of the matrix column order.
  std::vector<std::size_t> order(K);
  for (std::size_t k = 0; k < K; ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return pool.ids[a] < pool.ids[b];
  });

  CompositeSeries out;
  out.d.assign(T, 0.0);
  out.dates = pool.dates;

  std::vector<double> column(T);
  for (std::size_t start = train; start < T; start += test) {
    std::size_t end = std::min(start + test, T);

    std::size_t best = K;
    Score best_score{};
    for (std::size_t k : order) {
      for (std::size_t t = 0; t < train; ++t)
        column[t] = pool.at(k, start - train + t);
      Score s = score_window(std::span<const double>(column.data(), train));
      if (best == K || s.better_than(best_score)) {
        best = k;
        best_score = s;
      }
    }

    out.deployments.push_back({start, end, best});
    for (std::size_t t = start; t < end; ++t) out.d[t] = pool.at(best, t);
  }
  return out;
}

}  // namespace statrules

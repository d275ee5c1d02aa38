#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "statrules/bars.hpp"

namespace statrules {

// Per-bar indicator values; leading warm-up entries are NaN.
struct IndicatorSeries {
  std::vector<double> values;
  int warmup_length = 0;

  std::size_t size() const { return values.size(); }
  bool defined(std::size_t i) const;
};

struct IndicatorOptions {
  // Indicators restart at each day boundary by default, matching the daily
  // forced liquidation; set true to run windows continuously across days.
  bool cross_day_windows = false;
};

// --- raw kernels over one contiguous price segment ---
std::vector<double> ma_kernel(std::span<const double> prices, int n);
std::vector<double> ema_kernel(std::span<const double> prices, int n);
std::vector<double> sboll_kernel(std::span<const double> prices, int n);
struct KdjKernelResult {
  std::vector<double> k, d, j;
};
KdjKernelResult kdj_kernel(std::span<const double> prices, int n, int m,
                           int smooth_k);

// --- series-level indicators ---
IndicatorSeries ma(const BarSeries& s, int n, IndicatorOptions opts = {});
IndicatorSeries ema(const BarSeries& s, int n, IndicatorOptions opts = {});

// R(n_s,n_l)_t = MA(n_s)_t / MA(n_l)_t = SMA(n_s)_t / SMA(n_l)_t.
IndicatorSeries sma_ratio(const BarSeries& s, int n_short, int n_long,
                          IndicatorOptions opts = {});

struct KdjSeries {
  IndicatorSeries k, d, j;
};
// RSV over an n-bar rolling high/low; %K/%D smoothed with decay (m-1)/(m+1)
// and (k-1)/(k+1); %J = 3%K - 2%D. RSV = 50 when high == low; the prior
// %K/%D values entering the recursion at the first RSV bar are 50.
KdjSeries kdj(const BarSeries& s, int n, int m, int smooth_k,
              IndicatorOptions opts = {});

// (P_t - EMA(n)_t) / sigma_t with triangular EMA weights and an (n-1)-divisor
// standard deviation; 0 when sigma vanishes.
IndicatorSeries sboll(const BarSeries& s, int n, IndicatorOptions opts = {});

// Classical Bollinger bands, kept for cross-checks against the z-score form.
struct BollBands {
  IndicatorSeries mid, upper, lower;
};
BollBands boll_bands(const BarSeries& s, int n, double width,
                     IndicatorOptions opts = {});

}  // namespace statrules

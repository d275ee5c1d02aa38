#include "statrules/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace statrules {

namespace {

const double kNaN = std::nan("");

std::vector<double> day_prices(const BarSeries& s, std::size_t first,
                               std::size_t last) {
  std::vector<double> p;
  p.reserve(last - first);
  for (std::size_t i = first; i < last; ++i) p.push_back(s.bars[i].price);
  return p;
}

// Applies a kernel per trading day (or once over the whole series).
template <typename Kernel>
IndicatorSeries apply(const BarSeries& s, int warmup, IndicatorOptions opts,
                      Kernel&& kernel) {
  IndicatorSeries out;
  out.warmup_length = warmup;
  out.values.assign(s.size(), kNaN);
  if (opts.cross_day_windows) {
    auto p = day_prices(s, 0, s.size());
    auto v = kernel(std::span<const double>(p));
    std::copy(v.begin(), v.end(), out.values.begin());
    return out;
  }
  for (std::size_t d = 0; d < s.day_count(); ++d) {
    auto [first, last] = s.day_range(d);
    auto p = day_prices(s, first, last);
    auto v = kernel(std::span<const double>(p));
    std::copy(v.begin(), v.end(), out.values.begin() + first);
  }
  return out;
}

}  // namespace

bool IndicatorSeries::defined(std::size_t i) const {
  return i < values.size() && std::isfinite(values[i]);
}

std::vector<double> ma_kernel(std::span<const double> prices, int n) {
  if (n < 1) throw std::invalid_argument("ma: window must be >= 1");
  std::vector<double> out(prices.size(), kNaN);
  double sum = 0.0;
  for (std::size_t t = 0; t < prices.size(); ++t) {
    sum += prices[t];
    if (t >= static_cast<std::size_t>(n)) sum -= prices[t - n];
    if (t + 1 >= static_cast<std::size_t>(n)) out[t] = sum / n;
  }
  return out;
}

std::vector<double> ema_kernel(std::span<const double> prices, int n) {
  if (n < 1) throw std::invalid_argument("ema: window must be >= 1");
  // Triangular weights (n, n-1, ..., 1) / (n(n+1)/2). Rolling update: every
  // in-window weight drops by one (subtract the window sum), the new price
  // enters with weight n, and the expired price has already decayed to zero.
  std::vector<double> out(prices.size(), kNaN);
  const double denom = n * (n + 1) / 2.0;
  double wsum = 0.0;  // weighted numerator
  double sum = 0.0;   // plain window sum
  for (std::size_t t = 0; t < prices.size(); ++t) {
    wsum = wsum - sum + n * prices[t];
    sum += prices[t];
    if (t >= static_cast<std::size_t>(n)) sum -= prices[t - n];
    if (t + 1 >= static_cast<std::size_t>(n)) out[t] = wsum / denom;
  }
  return out;
}

std::vector<double> sboll_kernel(std::span<const double> prices, int n) {
  if (n < 2) throw std::invalid_argument("sboll: window must be >= 2");
  std::vector<double> out(prices.size(), kNaN);
  auto em = ema_kernel(prices, n);
  for (std::size_t t = n - 1; t < prices.size(); ++t) {
    double ss = 0.0;
    for (std::size_t i = t + 1 - n; i <= t; ++i) {
      double dev = prices[i] - em[t];
      ss += dev * dev;
    }
    double sigma = std::sqrt(ss / (n - 1));
    out[t] = sigma < 1e-12 ? 0.0 : (prices[t] - em[t]) / sigma;
  }
  return out;
}

KdjKernelResult kdj_kernel(std::span<const double> prices, int n, int m,
                           int smooth_k) {
  if (n < 1 || m < 1 || smooth_k < 1)
    throw std::invalid_argument("kdj: parameters must be >= 1");
  KdjKernelResult r;
  r.k.assign(prices.size(), kNaN);
  r.d.assign(prices.size(), kNaN);
  r.j.assign(prices.size(), kNaN);
  // prior %K/%D enter the recursion as the neutral 50 at the first RSV bar
  double pk = 50.0, pd = 50.0;
  for (std::size_t t = n - 1; t < prices.size(); ++t) {
    double lo = prices[t], hi = prices[t];
    for (std::size_t i = t + 1 - n; i <= t; ++i) {
      lo = std::min(lo, prices[i]);
      hi = std::max(hi, prices[i]);
    }
    double rsv = hi > lo ? 100.0 * (prices[t] - lo) / (hi - lo) : 50.0;
    pk = ((m - 1) * pk + 2.0 * rsv) / (m + 1);
    pd = ((smooth_k - 1) * pd + 2.0 * pk) / (smooth_k + 1);
    r.k[t] = pk;
    r.d[t] = pd;
    r.j[t] = 3.0 * pk - 2.0 * pd;
  }
  return r;
}

IndicatorSeries ma(const BarSeries& s, int n, IndicatorOptions opts) {
  if (n < 1) throw std::invalid_argument("ma: window must be >= 1");
  return apply(s, n - 1, opts,
               [n](std::span<const double> p) { return ma_kernel(p, n); });
}

IndicatorSeries ema(const BarSeries& s, int n, IndicatorOptions opts) {
  if (n < 1) throw std::invalid_argument("ema: window must be >= 1");
  return apply(s, n - 1, opts,
               [n](std::span<const double> p) { return ema_kernel(p, n); });
}

IndicatorSeries sma_ratio(const BarSeries& s, int n_short, int n_long,
                          IndicatorOptions opts) {
  if (n_short < 1 || n_short >= n_long)
    throw std::invalid_argument("sma_ratio: need 1 <= n_short < n_long");
  return apply(s, n_long - 1, opts, [&](std::span<const double> p) {
    auto ms = ma_kernel(p, n_short);
    auto ml = ma_kernel(p, n_long);
    std::vector<double> out(p.size(), kNaN);
    for (std::size_t t = 0; t < p.size(); ++t)
      if (std::isfinite(ml[t])) out[t] = ms[t] / ml[t];
    return out;
  });
}

KdjSeries kdj(const BarSeries& s, int n, int m, int smooth_k,
              IndicatorOptions opts) {
  if (n < 1 || m < 1 || smooth_k < 1)
    throw std::invalid_argument("kdj: parameters must be >= 1");
  KdjSeries out;
  out.k.warmup_length = out.d.warmup_length = out.j.warmup_length = n - 1;
  out.k.values.assign(s.size(), kNaN);
  out.d.values.assign(s.size(), kNaN);
  out.j.values.assign(s.size(), kNaN);
  auto run = [&](std::size_t first, std::size_t last) {
    auto p = day_prices(s, first, last);
    auto r = kdj_kernel(std::span<const double>(p), n, m, smooth_k);
    std::copy(r.k.begin(), r.k.end(), out.k.values.begin() + first);
    std::copy(r.d.begin(), r.d.end(), out.d.values.begin() + first);
    std::copy(r.j.begin(), r.j.end(), out.j.values.begin() + first);
  };
  if (opts.cross_day_windows) {
    run(0, s.size());
  } else {
    for (std::size_t d = 0; d < s.day_count(); ++d) {
      auto [first, last] = s.day_range(d);
      run(first, last);
    }
  }
  return out;
}

IndicatorSeries sboll(const BarSeries& s, int n, IndicatorOptions opts) {
  if (n < 2) throw std::invalid_argument("sboll: window must be >= 2");
  return apply(s, n - 1, opts,
               [n](std::span<const double> p) { return sboll_kernel(p, n); });
}

BollBands boll_bands(const BarSeries& s, int n, double width,
                     IndicatorOptions opts) {
  if (n < 2) throw std::invalid_argument("boll_bands: window must be >= 2");
  BollBands out;
  out.mid = ema(s, n, opts);
  out.upper = out.mid;
  out.lower = out.mid;
  auto z = sboll(s, n, opts);
  // upper/lower = mid +/- width * sigma; recover sigma from the z-score where
  // it is nonzero, otherwise sigma = 0.
  for (std::size_t t = 0; t < s.size(); ++t) {
    if (!out.mid.defined(t)) continue;
    double sigma = 0.0;
    if (z.values[t] != 0.0)
      sigma = (s.bars[t].price - out.mid.values[t]) / z.values[t];
    out.upper.values[t] = out.mid.values[t] + width * sigma;
    out.lower.values[t] = out.mid.values[t] - width * sigma;
  }
  return out;
}

}  // namespace statrules

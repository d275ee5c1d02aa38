#include "statrules/strategy.hpp"

#include <cstdio>
#include <stdexcept>

namespace statrules {

std::string family_name(Family f) {
  switch (f) {
    case Family::MA: return "MA";
    case Family::KDJ: return "KDJ";
    case Family::BOLL: return "Boll";
  }
  return "?";
}

std::string StrategySpec::name() const {
  char buf[64];
  switch (family) {
    case Family::MA:
      std::snprintf(buf, sizeof(buf), "MA_%d(%d,%d,%g)", frequency, p1, p2,
                    band);
      break;
    case Family::KDJ:
      std::snprintf(buf, sizeof(buf), "KDJ_%d(%d,%d,%d)", frequency, p1, p2,
                    p3);
      break;
    case Family::BOLL:
      std::snprintf(buf, sizeof(buf), "Boll_%d(%d,%g)", frequency, p1, band);
      break;
  }
  return buf;
}

std::vector<StrategySpec> enumerate_grid(Family family) {
  static const int freqs[] = {15, 30, 60};
  std::vector<StrategySpec> out;
  switch (family) {
    case Family::MA: {
      static const int shorts[] = {1, 5, 10, 15};
      static const int longs[] = {20, 30, 60, 120};
      static const double bands[] = {0.1e-3, 0.5e-3, 1e-3, 1.5e-3};
      for (int f : freqs)
        for (int ns : shorts)
          for (int nl : longs)
            for (double b : bands)
              out.push_back({Family::MA, f, ns, nl, 0, b});
      break;
    }
    case Family::KDJ: {
      static const int params[][3] = {
          {5, 1, 3}, {5, 3, 3}, {9, 3, 3}, {14, 3, 3}, {19, 3, 3}};
      for (int f : freqs)
        for (const auto& p : params)
          out.push_back({Family::KDJ, f, p[0], p[1], p[2], 0.0});
      break;
    }
    case Family::BOLL: {
      static const int windows[] = {20, 30, 60, 120};
      static const double widths[] = {0.1, 0.5, 1.0, 1.5, 2.0, 2.5};
      for (int f : freqs)
        for (int n : windows)
          for (double k : widths)
            out.push_back({Family::BOLL, f, n, 0, 0, k});
      break;
    }
  }
  return out;
}

std::vector<StrategySpec> enumerate_grid() {
  std::vector<StrategySpec> out = enumerate_grid(Family::MA);
  for (auto fam : {Family::KDJ, Family::BOLL}) {
    auto part = enumerate_grid(fam);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

namespace {

// Shared position machine. Rules is any type exposing defined(t) plus the
// four signal predicates over (t-1, t); closes are processed before opens,
// opens are ignored unless flat, and the day's final bar is forced to 0.
template <typename Rules>
PositionSeries run_machine(std::size_t nbars,
                           const std::vector<std::size_t>& day_start,
                           const Rules& rules) {
  PositionSeries out;
  out.positions.assign(nbars, 0);
  out.day_start = day_start;
  for (std::size_t d = 0; d < day_start.size(); ++d) {
    std::size_t first = day_start[d];
    std::size_t last = d + 1 < day_start.size() ? day_start[d + 1] : nbars;
    int pos = 0;
    for (std::size_t t = first; t < last; ++t) {
      if (t + 1 == last) {
        pos = 0;  // forced liquidation
      } else if (t > first && rules.defined(t - 1) && rules.defined(t)) {
        if (pos == 1 && rules.close_long(t)) pos = 0;
        if (pos == -1 && rules.close_short(t)) pos = 0;
        if (pos == 0) {
          bool ol = rules.open_long(t);
          bool os = rules.open_short(t);
          if (ol != os) pos = ol ? 1 : -1;
        }
      }
      out.positions[t] = static_cast<std::int8_t>(pos);
    }
  }
  return out;
}

struct MaRules {
  const IndicatorSeries& r;
  double up, low;
  bool defined(std::size_t t) const { return r.defined(t); }
  bool open_long(std::size_t t) const {
    return r.values[t - 1] <= up && r.values[t] > up;
  }
  bool close_long(std::size_t t) const {
    return r.values[t - 1] > up && r.values[t] <= up;
  }
  bool open_short(std::size_t t) const {
    return r.values[t - 1] >= low && r.values[t] < low;
  }
  bool close_short(std::size_t t) const {
    return r.values[t - 1] < low && r.values[t] >= low;
  }
};

struct KdjRules {
  const IndicatorSeries& k;
  const IndicatorSeries& d;
  bool defined(std::size_t t) const { return k.defined(t) && d.defined(t); }
  bool up_cross(std::size_t t) const {
    return k.values[t - 1] < d.values[t - 1] && k.values[t] >= d.values[t];
  }
  bool down_cross(std::size_t t) const {
    return k.values[t - 1] > d.values[t - 1] && k.values[t] <= d.values[t];
  }
  bool in_band(std::size_t t) const {
    return k.values[t] >= 20.0 && k.values[t] <= 80.0;
  }
  bool open_long(std::size_t t) const { return up_cross(t) && in_band(t); }
  bool close_long(std::size_t t) const { return down_cross(t); }
  bool open_short(std::size_t t) const { return down_cross(t) && in_band(t); }
  bool close_short(std::size_t t) const { return up_cross(t); }
};

struct BollRules {
  const IndicatorSeries& z;
  double width;
  bool defined(std::size_t t) const { return z.defined(t); }
  bool open_long(std::size_t t) const {
    return z.values[t - 1] <= width && z.values[t] > width;
  }
  bool close_long(std::size_t t) const {
    return z.values[t - 1] >= width && z.values[t] < width;
  }
  bool open_short(std::size_t t) const {
    return z.values[t - 1] >= -width && z.values[t] < -width;
  }
  bool close_short(std::size_t t) const {
    return z.values[t - 1] <= -width && z.values[t] > -width;
  }
};

}  // namespace

PositionSeries ma_signals(const IndicatorSeries& ratio,
                          const std::vector<std::size_t>& day_start,
                          double b) {
  if (b < 0) throw std::invalid_argument("ma_signals: band must be >= 0");
  return run_machine(ratio.size(), day_start,
                     MaRules{ratio, 1.0 + b, 1.0 - b});
}

PositionSeries kdj_signals(const IndicatorSeries& pct_k,
                           const IndicatorSeries& pct_d,
                           const std::vector<std::size_t>& day_start) {
  if (pct_k.size() != pct_d.size())
    throw std::invalid_argument("kdj_signals: misaligned %K/%D series");
  return run_machine(pct_k.size(), day_start, KdjRules{pct_k, pct_d});
}

PositionSeries boll_signals(const IndicatorSeries& z,
                            const std::vector<std::size_t>& day_start,
                            double width) {
  if (!(width > 0)) throw std::invalid_argument("boll_signals: width must be > 0");
  return run_machine(z.size(), day_start, BollRules{z, width});
}

PositionSeries run_strategy(const BarSeries& bars, const StrategySpec& spec,
                            IndicatorOptions opts) {
  switch (spec.family) {
    case Family::MA: {
      auto r = sma_ratio(bars, spec.p1, spec.p2, opts);
      return ma_signals(r, bars.day_start, spec.band);
    }
    case Family::KDJ: {
      auto lines = kdj(bars, spec.p1, spec.p2, spec.p3, opts);
      return kdj_signals(lines.k, lines.d, bars.day_start);
    }
    case Family::BOLL: {
      auto z = sboll(bars, spec.p1, opts);
      return boll_signals(z, bars.day_start, spec.band);
    }
  }
  throw std::logic_error("run_strategy: unknown family");
}

}  // namespace statrules

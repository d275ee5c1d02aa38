#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "statrules/indicators.hpp"

namespace statrules {

enum class Family { MA, KDJ, BOLL };

std::string family_name(Family f);

// One cell of the strategy grid: indicator family, bar frequency, parameters.
struct StrategySpec {
  Family family = Family::MA;
  int frequency = 15;  // seconds per bar
  // MA: (p1=n_short, p2=n_long, band=b); KDJ: (p1=n, p2=m, p3=k);
  // BOLL: (p1=n, band=K)
  int p1 = 0;
  int p2 = 0;
  int p3 = 0;
  double band = 0.0;  // MA filter half-width b, or BOLL band width K

  // e.g. "MA_15(10,120,0.0001)", "KDJ_60(5,1,3)", "Boll_30(120,0.1)"
  std::string name() const;
};

// The full grid: 64 MA + 5 KDJ + 24 Boll per frequency, x {15,30,60} = 279.
std::vector<StrategySpec> enumerate_grid();
std::vector<StrategySpec> enumerate_grid(Family family);

// Per-bar target position in {-1,0,+1}; always 0 at the last bar of each day.
struct PositionSeries {
  std::vector<std::int8_t> positions;
  std::vector<std::size_t> day_start;

  std::size_t size() const { return positions.size(); }
};

// MA filter-band rules on the ratio R: open long crossing above 1+b, close
// long crossing back; open short crossing below 1-b, close short crossing
// back. Closes are processed before opens within a bar.
PositionSeries ma_signals(const IndicatorSeries& ratio,
                          const std::vector<std::size_t>& day_start, double b);

// KDJ cross rules with the [20,80] open filter on %K.
PositionSeries kdj_signals(const IndicatorSeries& pct_k,
                           const IndicatorSeries& pct_d,
                           const std::vector<std::size_t>& day_start);

// Bollinger z-score band rules: long above +K, short below -K.
PositionSeries boll_signals(const IndicatorSeries& z,
                            const std::vector<std::size_t>& day_start,
                            double width);

// Indicator computation + rule dispatch for one grid cell.
PositionSeries run_strategy(const BarSeries& bars, const StrategySpec& spec,
                            IndicatorOptions opts = {});

}  // namespace statrules

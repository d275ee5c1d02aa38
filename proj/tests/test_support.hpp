#pragma once

// Shared helpers for building synthetic series in tests. mt19937_64 is fully
// specified by the standard, so fixed-seed data is identical everywhere;
// distributions are hand-rolled because std:: ones are not portable.

#include <cmath>
#include <random>
#include <vector>

#include "statrules/bars.hpp"

namespace testsup {

inline double uniform01(std::mt19937_64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double gaussian(std::mt19937_64& g) {
  double u1 = uniform01(g), u2 = uniform01(g);
  while (u1 <= 0.0) u1 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * 3.14159265358979323846 * u2);
}

// Random-walk prices around `base`, one value per bar.
inline std::vector<double> random_prices(std::size_t n, std::uint64_t seed,
                                         double base = 100.0,
                                         double step = 0.002) {
  std::mt19937_64 g(seed);
  std::vector<double> out(n);
  double lp = std::log(base);
  for (std::size_t i = 0; i < n; ++i) {
    lp += step * gaussian(g);
    out[i] = std::exp(lp);
  }
  return out;
}

// One BarSeries from explicit per-day price vectors. Timestamps are evenly
// spaced 15s slots from 09:15; dates advance over weekdays from start_date.
inline statrules::BarSeries make_series(
    const std::vector<std::vector<double>>& days, int start_date = 20120104,
    int frequency = 15) {
  statrules::BarSeries s;
  s.frequency = frequency;
  int date = start_date;
  for (const auto& day : days) {
    s.day_start.push_back(s.bars.size());
    int sec = 9 * 3600 + 15 * 60;
    for (double p : day) {
      sec += frequency;
      s.bars.push_back({{date, sec}, p});
    }
    date = statrules::next_weekday(date);
  }
  return s;
}

inline statrules::BarSeries one_day(const std::vector<double>& prices,
                                    int date = 20120104) {
  return make_series({prices}, date);
}

}  // namespace testsup

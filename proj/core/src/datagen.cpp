#include "statrules/datagen.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "rng.hpp"

namespace statrules {

using detail::Rng;
using detail::splitmix64;

BarSeries gbm_series(const GbmSpec& spec) {
  if (!(spec.initial_price > 0))
    throw std::invalid_argument("gbm: initial price must be positive");
  if (spec.sigma < 0) throw std::invalid_argument("gbm: negative volatility");
  if (spec.days < 1) throw std::invalid_argument("gbm: day count must be >= 1");

  BarSeries out;
  out.frequency = spec.frequency;

  Rng rng(splitmix64(spec.seed ^ 0x6b6du));
  double log_price = std::log(spec.initial_price);

  int date = spec.start_date;
  if (weekday(date) >= 5) date = next_weekday(date);
  for (int d = 0; d < spec.days; ++d) {
    const double dt =
        spec.frequency /
        (250.0 * static_cast<double>(spec.calendar.session_seconds(date)));
    const double mean = (spec.drift - 0.5 * spec.sigma * spec.sigma) * dt;
    const double sd = spec.sigma * std::sqrt(dt);

    out.day_start.push_back(out.bars.size());
    for (int slot : bar_slots(spec.calendar, date, spec.frequency)) {
      log_price += mean + sd * rng.gaussian();
      out.bars.push_back({{date, slot}, std::exp(log_price)});
    }
    date = next_weekday(date);
  }
  return out;
}

PerformanceMatrix planted_matrix(std::size_t K, std::size_t T, double effect,
                                 std::size_t planted_col, std::uint64_t seed,
                                 double sigma) {
  if (K < 2 || T < 10)
    throw std::invalid_argument("planted_matrix: need K >= 2 and T >= 10");
  if (planted_col >= K)
    throw std::invalid_argument("planted_matrix: planted column out of range");

  PerformanceMatrix m;
  m.ids.reserve(K);
  char buf[16];
  for (std::size_t k = 0; k < K; ++k) {
    std::snprintf(buf, sizeof(buf), "S%03zu", k);
    m.ids.push_back(buf);
  }
  m.dates.resize(T);
  for (std::size_t t = 0; t < T; ++t) m.dates[t] = static_cast<int>(t + 1);

  Rng rng(splitmix64(seed ^ 0x9817a7u));
  m.data.resize(K * T);
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t k = 0; k < K; ++k)
      m.data[t * K + k] =
          sigma * rng.gaussian() + (k == planted_col ? effect : 0.0);
  return m;
}

}  // namespace statrules

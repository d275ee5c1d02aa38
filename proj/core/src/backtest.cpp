#include "statrules/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace statrules {

CostSchedule::CostSchedule(std::vector<std::pair<int, double>> entries)
    : entries_(std::move(entries)) {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].second < 0)
      throw std::invalid_argument("cost schedule: negative rate");
    if (i > 0 && entries_[i].first <= entries_[i - 1].first)
      throw std::invalid_argument("cost schedule: dates must increase");
  }
}

double CostSchedule::rate_for(int ymd) const {
  double rate = 0.0;
  for (const auto& [date, r] : entries_) {
    if (date > ymd) break;
    rate = r;
  }
  return rate;
}

CostSchedule CostSchedule::csi300_default() {
  // 1/10000 units
  return CostSchedule({{20120104, 0.50e-4},
                       {20120601, 0.35e-4},
                       {20120901, 0.25e-4},
                       {20150803, 0.23e-4},
                       {20150826, 1.15e-4},
                       {20150907, 23.0e-4}});
}

CostSchedule CostSchedule::zero() {
  return CostSchedule(std::vector<std::pair<int, double>>{});
}

std::size_t TradeLedger::long_count() const {
  return static_cast<std::size_t>(
      std::count_if(trades.begin(), trades.end(),
                    [](const Trade& t) { return t.side > 0; }));
}

std::size_t TradeLedger::short_count() const {
  return trades.size() - long_count();
}

double cost_for_transition(int prev, int next, double c) {
  if (c < 0.0 || c >= 1.0)
    throw std::invalid_argument("cost_for_transition: need 0 <= c < 1");
  return std::log((1.0 - c) / (1.0 + c)) * std::abs(next - prev);
}

BacktestResult run_backtest(const BarSeries& series,
                            const PositionSeries& positions,
                            const BacktestConfig& config) {
  if (series.size() != positions.size() ||
      series.day_start != positions.day_start)
    throw std::invalid_argument("run_backtest: misaligned positions");

  BacktestResult out;
  out.daily.reserve(series.day_count());

  int open_side = 0;
  Timestamp open_time{};
  double open_price = 0.0;
  double open_cost = 0.0;

  for (std::size_t dd = 0; dd < series.day_count(); ++dd) {
    auto [first, last] = series.day_range(dd);
    const int date = series.bars[first].ts.date;
    const double c = config.include_costs ? config.costs.rate_for(date) : 0.0;
    const double log_cost_unit = std::log((1.0 - c) / (1.0 + c));

    DailyPerformance day;
    day.date = date;

    int prev_pos = 0;  // flat at day start
    for (std::size_t t = first; t < last; ++t) {
      int pos = positions.positions[t];
      if (t + 1 == last && pos != 0)
        throw std::invalid_argument(
            "run_backtest: nonzero position at day-end bar");

      if (pos != prev_pos) {
        int delta = std::abs(pos - prev_pos);
        day.d += log_cost_unit * delta;
        out.cost_charges += static_cast<std::size_t>(delta);

        const Bar& bar = series.bars[t];
        if (prev_pos != 0) {  // close existing trade at this bar's price
          Trade tr;
          tr.side = prev_pos;
          tr.open_time = open_time;
          tr.close_time = bar.ts;
          tr.open_price = open_price;
          tr.close_price = bar.price;
          tr.pnl = prev_pos * (bar.price - open_price) * config.multiplier;
          tr.cost = open_cost + (config.include_costs
                                     ? c * bar.price * config.multiplier
                                     : 0.0);
          out.ledger.trades.push_back(tr);
          day.currency_pnl += tr.pnl - tr.cost;
        }
        if (pos != 0) {  // open new trade
          open_side = pos;
          open_time = bar.ts;
          open_price = bar.price;
          open_cost =
              config.include_costs ? c * bar.price * config.multiplier : 0.0;
        }
      }

      if (t + 1 < last)
        day.d += pos * (std::log(series.bars[t + 1].price) -
                        std::log(series.bars[t].price));
      prev_pos = pos;
    }
    (void)open_side;

    out.daily.push_back(day);
  }
  return out;
}

std::vector<EquityPoint> equity_curve(
    const std::vector<DailyPerformance>& daily, const BacktestConfig& config) {
  std::vector<EquityPoint> out;
  out.reserve(daily.size());
  double cum_pnl = 0.0, cum_d = 0.0;
  for (const auto& day : daily) {
    cum_pnl += day.currency_pnl;
    cum_d += day.d;
    out.push_back({day.date, config.initial_capital + cum_pnl,
                   config.initial_capital * std::exp(cum_d)});
  }
  return out;
}

}  // namespace statrules

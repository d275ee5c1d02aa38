#pragma once

#include <string>
#include <vector>

#include "statrules/bars.hpp"
#include "statrules/strategy.hpp"

namespace statrules {

// Effective-dated unilateral transaction cost rates (fraction of notional).
class CostSchedule {
 public:
  CostSchedule() = default;
  explicit CostSchedule(std::vector<std::pair<int, double>> entries);

  double rate_for(int ymd) const;
  const std::vector<std::pair<int, double>>& entries() const {
    return entries_;
  }

  // Table of dated CSI300 futures cost changes, in fractions (1bp/100 units).
  static CostSchedule csi300_default();
  static CostSchedule zero();

 private:
  std::vector<std::pair<int, double>> entries_;  // (effective date, rate)
};

struct BacktestConfig {
  double initial_capital = 1'000'000.0;
  double multiplier = 300.0;  // currency per index point
  CostSchedule costs = CostSchedule::csi300_default();
  bool include_costs = true;
};

// Cost-adjusted daily log return d_t of one strategy.
struct DailyPerformance {
  int date = 0;
  double d = 0.0;             // sum of per-bar log returns + log-cost terms
  double currency_pnl = 0.0;  // ledger P&L (net of currency costs if enabled)
};

struct Trade {
  int side = 0;  // +1 long, -1 short
  Timestamp open_time, close_time;
  double open_price = 0.0, close_price = 0.0;
  double pnl = 0.0;   // side * (close - open) * multiplier, before costs
  double cost = 0.0;  // round-trip currency cost
};

struct TradeLedger {
  std::vector<Trade> trades;

  std::size_t long_count() const;
  std::size_t short_count() const;
};

struct BacktestResult {
  std::vector<DailyPerformance> daily;
  TradeLedger ledger;
  std::size_t cost_charges = 0;  // sum of |I_{n+1} - I_n| over all bars
};

// Log-cost contribution of one position transition:
// ln((1-c)/(1+c)) * |next - prev|, always <= 0.
double cost_for_transition(int prev, int next, double c);

BacktestResult run_backtest(const BarSeries& series,
                            const PositionSeries& positions,
                            const BacktestConfig& config);

struct EquityPoint {
  int date = 0;
  double currency = 0.0;  // capital + cumulative ledger P&L
  double log_mode = 0.0;  // capital * exp(cumulative d)
};

std::vector<EquityPoint> equity_curve(const std::vector<DailyPerformance>& daily,
                                      const BacktestConfig& config);

}  // namespace statrules

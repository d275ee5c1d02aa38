#pragma once

#include <optional>
#include <string>
#include <vector>

#include "statrules/backtest.hpp"

namespace statrules {

// Full per-strategy measure suite. Degenerate cases (zero variance, no
// losing days, no trades) are explicit empty optionals, never NaN.
struct BacktestReport {
  std::string strategy;
  std::size_t ldt = 0;  // long deal times
  std::size_t sdt = 0;  // short deal times
  std::optional<double> asp;     // average single profit (currency)
  std::optional<double> adp;     // average daily profit (currency)
  double ar = 0.0;               // annual return, fraction
  double mdp = 0.0;              // max drawdown percentage, fraction
  std::optional<double> ar_mdp;  // AR / MDP
  std::optional<double> sharpe;  // annualized
  double pnl_index = 0.0;        // in [-100, 100]
  std::optional<double> win_rate;
  std::optional<double> ap_al;   // avg daily profit / avg daily loss
};

double annual_return(double total_pnl, std::size_t n_days, double capital);
double pnl_index(double trade_profit_sum, double trade_loss_sum);
std::optional<double> sharpe(const std::vector<double>& daily_log_returns);
double max_drawdown_pct(const std::vector<double>& equity);

std::optional<double> win_rate(const TradeLedger& ledger);
std::optional<double> ap_over_al(const std::vector<double>& daily_pnl);

BacktestReport compute_report(const std::string& strategy,
                              const BacktestResult& result,
                              const BacktestConfig& config);

}  // namespace statrules

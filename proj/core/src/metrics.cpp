#include "statrules/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace statrules {

double annual_return(double total_pnl, std::size_t n_days, double capital) {
  if (n_days == 0) throw std::invalid_argument("annual_return: zero days");
  if (!(capital > 0)) throw std::invalid_argument("annual_return: capital <= 0");
  return total_pnl / capital * 250.0 / static_cast<double>(n_days);
}

double pnl_index(double profit, double loss) {
  if (profit < 0 || loss < 0)
    throw std::invalid_argument("pnl_index: sums must be non-negative");
  double m = std::max(profit, loss);
  if (m == 0.0) return 0.0;
  return (profit - loss) / m * 100.0;
}

std::optional<double> sharpe(const std::vector<double>& daily) {
  if (daily.size() < 2) return std::nullopt;
  // an exactly constant series is degenerate even when rounding makes the
  // accumulated variance slightly non-zero
  if (std::all_of(daily.begin(), daily.end(),
                  [&](double d) { return d == daily.front(); }))
    return std::nullopt;
  double mean = 0.0;
  for (double d : daily) mean += d;
  mean /= static_cast<double>(daily.size());
  double ss = 0.0;
  for (double d : daily) ss += (d - mean) * (d - mean);
  double var = ss / static_cast<double>(daily.size() - 1);
  if (var <= 0.0) return std::nullopt;
  return mean / std::sqrt(var) * std::sqrt(250.0);
}

double max_drawdown_pct(const std::vector<double>& equity) {
  double peak = -1.0, worst = 0.0;
  for (double v : equity) {
    if (!(v > 0)) throw std::invalid_argument("max_drawdown_pct: equity <= 0");
    peak = std::max(peak, v);
    worst = std::max(worst, 1.0 - v / peak);
  }
  return worst;
}

std::optional<double> win_rate(const TradeLedger& ledger) {
  if (ledger.trades.empty()) return std::nullopt;
  std::size_t wins = 0;
  for (const auto& t : ledger.trades)
    if (t.pnl - t.cost > 0) ++wins;
  return static_cast<double>(wins) / static_cast<double>(ledger.trades.size());
}

std::optional<double> ap_over_al(const std::vector<double>& daily_pnl) {
  double profit_sum = 0.0, loss_sum = 0.0;
  std::size_t profit_n = 0, loss_n = 0;
  for (double p : daily_pnl) {
    if (p > 0) {
      profit_sum += p;
      ++profit_n;
    } else if (p < 0) {
      loss_sum += -p;
      ++loss_n;
    }
  }
  if (loss_n == 0 || profit_n == 0) return std::nullopt;
  return (profit_sum / profit_n) / (loss_sum / loss_n);
}

BacktestReport compute_report(const std::string& strategy,
                              const BacktestResult& result,
                              const BacktestConfig& config) {
  BacktestReport rep;
  rep.strategy = strategy;
  rep.ldt = result.ledger.long_count();
  rep.sdt = result.ledger.short_count();

  double net = 0.0;
  std::vector<double> daily_pnl, daily_d;
  daily_pnl.reserve(result.daily.size());
  daily_d.reserve(result.daily.size());
  for (const auto& day : result.daily) {
    net += day.currency_pnl;
    daily_pnl.push_back(day.currency_pnl);
    daily_d.push_back(day.d);
  }

  std::size_t n_trades = result.ledger.trades.size();
  if (n_trades > 0) rep.asp = net / static_cast<double>(n_trades);
  if (!result.daily.empty())
    rep.adp = net / static_cast<double>(result.daily.size());

  rep.ar = result.daily.empty()
               ? 0.0
               : annual_return(net, result.daily.size(),
                               config.initial_capital);

  // Drawdown on the compounded-d equity: strictly positive even when heavy
  // cost drag pushes the currency ledger below zero.
  auto curve = equity_curve(result.daily, config);
  std::vector<double> equity;
  equity.reserve(curve.size());
  for (const auto& pt : curve) equity.push_back(pt.log_mode);
  rep.mdp = equity.empty() ? 0.0 : max_drawdown_pct(equity);
  if (rep.mdp > 0.0) rep.ar_mdp = rep.ar / rep.mdp;

  rep.sharpe = sharpe(daily_d);

  double profit = 0.0, loss = 0.0;
  for (const auto& t : result.ledger.trades) {
    double p = t.pnl - t.cost;
    if (p > 0)
      profit += p;
    else
      loss += -p;
  }
  rep.pnl_index = pnl_index(profit, loss);
  rep.win_rate = win_rate(result.ledger);
  rep.ap_al = ap_over_al(daily_pnl);
  return rep;
}

}  // namespace statrules

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "statrules/adf.hpp"
#include "statrules/backtest.hpp"
#include "statrules/metrics.hpp"
#include "statrules/selector.hpp"
#include "statrules/spa.hpp"

namespace statrules {

// Shortest round-trippable decimal representation; used for every numeric
// output so identical runs are byte-identical.
std::string format_double(double v);

// Daily performance matrix interchange: header "date,<id>,...", one row per
// trading day.
void write_matrix_csv(const PerformanceMatrix& m, const std::string& path);
PerformanceMatrix read_matrix_csv(const std::string& path);

// Per-strategy report rows in the appendix-table column order.
void write_report_csv(const std::vector<BacktestReport>& reports,
                      const std::string& path);

// ADF results laid out rows = statistic, columns = one per lag setting.
void write_adf_table(std::ostream& out, const std::string& series_name,
                     const std::vector<AdfResult>& results);
void write_adf_table_csv(const std::string& series_name,
                         const std::vector<AdfResult>& results,
                         const std::string& path);

struct FamilyCountRow {
  std::string family;
  // counts indexed [frequency][alpha] in the caller's declared order
  std::vector<std::vector<int>> counts;
};

void write_spa_json(const std::vector<std::pair<double, SpaResult>>& spa,
                    const std::vector<std::pair<double, StepSpaResult>>& steps,
                    const PerformanceMatrix& matrix,
                    const std::vector<int>& frequencies,
                    const std::string& path);

// Table of (train, test, AR, MDP, AR/MDP, SR) rows for the 35 window plans.
struct SelectorRow {
  WindowPlan plan;
  double ar = 0.0, mdp = 0.0;
  std::optional<double> ar_mdp, sr;
};
void write_selector_csv(const std::vector<SelectorRow>& rows,
                        const std::string& path);

// Minimal SVG polyline chart, no plotting dependency.
void write_equity_svg(const std::string& title,
                      const std::vector<EquityPoint>& curve,
                      const std::string& path);

// Parse "MA_15(10,120,0.0001)"-style ids back into family/frequency.
bool parse_strategy_id(const std::string& id, Family& family, int& frequency);

}  // namespace statrules

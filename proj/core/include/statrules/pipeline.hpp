#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "statrules/backtest.hpp"
#include "statrules/io.hpp"
#include "statrules/metrics.hpp"
#include "statrules/selector.hpp"
#include "statrules/spa.hpp"
#include "statrules/strategy.hpp"

namespace statrules {

enum class GridSelection { All, Single_Family, Explicit };

struct RunConfig {
  // Bar data per frequency; missing 30s/60s inputs are derived from the 15s
  // file by resampling.
  std::map<int, std::string> data_paths;
  SessionCalendar calendar = SessionCalendar::csi300_default();
  ParseOptions parse_options;  // calendar/frequency filled per file

  BacktestConfig backtest;

  GridSelection selection = GridSelection::All;
  Family family = Family::MA;            // when Single_Family
  std::vector<std::string> strategy_ids; // when Explicit

  BootstrapPlan bootstrap;
  std::vector<double> alphas = {0.05, 0.10};
  std::vector<int> adf_lags = {0, 1, 2};

  IndicatorOptions indicator_options;
  bool run_selector = false;

  int threads = 0;  // 0 = hardware concurrency
  std::string output_dir = "out";
  int top_n_curves = 3;  // equity SVGs for the best strategies by AR
};

// Flat sectioned key-value config file; every key can be overridden on the
// command line.
RunConfig load_config(const std::string& path);
void apply_config_line(RunConfig& cfg, const std::string& section,
                       const std::string& key, const std::string& value);

struct StrategyRun {
  StrategySpec spec;
  BacktestReport report;
  std::vector<DailyPerformance> daily;
  std::string error;  // non-empty if the strategy failed
};

struct GridResult {
  std::vector<StrategyRun> runs;  // grid enumeration order
  PerformanceMatrix matrix;       // successful strategies only
  int failures = 0;
};

// ingest -> indicators -> strategy -> backtest -> metrics over the selected
// grid, fanned out over `threads` workers with deterministic merge order.
GridResult run_grid(const RunConfig& config);

// Writes report CSV, matrix CSV and top-N equity SVGs under output_dir.
void write_grid_outputs(const GridResult& result, const RunConfig& config);

struct TestsResult {
  std::vector<std::pair<double, SpaResult>> spa;
  std::vector<std::pair<double, StepSpaResult>> step;
};

// ADF per strategy column (written as Tables-4x CSVs) + SPA / Step-SPA at
// each alpha (written as JSON).
TestsResult run_tests(const RunConfig& config, const PerformanceMatrix& matrix);

// Rolling selection over all 35 window plans for a strategy pool.
std::vector<SelectorRow> run_select(const PerformanceMatrix& matrix,
                                    const std::vector<std::string>& pool_ids);

}  // namespace statrules

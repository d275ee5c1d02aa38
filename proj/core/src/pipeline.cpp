#include "statrules/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace statrules {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "on" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "off" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config: bad boolean value '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<SessionWindow> parse_windows(const std::string& v) {
  std::vector<SessionWindow> out;
  for (const auto& part : split_list(v)) {
    auto dash = part.find('-');
    if (dash == std::string::npos)
      throw std::invalid_argument("config: bad session window '" + part + "'");
    out.push_back({parse_hhmm(trim(part.substr(0, dash))),
                   parse_hhmm(trim(part.substr(dash + 1)))});
  }
  return out;
}

std::string sanitize_filename(const std::string& s) {
  std::string out;
  for (char c : s)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' ||
            c == '-')
               ? c
               : '_';
  return out;
}

}  // namespace

void apply_config_line(RunConfig& cfg, const std::string& section,
                       const std::string& key, const std::string& value) {
  auto unknown = [&]() {
    throw std::invalid_argument("config: unknown key [" + section + "] " +
                                key);
  };
  if (section == "data") {
    if (key == "bars_15")
      cfg.data_paths[15] = value;
    else if (key == "bars_30")
      cfg.data_paths[30] = value;
    else if (key == "bars_60")
      cfg.data_paths[60] = value;
    else if (key == "timestamp_format") {
      if (value == "auto")
        cfg.parse_options.timestamp_format = TimestampFormat::Auto;
      else if (value == "iso8601")
        cfg.parse_options.timestamp_format = TimestampFormat::Iso8601;
      else if (value == "compact")
        cfg.parse_options.timestamp_format = TimestampFormat::Compact;
      else
        throw std::invalid_argument("config: bad timestamp_format");
    } else if (key == "missing_bars") {
      if (value == "forward-fill")
        cfg.parse_options.missing = MissingBarPolicy::ForwardFill;
      else if (value == "reject")
        cfg.parse_options.missing = MissingBarPolicy::Reject;
      else
        throw std::invalid_argument("config: bad missing_bars policy");
    } else
      unknown();
  } else if (section == "backtest") {
    if (key == "capital")
      cfg.backtest.initial_capital = std::stod(value);
    else if (key == "multiplier")
      cfg.backtest.multiplier = std::stod(value);
    else if (key == "include_costs")
      cfg.backtest.include_costs = parse_bool(value);
    else
      unknown();
  } else if (section == "grid") {
    if (key == "family") {
      if (value == "all")
        cfg.selection = GridSelection::All;
      else {
        cfg.selection = GridSelection::Single_Family;
        if (value == "MA")
          cfg.family = Family::MA;
        else if (value == "KDJ")
          cfg.family = Family::KDJ;
        else if (value == "BOLL" || value == "Boll")
          cfg.family = Family::BOLL;
        else
          throw std::invalid_argument("config: bad family '" + value + "'");
      }
    } else if (key == "strategies") {
      cfg.selection = GridSelection::Explicit;
      cfg.strategy_ids = split_list(value);
    } else
      unknown();
  } else if (section == "bootstrap") {
    if (key == "B")
      cfg.bootstrap.B = std::stoul(value);
    else if (key == "Q")
      cfg.bootstrap.Q = std::stod(value);
    else if (key == "seed")
      cfg.bootstrap.seed = std::stoull(value);
    else
      unknown();
  } else if (section == "tests") {
    if (key == "alphas") {
      cfg.alphas.clear();
      for (const auto& a : split_list(value)) cfg.alphas.push_back(std::stod(a));
    } else if (key == "adf_lags") {
      cfg.adf_lags.clear();
      for (const auto& l : split_list(value)) cfg.adf_lags.push_back(std::stoi(l));
    } else
      unknown();
  } else if (section == "indicators") {
    if (key == "cross_day_windows")
      cfg.indicator_options.cross_day_windows = parse_bool(value);
    else
      unknown();
  } else if (section == "selector") {
    if (key == "enabled")
      cfg.run_selector = parse_bool(value);
    else
      unknown();
  } else if (section == "run") {
    if (key == "threads")
      cfg.threads = std::stoi(value);
    else if (key == "top_n_curves")
      cfg.top_n_curves = std::stoi(value);
    else
      unknown();
  } else if (section == "output") {
    if (key == "dir")
      cfg.output_dir = value;
    else
      unknown();
  } else {
    unknown();
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);

  RunConfig cfg;
  std::vector<CalendarEntry> calendar_entries;
  std::vector<std::pair<int, double>> cost_entries;

  std::string line, section;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section == "calendar") {
      calendar_entries.push_back({std::stoi(key), parse_windows(value)});
    } else if (section == "costs") {
      cost_entries.emplace_back(std::stoi(key), std::stod(value));
    } else {
      apply_config_line(cfg, section, key, value);
    }
  }
  if (!calendar_entries.empty())
    cfg.calendar = SessionCalendar(std::move(calendar_entries));
  if (!cost_entries.empty()) {
    std::sort(cost_entries.begin(), cost_entries.end());
    cfg.backtest.costs = CostSchedule(std::move(cost_entries));
  }
  cfg.parse_options.calendar = cfg.calendar;
  return cfg;
}

namespace {

std::vector<StrategySpec> select_specs(const RunConfig& cfg) {
  auto all = enumerate_grid();
  switch (cfg.selection) {
    case GridSelection::All:
      return all;
    case GridSelection::Single_Family: {
      std::vector<StrategySpec> out;
      for (const auto& s : all)
        if (s.family == cfg.family) out.push_back(s);
      return out;
    }
    case GridSelection::Explicit: {
      std::vector<StrategySpec> out;
      for (const auto& id : cfg.strategy_ids) {
        auto it = std::find_if(all.begin(), all.end(), [&](const auto& s) {
          return s.name() == id;
        });
        if (it == all.end())
          throw std::invalid_argument("unknown strategy id: " + id);
        out.push_back(*it);
      }
      return out;
    }
  }
  return all;
}

}  // namespace

GridResult run_grid(const RunConfig& config) {
  auto specs = select_specs(config);

  // Load or derive the bar series each selected frequency needs.
  std::vector<int> freqs;
  for (const auto& s : specs)
    if (std::find(freqs.begin(), freqs.end(), s.frequency) == freqs.end())
      freqs.push_back(s.frequency);
  std::sort(freqs.begin(), freqs.end());

  std::map<int, BarSeries> series;
  for (int f : freqs) {
    auto it = config.data_paths.find(f);
    if (it != config.data_paths.end()) {
      ParseOptions opts = config.parse_options;
      opts.frequency = f;
      opts.calendar = config.calendar;
      series[f] = parse_bars(it->second, opts);
      continue;
    }
    // derive from the finest available source
    const BarSeries* src = nullptr;
    for (auto& [sf, bs] : series)
      if (f % sf == 0) {
        src = &bs;
        break;
      }
    if (!src) {
      for (const auto& [sf, path] : config.data_paths)
        if (f % sf == 0) {
          ParseOptions opts = config.parse_options;
          opts.frequency = sf;
          opts.calendar = config.calendar;
          series[sf] = parse_bars(path, opts);
          src = &series[sf];
          break;
        }
    }
    if (!src)
      throw std::runtime_error("no bar data available for frequency " +
                               std::to_string(f) + "s");
    series[f] = resample(*src, f, config.calendar);
  }

  GridResult result;
  result.runs.resize(specs.size());

  unsigned n_threads = config.threads > 0
                           ? static_cast<unsigned>(config.threads)
                           : std::max(1u, std::thread::hardware_concurrency());
  n_threads = std::min<unsigned>(n_threads,
                                 std::max<std::size_t>(specs.size(), 1));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= specs.size()) return;
      StrategyRun& run = result.runs[i];
      run.spec = specs[i];
      try {
        const BarSeries& bars = series.at(specs[i].frequency);
        auto positions =
            run_strategy(bars, specs[i], config.indicator_options);
        auto bt = run_backtest(bars, positions, config.backtest);
        run.report = compute_report(specs[i].name(), bt, config.backtest);
        run.daily = std::move(bt.daily);
      } catch (const std::exception& e) {
        run.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  // Assemble the performance matrix from successful runs in grid order.
  std::vector<int> dates;
  for (const auto& run : result.runs) {
    if (!run.error.empty()) {
      ++result.failures;
      continue;
    }
    if (dates.empty())
      for (const auto& day : run.daily) dates.push_back(day.date);
  }
  result.matrix.dates = dates;
  for (const auto& run : result.runs) {
    if (!run.error.empty()) continue;
    if (run.daily.size() != dates.size()) continue;
    result.matrix.ids.push_back(run.spec.name());
  }
  result.matrix.data.assign(dates.size() * result.matrix.ids.size(), 0.0);
  std::size_t col = 0;
  for (const auto& run : result.runs) {
    if (!run.error.empty() || run.daily.size() != dates.size()) continue;
    for (std::size_t t = 0; t < dates.size(); ++t)
      result.matrix.at(col, t) = run.daily[t].d;
    ++col;
  }
  return result;
}

void write_grid_outputs(const GridResult& result, const RunConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(config.output_dir);

  std::vector<BacktestReport> reports;
  for (const auto& run : result.runs)
    if (run.error.empty()) reports.push_back(run.report);
  write_report_csv(reports, config.output_dir + "/reports.csv");
  write_matrix_csv(result.matrix, config.output_dir + "/daily_matrix.csv");

  if (result.failures > 0) {
    std::ofstream err(config.output_dir + "/errors.txt");
    for (const auto& run : result.runs)
      if (!run.error.empty())
        err << run.spec.name() << ": " << run.error << '\n';
  }

  // Equity curves for the top strategies by annual return.
  std::vector<const StrategyRun*> ok;
  for (const auto& run : result.runs)
    if (run.error.empty()) ok.push_back(&run);
  std::stable_sort(ok.begin(), ok.end(), [](const auto* a, const auto* b) {
    return a->report.ar > b->report.ar;
  });
  int n = std::min<int>(config.top_n_curves, static_cast<int>(ok.size()));
  for (int i = 0; i < n; ++i) {
    auto curve = equity_curve(ok[i]->daily, config.backtest);
    std::string id = ok[i]->spec.name();
    write_equity_svg(id, curve,
                     config.output_dir + "/equity_" + sanitize_filename(id) +
                         ".svg");
  }
}

TestsResult run_tests(const RunConfig& config,
                      const PerformanceMatrix& matrix) {
  TestsResult out;
  for (double alpha : config.alphas) {
    out.spa.emplace_back(alpha, spa_test(matrix, config.bootstrap, alpha));
    out.step.emplace_back(alpha, step_spa(matrix, config.bootstrap, alpha));
  }
  return out;
}

std::vector<SelectorRow> run_select(const PerformanceMatrix& matrix,
                                    const std::vector<std::string>& pool_ids) {
  PerformanceMatrix pool;
  pool.dates = matrix.dates;
  std::vector<std::size_t> cols;
  for (const auto& id : pool_ids) {
    auto it = std::find(matrix.ids.begin(), matrix.ids.end(), id);
    if (it == matrix.ids.end())
      throw std::invalid_argument("pool strategy not in matrix: " + id);
    cols.push_back(static_cast<std::size_t>(it - matrix.ids.begin()));
    pool.ids.push_back(id);
  }
  const std::size_t T = matrix.days();
  pool.data.resize(T * cols.size());
  for (std::size_t t = 0; t < T; ++t)
    for (std::size_t j = 0; j < cols.size(); ++j)
      pool.at(j, t) = matrix.at(cols[j], t);

  std::vector<SelectorRow> rows;
  for (const auto& plan : enumerate_window_plans()) {
    SelectorRow row;
    row.plan = plan;
    auto composite = rolling_select(pool, plan);
    // Warmup days carry no deployment and are excluded from the measures.
    std::vector<double> deployed(
        composite.d.begin() + plan.train, composite.d.end());
    row.ar = window_annual_return(deployed);
    row.mdp = window_max_drawdown(deployed);
    if (row.mdp > 0) row.ar_mdp = row.ar / row.mdp;
    row.sr = sharpe(deployed);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace statrules

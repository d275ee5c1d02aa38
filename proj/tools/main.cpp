// Command line front end: grid backtests, reality-check tests, rolling
// selection and synthetic data generation.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "statrules/adf.hpp"
#include "statrules/datagen.hpp"
#include "statrules/io.hpp"
#include "statrules/pipeline.hpp"

namespace {

using namespace statrules;

std::vector<double> parse_alpha_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  if (out.empty()) throw CLI::ValidationError("--alpha", "empty alpha list");
  return out;
}

std::string output_dir_override(const std::string& configured) {
  const char* env = std::getenv("STATRULES_OUTPUT_DIR");
  return env && *env ? std::string(env) : configured;
}

int cmd_grid(const std::string& config_path, const std::string& family,
             const std::string& costs, const std::string& out_dir) {
  RunConfig cfg = load_config(config_path);
  if (!family.empty()) apply_config_line(cfg, "grid", "family", family);
  if (!costs.empty())
    apply_config_line(cfg, "backtest", "include_costs", costs);
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  cfg.output_dir = output_dir_override(cfg.output_dir);

  GridResult result = run_grid(cfg);
  write_grid_outputs(result, cfg);

  std::cout << "strategies: " << result.runs.size()
            << "  ok: " << (result.runs.size() - result.failures)
            << "  failed: " << result.failures << '\n';
  std::cout << "outputs under " << cfg.output_dir << '\n';
  if (result.failures > 0) {
    for (const auto& run : result.runs)
      if (!run.error.empty())
        std::cerr << run.spec.name() << ": " << run.error << '\n';
    return 1;
  }
  return 0;
}

int cmd_tests(const std::string& matrix_path, const std::string& alphas,
              std::uint64_t seed, const std::string& out_dir) {
  PerformanceMatrix matrix = read_matrix_csv(matrix_path);

  RunConfig cfg;
  cfg.alphas = parse_alpha_list(alphas);
  cfg.bootstrap.seed = seed;
  cfg.output_dir = output_dir_override(out_dir);
  std::filesystem::create_directories(cfg.output_dir);

  // Unit-root check per strategy column before the multiple-testing stage.
  {
    std::ofstream adf_out(cfg.output_dir + "/adf_tables.csv");
    const std::size_t T = matrix.days();
    for (std::size_t k = 0; k < matrix.strategies(); ++k) {
      std::vector<double> col(T);
      for (std::size_t t = 0; t < T; ++t) col[t] = matrix.at(k, t);
      std::vector<AdfResult> results;
      try {
        for (int lags : cfg.adf_lags) {
          AdfOptions opts;
          opts.lags = lags;
          results.push_back(adf_test(col, opts));
        }
      } catch (const std::exception& e) {
        // constant columns (strategies that never trade) have no regression
        adf_out << "series:" << matrix.ids[k] << "\nskipped:" << e.what()
                << "\n\n";
        continue;
      }
      write_adf_table(adf_out, matrix.ids[k], results);
      adf_out << '\n';
    }
  }

  TestsResult res = run_tests(cfg, matrix);
  write_spa_json(res.spa, res.step, matrix, {15, 30, 60},
                 cfg.output_dir + "/spa_results.json");

  for (const auto& [alpha, spa] : res.spa)
    std::cout << "SPA alpha=" << alpha << "  qstar=" << format_double(spa.qstar)
              << "  reject=" << (spa.reject ? "yes" : "no") << '\n';
  for (const auto& [alpha, step] : res.step)
    std::cout << "Step-SPA alpha=" << alpha << "  significant="
              << step.significant.size() << '\n';
  std::cout << "outputs under " << cfg.output_dir << '\n';
  return 0;
}

int cmd_select(const std::string& matrix_path, const std::string& pool_path,
               const std::string& out_dir) {
  PerformanceMatrix matrix = read_matrix_csv(matrix_path);

  std::vector<std::string> pool_ids;
  std::ifstream pool(pool_path);
  if (!pool) throw std::runtime_error("cannot open pool file: " + pool_path);
  std::string line;
  while (std::getline(pool, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (!line.empty() && line.front() != '#') pool_ids.push_back(line);
  }
  if (pool_ids.empty())
    throw std::runtime_error("pool file lists no strategies: " + pool_path);

  auto rows = run_select(matrix, pool_ids);

  std::string dir = output_dir_override(out_dir);
  std::filesystem::create_directories(dir);
  write_selector_csv(rows, dir + "/selector.csv");
  std::cout << rows.size() << " window plans written to " << dir
            << "/selector.csv\n";
  return 0;
}

int cmd_gbm(const std::string& out_path, int days, double sigma,
            std::uint64_t seed, int frequency, double price, double drift,
            int start_date) {
  GbmSpec spec;
  spec.days = days;
  spec.sigma = sigma;
  spec.seed = seed;
  spec.frequency = frequency;
  spec.initial_price = price;
  spec.drift = drift;
  spec.start_date = start_date;
  BarSeries series = gbm_series(spec);
  write_bars_csv(series, out_path);
  std::cout << series.size() << " bars over " << series.day_count()
            << " days written to " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backtesting and data-snooping tests for stationary "
               "technical trading rules"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a pipeline stage");
  run->require_subcommand(1);

  // run grid
  std::string config_path, family, costs, grid_out;
  auto* grid = run->add_subcommand("grid", "Backtest the strategy grid");
  grid->add_option("--config", config_path, "Run configuration file")
      ->required()
      ->check(CLI::ExistingFile);
  grid->add_option("--family", family, "Restrict to one family")
      ->check(CLI::IsMember({"MA", "KDJ", "BOLL"}));
  grid->add_option("--costs", costs, "Transaction costs on/off")
      ->check(CLI::IsMember({"on", "off"}));
  grid->add_option("--out", grid_out, "Output directory override");

  // run tests
  std::string matrix_path, alphas = "0.05,0.10", tests_out = "out";
  std::uint64_t seed = 0;
  auto* tests = run->add_subcommand(
      "tests", "ADF + SPA / Step-SPA on a daily performance matrix");
  tests->add_option("--matrix", matrix_path, "Daily performance matrix CSV")
      ->required()
      ->check(CLI::ExistingFile);
  tests->add_option("--alpha", alphas, "Comma-separated significance levels");
  tests->add_option("--seed", seed, "Bootstrap seed");
  tests->add_option("--out", tests_out, "Output directory");

  // run select
  std::string sel_matrix, pool_path, sel_out = "out";
  auto* select = run->add_subcommand(
      "select", "Rolling train/test selection over a strategy pool");
  select->add_option("--matrix", sel_matrix, "Daily performance matrix CSV")
      ->required()
      ->check(CLI::ExistingFile);
  select->add_option("--pool", pool_path, "File listing pool strategy ids")
      ->required()
      ->check(CLI::ExistingFile);
  select->add_option("--out", sel_out, "Output directory");

  // gen gbm
  auto* gen = app.add_subcommand("gen", "Generate synthetic data");
  gen->require_subcommand(1);
  std::string gbm_out;
  int days = 5, frequency = 15, start_date = 20120104;
  double sigma = 0.20, price = 3000.0, drift = 0.03;
  std::uint64_t gbm_seed = 42;
  auto* gbm = gen->add_subcommand("gbm", "Geometric Brownian motion bars");
  gbm->add_option("--out", gbm_out, "Output bar CSV")->required();
  gbm->add_option("--days", days, "Trading days")->check(CLI::PositiveNumber);
  gbm->add_option("--sigma", sigma, "Annualized volatility")
      ->check(CLI::NonNegativeNumber);
  gbm->add_option("--seed", gbm_seed, "RNG seed");
  gbm->add_option("--freq", frequency, "Bar frequency, seconds")
      ->check(CLI::PositiveNumber);
  gbm->add_option("--price", price, "Initial price")
      ->check(CLI::PositiveNumber);
  gbm->add_option("--drift", drift, "Annualized drift");
  gbm->add_option("--start", start_date, "First trading date, yyyymmdd");

  CLI11_PARSE(app, argc, argv);

  try {
    if (grid->parsed()) return cmd_grid(config_path, family, costs, grid_out);
    if (tests->parsed())
      return cmd_tests(matrix_path, alphas, seed, tests_out);
    if (select->parsed()) return cmd_select(sel_matrix, pool_path, sel_out);
    if (gbm->parsed())
      return cmd_gbm(gbm_out, days, sigma, gbm_seed, frequency, price, drift,
                     start_date);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

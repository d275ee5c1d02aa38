#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace statrules {

// K strategies x T days of daily performance d[k][t]; stored day-major so a
// bootstrap draw touches one contiguous row.
struct PerformanceMatrix {
  std::vector<std::string> ids;  // size K
  std::vector<int> dates;        // size T (may be empty for synthetic data)
  std::vector<double> data;      // size T*K, data[t*K + k]

  std::size_t strategies() const { return ids.size(); }
  std::size_t days() const {
    return ids.empty() ? 0 : data.size() / ids.size();
  }
  double at(std::size_t k, std::size_t t) const {
    return data[t * ids.size() + k];
  }
  double& at(std::size_t k, std::size_t t) {
    return data[t * ids.size() + k];
  }
};

struct BootstrapPlan {
  std::size_t B = 500;   // resample count
  double Q = 0.9;        // block continuation probability
  std::uint64_t seed = 0;
};

// B rows of T indices in [0, T). Row b starts uniform; each subsequent index
// continues the block (successor mod T) with probability Q, otherwise
// restarts uniform over all T. Each row has its own RNG stream derived from
// the master seed, so rows are reproducible independently and in parallel.
std::vector<std::uint32_t> stationary_bootstrap_indices(
    std::size_t T, std::size_t B, double Q, std::uint64_t seed);

// Bootstrap estimate of omega_k = sqrt(var(sqrt(n) * mean(d_k))) for one row.
double omega_hat(std::span<const double> row, const BootstrapPlan& plan);

struct SpaResult {
  double alpha = 0.0;
  double qstar = 0.0;  // max(0, (1-alpha) bootstrap quantile)
  bool reject = false;
  // sqrt(n) * mean_k / sd_k, NaN if excluded. Statistics are studentized by
  // the per-strategy sample standard deviation, and every bootstrap draw is
  // studentized by its own resample's standard deviation: the same scale
  // functional on both sides, while the block resampling of the means carries
  // the serial dependence. A long-run (HAC-bandwidth) studentizer would be far
  // noisier at these sample sizes and makes the max statistic over-reject.
  std::vector<double> tstats;
  std::vector<double> omega;  // bootstrap long-run scale, reported per strategy
  std::vector<double> mu;      // recentering terms
  std::vector<std::string> excluded;  // degenerate (zero-variance) strategies
};

SpaResult spa_test(const PerformanceMatrix& matrix, const BootstrapPlan& plan,
                   double alpha);

struct StepSpaResult {
  double alpha = 0.0;
  std::vector<std::string> significant;  // in removal order
  std::vector<double> thresholds;        // qstar at each removal
  std::vector<std::string> excluded;
};

// Stepwise SPA: repeatedly run SPA on the surviving universe (re-using the
// same resamples), removing the top strategy while it rejects.
StepSpaResult step_spa(const PerformanceMatrix& matrix,
                       const BootstrapPlan& plan, double alpha);

}  // namespace statrules

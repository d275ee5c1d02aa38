#include "statrules/spa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "rng.hpp"

namespace statrules {

using detail::Rng;
using detail::splitmix64;

std::vector<std::uint32_t> stationary_bootstrap_indices(std::size_t T,
                                                        std::size_t B,
                                                        double Q,
                                                        std::uint64_t seed) {
  if (T < 2) throw std::invalid_argument("bootstrap: T must be >= 2");
  if (B < 1) throw std::invalid_argument("bootstrap: B must be >= 1");
  if (!(Q >= 0.0 && Q < 1.0))
    throw std::invalid_argument("bootstrap: need 0 <= Q < 1");

  std::vector<std::uint32_t> out(B * T);
  const auto Tn = static_cast<std::uint32_t>(T);
  for (std::size_t b = 0; b < B; ++b) {
    Rng rng(splitmix64(seed ^ (0xb00757 + b)));
    std::uint32_t* row = out.data() + b * T;
    row[0] = rng.below(Tn);
    for (std::size_t t = 1; t < T; ++t) {
      if (rng.uniform() < Q)
        row[t] = row[t - 1] + 1 == Tn ? 0 : row[t - 1] + 1;
      else
        row[t] = rng.below(Tn);
    }
  }
  return out;
}

namespace {

// Shared state between spa_test and step_spa: resample means, per-strategy
// scale estimates and studentized statistics for one (matrix, plan) pair.
//
// Studentization uses the plain standard deviation — of the data for the
// observed statistics, of each resample for the bootstrap statistics. Using
// the same scale functional on both sides lets the block bootstrap reproduce
// the sampling distribution of the studentized mean under weak dependence,
// without the heavy small-sample noise of a long-run variance estimate at the
// plan's block bandwidth (which inflates the observed max statistic relative
// to its bootstrap null distribution and breaks size control).
struct SpaEngine {
  std::size_t K = 0, T = 0, B = 0;
  std::vector<double> mean;        // d-bar_k
  std::vector<double> scale;       // per-strategy sd, the studentizer
  std::vector<double> boot_means;  // B x K resample means
  std::vector<double> boot_sd;     // B x K resample sds
  std::vector<double> omega;       // bootstrap long-run scale, reported
  std::vector<double> mu;
  std::vector<double> tstat;  // NaN when the strategy is degenerate
  std::vector<std::uint8_t> valid;

  SpaEngine(const PerformanceMatrix& m, const BootstrapPlan& plan) {
    K = m.strategies();
    T = m.days();
    B = plan.B;
    if (K < 1 || T < 10)
      throw std::invalid_argument("spa: need K >= 1 and T >= 10");
    if (m.data.size() != K * T)
      throw std::invalid_argument("spa: incomplete performance matrix");

    mean.assign(K, 0.0);
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t k = 0; k < K; ++k) mean[k] += m.data[t * K + k];
    for (auto& v : mean) v /= static_cast<double>(T);

    const double n = static_cast<double>(T);
    scale.assign(K, 0.0);
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t k = 0; k < K; ++k) {
        double dev = m.data[t * K + k] - mean[k];
        scale[k] += dev * dev;
      }
    for (auto& v : scale) v = std::sqrt(v / n);

    auto idx = stationary_bootstrap_indices(T, B, plan.Q, plan.seed);
    boot_means.assign(B * K, 0.0);
    boot_sd.assign(B * K, 0.0);
    for (std::size_t b = 0; b < B; ++b) {
      double* acc = boot_means.data() + b * K;
      double* acc2 = boot_sd.data() + b * K;
      const std::uint32_t* row = idx.data() + b * T;
      for (std::size_t t = 0; t < T; ++t) {
        const double* day = m.data.data() + static_cast<std::size_t>(row[t]) * K;
        for (std::size_t k = 0; k < K; ++k) {
          acc[k] += day[k];
          acc2[k] += day[k] * day[k];
        }
      }
      for (std::size_t k = 0; k < K; ++k) {
        acc[k] /= n;
        acc2[k] = std::sqrt(std::max(acc2[k] / n - acc[k] * acc[k], 0.0));
      }
    }

    // omega_k^2 = n * var_b(bootstrap means)
    std::vector<double> bm_mean(K, 0.0);
    for (std::size_t b = 0; b < B; ++b)
      for (std::size_t k = 0; k < K; ++k) bm_mean[k] += boot_means[b * K + k];
    for (auto& v : bm_mean) v /= static_cast<double>(B);

    omega.assign(K, 0.0);
    for (std::size_t b = 0; b < B; ++b)
      for (std::size_t k = 0; k < K; ++k) {
        double dev = boot_means[b * K + k] - bm_mean[k];
        omega[k] += dev * dev;
      }
    for (auto& v : omega)
      v = std::sqrt(n * v / static_cast<double>(B));

    const double recenter_cut = std::sqrt(2.0 * std::log(std::log(n)));
    mu.assign(K, 0.0);
    tstat.assign(K, std::numeric_limits<double>::quiet_NaN());
    valid.assign(K, 0);
    for (std::size_t k = 0; k < K; ++k) {
      if (!(scale[k] > 0.0)) continue;
      valid[k] = 1;
      tstat[k] = std::sqrt(n) * mean[k] / scale[k];
      if (std::sqrt(n) * mean[k] <= -scale[k] * recenter_cut) mu[k] = mean[k];
    }
  }

  // (1-alpha) quantile of the bootstrap max statistic over `alive` strategies
  // (inf-definition), floored at zero.
  double qstar(const std::vector<std::uint8_t>& alive, double alpha) const {
    const double n = static_cast<double>(T);
    std::vector<double> stat(B, -std::numeric_limits<double>::infinity());
    for (std::size_t b = 0; b < B; ++b) {
      double mx = -std::numeric_limits<double>::infinity();
      const double* bm = boot_means.data() + b * K;
      const double* bs = boot_sd.data() + b * K;
      for (std::size_t k = 0; k < K; ++k) {
        if (!alive[k] || !valid[k]) continue;
        // a degenerate (constant) resample falls back to the data scale
        double s = bs[k] > 0.0 ? bs[k] : scale[k];
        double v = std::sqrt(n) * (bm[k] - mean[k] + mu[k]) / s;
        mx = std::max(mx, v);
      }
      stat[b] = mx;
    }
    std::sort(stat.begin(), stat.end());
    std::size_t rank = static_cast<std::size_t>(
        std::ceil((1.0 - alpha) * static_cast<double>(B)));
    rank = std::min(std::max<std::size_t>(rank, 1), B);
    double q = stat[rank - 1];
    return std::isfinite(q) ? std::max(0.0, q) : 0.0;
  }

  // Index of the largest t-stat among alive strategies, or K if none.
  std::size_t argmax(const std::vector<std::uint8_t>& alive) const {
    std::size_t best = K;
    for (std::size_t k = 0; k < K; ++k) {
      if (!alive[k] || !valid[k]) continue;
      if (best == K || tstat[k] > tstat[best]) best = k;
    }
    return best;
  }
};

void collect_excluded(const PerformanceMatrix& m, const SpaEngine& eng,
                      std::vector<std::string>& out) {
  for (std::size_t k = 0; k < eng.K; ++k)
    if (!eng.valid[k]) out.push_back(m.ids[k]);
}

}  // namespace

double omega_hat(std::span<const double> row, const BootstrapPlan& plan) {
  PerformanceMatrix m;
  m.ids = {"row"};
  m.data.assign(row.begin(), row.end());
  SpaEngine eng(m, plan);
  if (!eng.valid[0])
    throw std::invalid_argument("omega_hat: constant performance row");
  return eng.omega[0];
}

SpaResult spa_test(const PerformanceMatrix& matrix, const BootstrapPlan& plan,
                   double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("spa_test: alpha must lie in (0,1)");
  SpaEngine eng(matrix, plan);

  SpaResult res;
  res.alpha = alpha;
  res.tstats = eng.tstat;
  res.omega = eng.omega;
  res.mu = eng.mu;
  collect_excluded(matrix, eng, res.excluded);

  std::vector<std::uint8_t> alive(eng.K, 1);
  res.qstar = eng.qstar(alive, alpha);
  std::size_t top = eng.argmax(alive);
  res.reject = top < eng.K && eng.tstat[top] > res.qstar;
  return res;
}

StepSpaResult step_spa(const PerformanceMatrix& matrix,
                       const BootstrapPlan& plan, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("step_spa: alpha must lie in (0,1)");
  SpaEngine eng(matrix, plan);

  StepSpaResult res;
  res.alpha = alpha;
  collect_excluded(matrix, eng, res.excluded);

  std::vector<std::uint8_t> alive(eng.K, 1);
  for (;;) {
    std::size_t top = eng.argmax(alive);
    if (top == eng.K) break;
    double q = eng.qstar(alive, alpha);
    if (!(eng.tstat[top] > q)) break;
    res.significant.push_back(matrix.ids[top]);
    res.thresholds.push_back(q);
    alive[top] = 0;
  }
  return res;
}

}  // namespace statrules

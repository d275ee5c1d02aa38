#pragma once

#include <span>
#include <string>
#include <vector>

namespace statrules {

enum class AdfVariant {
  None,        // no drift, no trend
  Drift,       // drift only
  TrendDrift,  // drift + linear trend
};

std::string adf_variant_name(AdfVariant v);

struct AdfOptions {
  int lags = 0;
  AdfVariant variant = AdfVariant::TrendDrift;
  double alpha = 0.05;
};

// Fit of  dy_t = c + delta*t + gamma*y_{t-1} + sum_i beta_i*dy_{t-i} + e_t,
// unit root <=> gamma = 0. coeff/tstats hold [gamma, beta_1..beta_p].
struct AdfResult {
  AdfVariant variant = AdfVariant::TrendDrift;
  int lags = 0;
  std::vector<double> coeff;   // gamma, then lag coefficients
  std::vector<double> tstats;  // matching t-statistics
  double drift = 0.0;
  double trend = 0.0;
  double tstat = 0.0;   // the Dickey-Fuller statistic, t(gamma)
  double fstat = 0.0;   // joint test of the lag terms; +inf when lags = 0
  double aic = 0.0;
  double bic = 0.0;
  double loglik = 0.0;
  double pvalue = 1.0;  // clamped to [0.001, 0.999]
  bool reject = false;  // H: 1 iff pvalue < alpha
  std::size_t nobs = 0;
};

// Finite-sample critical value for the DF t-distribution, response-surface
// interpolated in 1/n; level is one of 0.01 / 0.05 / 0.10.
double adf_critical_value(AdfVariant v, double level, std::size_t nobs);

AdfResult adf_test(std::span<const double> series, const AdfOptions& opts = {});

}  // namespace statrules

#include "statrules/adf.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace statrules {

std::string adf_variant_name(AdfVariant v) {
  switch (v) {
    case AdfVariant::None: return "none";
    case AdfVariant::Drift: return "drift";
    case AdfVariant::TrendDrift: return "trend+drift";
  }
  return "?";
}

namespace {

// MacKinnon response-surface coefficients for the tau distributions:
// cv = b0 + b1/n + b2/n^2, rows ordered 1% / 5% / 10%.
struct Surface {
  double b0, b1, b2;
};
const Surface kNone[3] = {{-2.56574, -2.2358, -3.627},
                          {-1.94100, -0.2686, -3.365},
                          {-1.61682, 0.2656, -2.714}};
const Surface kDrift[3] = {{-3.43035, -6.5393, -16.786},
                           {-2.86154, -2.8903, -4.234},
                           {-2.56677, -1.5384, -2.809}};
const Surface kTrend[3] = {{-3.95877, -9.0531, -28.428},
                           {-3.41049, -4.3904, -9.036},
                           {-3.12705, -2.5856, -3.925}};
const double kLevels[3] = {0.01, 0.05, 0.10};

const Surface* surfaces_for(AdfVariant v) {
  switch (v) {
    case AdfVariant::None: return kNone;
    case AdfVariant::Drift: return kDrift;
    case AdfVariant::TrendDrift: return kTrend;
  }
  return kDrift;
}

double eval_surface(const Surface& s, std::size_t n) {
  double inv = 1.0 / static_cast<double>(n);
  return s.b0 + s.b1 * inv + s.b2 * inv * inv;
}

// Linear interpolation of the significance level across the three embedded
// critical values; extrapolated with the edge slopes and clamped to the
// table resolution.
double pvalue_from_tstat(AdfVariant v, double t, std::size_t n) {
  const Surface* s = surfaces_for(v);
  double cv[3];
  for (int i = 0; i < 3; ++i) cv[i] = eval_surface(s[i], n);
  double p;
  if (t <= cv[1])
    p = kLevels[0] + (t - cv[0]) * (kLevels[1] - kLevels[0]) / (cv[1] - cv[0]);
  else
    p = kLevels[1] + (t - cv[1]) * (kLevels[2] - kLevels[1]) / (cv[2] - cv[1]);
  return std::clamp(p, 0.001, 0.999);
}

}  // namespace

double adf_critical_value(AdfVariant v, double level, std::size_t nobs) {
  const Surface* s = surfaces_for(v);
  for (int i = 0; i < 3; ++i)
    if (std::abs(level - kLevels[i]) < 1e-12) return eval_surface(s[i], nobs);
  throw std::invalid_argument("adf_critical_value: level must be 1%/5%/10%");
}

AdfResult adf_test(std::span<const double> series, const AdfOptions& opts) {
  const int p = opts.lags;
  if (p < 0) throw std::invalid_argument("adf_test: negative lag order");
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(series.size());
  if (n <= p + 12)
    throw std::invalid_argument("adf_test: series too short for lag order");
  for (double v : series)
    if (!std::isfinite(v))
      throw std::invalid_argument("adf_test: non-finite value in series");

  // Observations t = p+1 .. n-1 (0-based): dy_t regressed on deterministic
  // terms, y_{t-1} and dy_{t-1}..dy_{t-p}.
  const std::ptrdiff_t T = n - 1 - p;
  int det = opts.variant == AdfVariant::None
                ? 0
                : (opts.variant == AdfVariant::Drift ? 1 : 2);
  const int k = det + 1 + p;

  Eigen::MatrixXd X(T, k);
  Eigen::VectorXd y(T);
  for (std::ptrdiff_t i = 0; i < T; ++i) {
    std::ptrdiff_t t = p + 1 + i;
    y(i) = series[t] - series[t - 1];
    int col = 0;
    if (det >= 1) X(i, col++) = 1.0;
    if (det >= 2) X(i, col++) = static_cast<double>(t);
    X(i, col++) = series[t - 1];
    for (int j = 1; j <= p; ++j)
      X(i, col++) = series[t - j] - series[t - j - 1];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  if (qr.rank() < k)
    throw std::runtime_error("adf_test: singular regression matrix");
  Eigen::VectorXd beta = qr.solve(y);
  Eigen::VectorXd resid = y - X * beta;
  const double rss = resid.squaredNorm();
  const double sigma2 = rss / static_cast<double>(T - k);

  Eigen::MatrixXd xtx_inv =
      (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(k, k));

  AdfResult res;
  res.variant = opts.variant;
  res.lags = p;
  res.nobs = static_cast<std::size_t>(T);
  if (det >= 1) res.drift = beta(0);
  if (det >= 2) res.trend = beta(1);
  for (int j = det; j < k; ++j) {
    res.coeff.push_back(beta(j));
    res.tstats.push_back(beta(j) / std::sqrt(sigma2 * xtx_inv(j, j)));
  }
  res.tstat = res.tstats.front();

  if (p == 0) {
    res.fstat = std::numeric_limits<double>::infinity();
  } else {
    // Joint F-test of the lagged difference terms against the p = 0 model
    // on the same observations.
    Eigen::MatrixXd Xr = X.leftCols(det + 1);
    Eigen::VectorXd beta_r = Xr.colPivHouseholderQr().solve(y);
    double rss_r = (y - Xr * beta_r).squaredNorm();
    res.fstat = ((rss_r - rss) / p) / (rss / static_cast<double>(T - k));
  }

  const double two_pi = 2.0 * std::numbers::pi;
  res.loglik =
      -0.5 * static_cast<double>(T) * (std::log(two_pi * rss / T) + 1.0);
  res.aic = -2.0 * res.loglik + 2.0 * k;
  res.bic = -2.0 * res.loglik + k * std::log(static_cast<double>(T));

  res.pvalue = pvalue_from_tstat(opts.variant, res.tstat, res.nobs);
  res.reject = res.pvalue < opts.alpha;
  return res;
}

}  // namespace statrules

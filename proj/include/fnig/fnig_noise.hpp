#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fnig/fnig_analytics.hpp"

namespace fnig {

/// Parameters of the increment process Y_eta(t) = X(t+eta) - X(t).
struct NoiseParams {
  double eta;
  FnigParams base;

  void validate() const {
    base.validate();
    if (!(eta > 0.0)) throw std::domain_error("NoiseParams: requires eta > 0");
  }
};

/// An observed noise series (W_j or sgn W_j) at spacing eta.
struct SeriesSample {
  std::vector<double> values;
  double spacing = 1.0;
};

namespace detail {

inline double noise_pref(const FnigParams& p) {
  return p.sigma2 / std::sqrt(2.0 * kPi) * p.alpha *
         std::pow(p.alpha / p.beta, 2.0 * p.H - 0.5);
}

}  // namespace detail

/// Covariance of the stationary increment process: a function of |t - s|
/// only. The diagonal is E[X(eta)]^2 = abs_moment(2, eta).
inline double noise_cov(double t, double s, const NoiseParams& np) {
  np.validate();
  if (!(t >= 0.0 && s >= 0.0)) throw std::domain_error("noise_cov: requires t, s >= 0");
  if (!(np.base.beta > 0.0)) throw std::domain_error("noise_cov: requires beta > 0");
  if (t == s) return abs_moment(2.0, np.eta, np.base);
  const double ab = np.base.alpha * np.base.beta;
  const double H = np.base.H;
  const double d = t - s;
  return detail::noise_pref(np.base) *
         (detail::cov_term(std::abs(d + np.eta), H, ab) +
          detail::cov_term(std::abs(-d + np.eta), H, ab) -
          2.0 * detail::cov_term(std::abs(d), H, ab));
}

/// Autocovariance gamma(k) of the FNIG noise W_j at integer lag k >= 1;
/// gamma(0) is the variance abs_moment(2, eta). The k = 1 case uses the
/// convention that the eta*(k-1) = 0 term vanishes (limit of the Bessel
/// product), consistent with noise_cov at |s - t + eta| = 0.
inline double noise_acf(long k, const NoiseParams& np) {
  np.validate();
  if (k < 0) throw std::domain_error("noise_acf: requires k >= 0");
  if (!(np.base.beta > 0.0)) throw std::domain_error("noise_acf: requires beta > 0");
  if (k == 0) return abs_moment(2.0, np.eta, np.base);
  const double ab = np.base.alpha * np.base.beta;
  const double H = np.base.H;
  const double e = np.eta;
  return detail::noise_pref(np.base) *
         (detail::cov_term(e * (k + 1), H, ab) +
          detail::cov_term(e * (k - 1), H, ab) -
          2.0 * detail::cov_term(e * k, H, ab));
}

/// Long-range-dependence asymptote
/// sigma^2 (alpha/beta)^{2H} eta^{2H} H (2H-1) k^{2H-2}; gamma(k) ~ this
/// as k grows, and its divergent partial sums for H > 1/2 are the LRD
/// property.
inline double lrd_asymptote(long k, const NoiseParams& np) {
  np.validate();
  if (k < 1) throw std::domain_error("lrd_asymptote: requires k >= 1");
  const double H = np.base.H;
  return np.base.sigma2 * std::pow(np.base.alpha / np.base.beta, 2.0 * H) *
         std::pow(np.eta, 2.0 * H) * H * (2.0 * H - 1.0) *
         std::pow(static_cast<double>(k), 2.0 * H - 2.0);
}

/// Covariance of the Lamperti transform W(t) = t^H Y_eta(ln t): the
/// (st)^H-prefactored three-term expression in ln(t/s). Self-similar with
/// exponent H; the diagonal is t^{2H} abs_moment(2, eta).
inline double lamperti_cov(double t, double s, const NoiseParams& np) {
  np.validate();
  if (!(t > 0.0 && s > 0.0))
    throw std::domain_error("lamperti_cov: requires t, s > 0");
  if (!(np.base.beta > 0.0))
    throw std::domain_error("lamperti_cov: requires beta > 0");
  const double H = np.base.H;
  if (t == s) return std::pow(t, 2.0 * H) * abs_moment(2.0, np.eta, np.base);
  const double ab = np.base.alpha * np.base.beta;
  const double r = std::log(t / s);
  return detail::noise_pref(np.base) * std::pow(s * t, H) *
         (detail::cov_term(std::abs(r + np.eta), H, ab) +
          detail::cov_term(std::abs(r - np.eta), H, ab) -
          2.0 * detail::cov_term(std::abs(r), H, ab));
}

/// sgn(x) with sgn(0) = 0.
inline double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

/// Biased (1/N) sample autocovariance of the sign sequence sgn W_j at
/// lag k, centred at the sign mean.
inline double sign_acf_estimate(const SeriesSample& series, std::size_t k) {
  const std::size_t n = series.values.size();
  if (n == 0) throw std::domain_error("sign_acf_estimate: empty series");
  if (k >= n) throw std::domain_error("sign_acf_estimate: lag exceeds series length");
  std::vector<double> s(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = sgn(series.values[i]);
    mean += s[i];
  }
  mean /= static_cast<double>(n);
  double acc = 0.0;
  for (std::size_t i = 0; i + k < n; ++i)
    acc += (s[i] - mean) * (s[i + k] - mean);
  return acc / static_cast<double>(n);
}

}  // namespace fnig

#pragma once

#include <cmath>
#include <stdexcept>

#include "fnig/special_fn.hpp"

namespace fnig {

/// Fractional Brownian motion parameters: Hurst H in (0,1) and
/// sigma2 = Var B_H(1) > 0.
struct FbmParams {
  double H;
  double sigma2;

  void validate() const {
    if (!(H > 0.0 && H < 1.0))
      throw std::domain_error("FbmParams: requires 0 < H < 1");
    if (!(sigma2 > 0.0))
      throw std::domain_error("FbmParams: requires sigma2 > 0");
  }
};

/// n-th order FBM parameters: order n >= 1, H in (n-1, n), and the
/// increment step l > 0 used by the noise kernel.
struct NFbmParams {
  int n;
  double H;
  double l;

  void validate() const {
    if (n < 1) throw std::domain_error("NFbmParams: requires n >= 1");
    if (!(H > n - 1.0 && H < n))
      throw std::domain_error("NFbmParams: requires n-1 < H < n");
    if (!(l > 0.0)) throw std::domain_error("NFbmParams: requires l > 0");
  }
};

namespace detail {

// Generalized binomial coefficient binom(x, k) for x - k + 1 > 0, k >= 0.
// All arguments reached from the n-FBM formulas stay in this positive
// domain, so plain log-gamma suffices.
inline double binom_real(double x, int k) {
  if (k < 0) throw std::domain_error("binom_real: requires k >= 0");
  if (k == 0) return 1.0;
  return std::exp(log_gamma(x + 1.0) - log_gamma(k + 1.0) -
                  log_gamma(x - k + 1.0));
}

// |t - s| with near-coincident times collapsed to exactly zero, so that
// |t-s|^{2H} cannot blow up in relative error when a subordinator grid
// produces near-ties.
inline double gap(double t, double s) {
  const double d = std::abs(t - s);
  if (d < 1e-14 * std::max(std::abs(t), std::abs(s))) return 0.0;
  return d;
}

}  // namespace detail

/// FBM covariance (sigma^2/2)(t^{2H} + s^{2H} - |t-s|^{2H}), t, s >= 0.
inline double fbm_cov(double t, double s, const FbmParams& p) {
  p.validate();
  if (!(t >= 0.0 && s >= 0.0))
    throw std::domain_error("fbm_cov: requires t, s >= 0");
  const double twoH = 2.0 * p.H;
  const double d = detail::gap(t, s);
  return 0.5 * p.sigma2 *
         (std::pow(t, twoH) + std::pow(s, twoH) - std::pow(d, twoH));
}

/// C_H^n = 1 / (Gamma(2H+1) |sin(pi H)|) for non-integer H in (n-1, n).
inline double c_coeff(int n, double H) {
  if (n < 1) throw std::domain_error("c_coeff: requires n >= 1");
  if (!(H > n - 1.0 && H < n))
    throw std::domain_error("c_coeff: requires n-1 < H < n");
  const double s = std::abs(std::sin(kPi * H));
  if (s == 0.0 || H == std::floor(H))
    throw std::domain_error("c_coeff: integer H not allowed");
  return std::exp(-log_gamma(2.0 * H + 1.0)) / s;
}

/// n-FBM covariance G_{H,n}(t, s) for t, s > 0. By convention the
/// covariance is 0 when either time is 0 (the process is pinned there);
/// that value is also the continuous limit of the formula.
inline double nfbm_cov(double t, double s, const NFbmParams& p) {
  p.validate();
  if (!(t >= 0.0 && s >= 0.0))
    throw std::domain_error("nfbm_cov: requires t, s >= 0");
  if (t == 0.0 || s == 0.0) return 0.0;
  const double twoH = 2.0 * p.H;
  const double d = detail::gap(t, s);
  double acc = std::pow(d, twoH);
  double sign = 1.0;
  for (int j = 0; j < p.n; ++j) {
    acc -= sign * detail::binom_real(twoH, j) *
           (std::pow(t / s, j) * std::pow(s, twoH) +
            std::pow(s / t, j) * std::pow(t, twoH));
    sign = -sign;
  }
  const double parity = p.n % 2 == 0 ? 1.0 : -1.0;
  return parity * 0.5 * c_coeff(p.n, p.H) * acc;
}

/// Variance of n-FBM: C_H^n binom(2H-1, n-1) t^{2H}.
inline double nfbm_var(double t, const NFbmParams& p) {
  p.validate();
  if (!(t > 0.0)) throw std::domain_error("nfbm_var: requires t > 0");
  return c_coeff(p.n, p.H) * detail::binom_real(2.0 * p.H - 1.0, p.n - 1) *
         std::pow(t, 2.0 * p.H);
}

/// Covariance of n-th order fractional Gaussian noise at lag tau > 0 with
/// step l: (-1)^n (C_H^n/2) sum_{j=-n..n} (-1)^j binom(2n, n+j) |tau+jl|^{2H}.
inline double nfgn_cov(double tau, const NFbmParams& p) {
  p.validate();
  if (!(tau > 0.0)) throw std::domain_error("nfgn_cov: requires tau > 0");
  const double twoH = 2.0 * p.H;
  double acc = 0.0;
  for (int j = -p.n; j <= p.n; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    acc += sign * detail::binom_real(2.0 * p.n, p.n + j) *
           std::pow(std::abs(tau + j * p.l), twoH);
  }
  const double parity = p.n % 2 == 0 ? 1.0 : -1.0;
  return parity * 0.5 * c_coeff(p.n, p.H) * acc;
}

}  // namespace fnig

#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fnig/fbm_kernels.hpp"
#include "fnig/quadrature.hpp"
#include "fnig/special_fn.hpp"

namespace fnig {

/// FNIG parameter vector theta = (alpha, beta, sigma2, H).
/// beta = 0 is permitted only together with H = 1/2 (the Cauchy case),
/// matching the process definition.
struct FnigParams {
  double alpha;
  double beta;
  double sigma2;
  double H;

  void validate() const {
    if (!(alpha > 0.0)) throw std::domain_error("FnigParams: requires alpha > 0");
    if (!(beta >= 0.0)) throw std::domain_error("FnigParams: requires beta >= 0");
    if (!(sigma2 > 0.0)) throw std::domain_error("FnigParams: requires sigma2 > 0");
    if (!(H > 0.0 && H < 1.0))
      throw std::domain_error("FnigParams: requires 0 < H < 1");
    if (beta == 0.0 && H != 0.5)
      throw std::domain_error("FnigParams: beta = 0 requires H = 1/2");
  }

  double sigma() const { return std::sqrt(sigma2); }
};

namespace detail {

// u^{2H+1/2} e^{ab u} K_{1/2-2H}(ab u), the recurring covariance building
// block of the FNIG formulas, continued by its limit 0 at u = 0.
inline double cov_term(double u, double H, double ab) {
  if (u == 0.0) return 0.0;
  return std::pow(u, 2.0 * H + 0.5) * bessel_k_scaled(0.5 - 2.0 * H, ab * u);
}

}  // namespace detail

/// Cauchy density alpha sigma t / (pi (x^2 + alpha^2 sigma^2 t^2)),
/// the beta = 0, H = 1/2 marginal.
inline double cauchy_density(double x, double t, double alpha, double sigma) {
  if (!(t > 0.0)) throw std::domain_error("cauchy_density: requires t > 0");
  if (!(alpha > 0.0) || !(sigma > 0.0))
    throw std::domain_error("cauchy_density: requires alpha, sigma > 0");
  const double scale = alpha * sigma * t;
  return scale / (kPi * (x * x + scale * scale));
}

/// Closed-form marginal density at H = 1/2 (the NIG special case):
/// (alpha beta t / pi) e^{alpha beta t} (x^2 + alpha^2 t^2 sigma^2)^{-1/2}
///   K_1((beta/sigma) sqrt(x^2 + alpha^2 t^2 sigma^2)).
inline double nig_density_closed(double x, double t, const FnigParams& p) {
  p.validate();
  if (p.H != 0.5) throw std::domain_error("nig_density_closed: requires H = 1/2");
  if (!(p.beta > 0.0)) throw std::domain_error("nig_density_closed: requires beta > 0");
  if (!(t > 0.0)) throw std::domain_error("nig_density_closed: requires t > 0");
  const double sigma = p.sigma();
  const double r = std::sqrt(x * x + p.alpha * p.alpha * t * t * p.sigma2);
  const double w = p.beta / sigma * r;
  // e^{abt} K_1(w) = (e^w K_1(w)) e^{abt - w}; abt <= w so the exponent
  // is nonpositive and the product cannot overflow.
  return p.alpha * p.beta * t / kPi / r * bessel_k_scaled(1.0, w) *
         std::exp(p.alpha * p.beta * t - w);
}

/// Marginal density of X(t) by adaptive quadrature of the mixture
/// integral, with the substitution y = e^u and the e^{alpha beta t}
/// prefactor folded into the (then nonpositive) exponent. Relative
/// tolerance 1e-9. beta = 0 routes to the Cauchy closed form.
inline double fnig_density(double x, double t, const FnigParams& p) {
  p.validate();
  if (!(t > 0.0)) throw std::domain_error("fnig_density: requires t > 0");
  if (p.beta == 0.0) return cauchy_density(x, t, p.alpha, p.sigma());

  const double a = p.alpha, b = p.beta, H = p.H;
  const double x2s = x * x / p.sigma2;
  const double at = a * t;
  const double abt = a * b * t;
  // log of the integrand in u; strictly concave (every exponential term
  // is concave and the rest is linear).
  const auto log_g = [=](double u) {
    return abt - (H + 0.5) * u -
           0.5 * (x2s * std::exp(-2.0 * H * u) + at * at * std::exp(-u) +
                  b * b * std::exp(u));
  };
  // The exponent is strictly concave in u. The x^2 term only pushes the
  // peak right, so the bracket below always contains it: the left edge
  // covers the small-abt regime, the right edge the large-|x| regime.
  const double lo = std::min(std::log(at / b), 2.0 * std::log(at)) - 60.0;
  const double hi = std::max(std::log(at / b), std::log1p(x2s)) + 60.0;
  auto [log_peak, integral] = detail::integrate_log_concave(log_g, lo, hi, 1e-9);
  const double log_pref = std::log(at / (2.0 * kPi * p.sigma()));
  // Assembled in log space; underflows gracefully to 0 far in the tails.
  return std::exp(log_pref + log_peak) * integral;
}

/// Absolute moment E|X(t)|^q from the closed form
/// c_q sqrt(2/pi) alpha (alpha/beta)^{qH-1/2} t^{qH+1/2} e^{abt} K_{1/2-qH}(abt),
/// c_q = sqrt(2^q/pi) sigma^q Gamma((1+q)/2). Scaled Bessel path, so finite
/// for alpha beta t up to 1e6.
inline double abs_moment(double q, double t, const FnigParams& p) {
  p.validate();
  if (!(q > 0.0)) throw std::domain_error("abs_moment: requires q > 0");
  if (!(t > 0.0)) throw std::domain_error("abs_moment: requires t > 0");
  if (!(p.beta > 0.0)) throw std::domain_error("abs_moment: requires beta > 0");
  const double abt = p.alpha * p.beta * t;
  const double log_cq = 0.5 * q * std::log(2.0) - 0.5 * std::log(kPi) +
                        0.5 * q * std::log(p.sigma2) + log_gamma(0.5 * (1.0 + q));
  const double log_rest = 0.5 * (std::log(2.0) - std::log(kPi)) +
                          std::log(p.alpha) +
                          (q * p.H - 0.5) * std::log(p.alpha / p.beta) +
                          (q * p.H + 0.5) * std::log(t);
  return std::exp(log_cq + log_rest) * bessel_k_scaled(0.5 - q * p.H, abt);
}

/// Kurtosis beta_2(t) = 3 sqrt(pi/2) (abt)^{-1/2} K_{1/2-4H}(abt) / K_{1/2-2H}(abt)^2
/// with the exponential factors cancelled analytically through the scaled
/// Bessel values. Always > 3 and decreasing to 3 as t grows.
inline double kurtosis(double t, const FnigParams& p) {
  p.validate();
  if (!(t > 0.0)) throw std::domain_error("kurtosis: requires t > 0");
  if (!(p.beta > 0.0)) throw std::domain_error("kurtosis: requires beta > 0");
  const double abt = p.alpha * p.beta * t;
  const double s4 = bessel_k_scaled(0.5 - 4.0 * p.H, abt);
  const double s2 = bessel_k_scaled(0.5 - 2.0 * p.H, abt);
  return 3.0 * std::sqrt(kPi / 2.0) / std::sqrt(abt) * s4 / (s2 * s2);
}

/// Covariance E X(t) X(s). Returns 0 when either time is 0 (X(0) = 0) and
/// the variance abs_moment(2, t) on the diagonal.
inline double fnig_cov(double t, double s, const FnigParams& p) {
  p.validate();
  if (!(t >= 0.0 && s >= 0.0)) throw std::domain_error("fnig_cov: requires t, s >= 0");
  if (!(p.beta > 0.0)) throw std::domain_error("fnig_cov: requires beta > 0");
  if (t == 0.0 || s == 0.0) return 0.0;
  if (t == s) return abs_moment(2.0, t, p);
  const double ab = p.alpha * p.beta;
  const double pref = p.sigma2 / std::sqrt(2.0 * kPi) * p.alpha *
                      std::pow(p.alpha / p.beta, 2.0 * p.H - 0.5);
  return pref * (detail::cov_term(t, p.H, ab) + detail::cov_term(s, p.H, ab) -
                 detail::cov_term(std::abs(t - s), p.H, ab));
}

/// Ratio F(s, t) = E X(t)X(s) / E B_H(t)B_H(s) under the hypothesis
/// alpha = beta of the asymptotic-equivalence proposition.
inline double cov_ratio(double t, double s, const FnigParams& p) {
  p.validate();
  if (p.alpha != p.beta)
    throw std::domain_error("cov_ratio: requires alpha = beta");
  if (!(s > 0.0 && t > s))
    throw std::domain_error("cov_ratio: requires 0 < s < t");
  const FbmParams fbm{p.H, p.sigma2};
  return fnig_cov(t, s, p) / fbm_cov(t, s, fbm);
}

}  // namespace fnig

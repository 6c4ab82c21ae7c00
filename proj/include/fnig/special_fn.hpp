#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <numbers>
#include <utility>

namespace fnig {

inline constexpr double kPi = std::numbers::pi;

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
  if (!(x > 0.0))
    throw std::domain_error("log_gamma: requires x > 0");
  return std::lgamma(x);
}

namespace detail {

// Taylor coefficients of 1/Gamma(1+x) = 1 + c[0] x + c[1] x^2 + ...
inline constexpr double inv_gamma_taylor[9] = {
    0.57721566490153286061,  -0.65587807152025388108,
    -0.04200263503409523553, 0.16653861138229148950,
    -0.04219773455554433675, -0.00962197152787697356,
    0.00721894324666309954,  -0.00116516759185906511,
    -0.00021524167411495097};

// Temme's auxiliary gammas for |mu| <= 1/2:
//   gam1 = [1/Gamma(1-mu) - 1/Gamma(1+mu)] / (2 mu)   (limit -EulerGamma at mu=0)
//   gam2 = [1/Gamma(1-mu) + 1/Gamma(1+mu)] / 2
// The direct difference cancels catastrophically for small mu, so a Taylor
// series in mu^2 takes over below |mu| = 0.01.
inline void temme_gammas(double mu, double& gam1, double& gam2, double& gpl,
                         double& gmi) {
  gpl = std::exp(-std::lgamma(1.0 + mu));  // 1/Gamma(1+mu)
  gmi = std::exp(-std::lgamma(1.0 - mu));  // 1/Gamma(1-mu)
  gam2 = 0.5 * (gmi + gpl);
  if (std::abs(mu) < 0.01) {
    const double m2 = mu * mu;
    const double* c = inv_gamma_taylor;
    gam1 = -(c[0] + m2 * (c[2] + m2 * (c[4] + m2 * (c[6] + m2 * c[8]))));
  } else {
    gam1 = (gmi - gpl) / (2.0 * mu);
  }
}

// Temme series for omega <= 2, |mu| <= 1/2.
// Returns the scaled pair (e^omega K_mu, e^omega K_{mu+1}).
inline std::pair<double, double> bessel_k_scaled_small(double mu, double x) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  const double x_half = 0.5 * x;
  const double pimu = kPi * mu;
  const double fact = std::abs(pimu) < kEps ? 1.0 : pimu / std::sin(pimu);
  const double d = -std::log(x_half);
  const double e1 = mu * d;
  const double fact2 = std::abs(e1) < kEps ? 1.0 : std::sinh(e1) / e1;
  double gam1, gam2, gpl, gmi;
  temme_gammas(mu, gam1, gam2, gpl, gmi);

  double ff = fact * (gam1 * std::cosh(e1) + gam2 * fact2 * d);
  double sum = ff;
  const double e = std::exp(e1);
  double p = 0.5 * e / gpl;
  double q = 0.5 / (e * gmi);
  double c = 1.0;
  const double d2 = x_half * x_half;
  double sum1 = p;
  for (int i = 1; i < 1000; ++i) {
    ff = (i * ff + p + q) / (i * i - mu * mu);
    c *= d2 / i;
    p /= (i - mu);
    q /= (i + mu);
    const double del = c * ff;
    sum += del;
    sum1 += c * (p - i * ff);
    if (std::abs(del) < std::abs(sum) * kEps) break;
  }
  const double ex = std::exp(x);
  return {sum * ex, sum1 * (2.0 / x) * ex};
}

// Steed's continued fraction CF2 for omega > 2, |mu| <= 1/2.
// Computes the scaled pair directly (no exp(-omega) factor).
inline std::pair<double, double> bessel_k_scaled_large(double mu, double x) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d, delh = d;
  double q1 = 0.0, q2 = 1.0;
  const double a1 = 0.25 - mu * mu;
  double q = a1, c = a1, a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 10000; ++i) {
    a -= 2 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  const double kmu = std::sqrt(kPi / (2.0 * x)) / s;
  const double kmu1 = kmu * (mu + x + 0.5 - h) / x;
  return {kmu, kmu1};
}

}  // namespace detail

/// e^omega K_nu(omega), the overflow-safe scaled modified Bessel function of
/// the third kind. Finite for omega up to at least 1e6; symmetric in nu.
inline double bessel_k_scaled(double nu, double omega) {
  if (!std::isfinite(nu) || !std::isfinite(omega))
    throw std::domain_error("bessel_k_scaled: non-finite argument");
  if (!(omega > 0.0))
    throw std::domain_error("bessel_k_scaled: requires omega > 0");
  nu = std::abs(nu);  // K_{-nu} = K_nu
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;  // in [-1/2, 1/2]
  auto [km, kp] = omega <= 2.0 ? detail::bessel_k_scaled_small(mu, omega)
                               : detail::bessel_k_scaled_large(mu, omega);
  // Upward recurrence K_{m+1} = K_{m-1} + (2m/x) K_m, stable for K.
  for (int l = 1; l <= nl; ++l) {
    const double knext = km + 2.0 * (mu + l) / omega * kp;
    km = kp;
    kp = knext;
  }
  return km;
}

/// K_nu(omega). May underflow to 0 for large omega; that is a documented
/// property of the unscaled value, not an error.
inline double bessel_k(double nu, double omega) {
  return std::exp(-omega) * bessel_k_scaled(nu, omega);
}

/// Large-omega asymptotic expansion of K_nu(omega) with `terms` terms of the
/// series in mu = 4 nu^2 (the leading 1 counts as the first term). Divergent
/// for fixed omega, so no accuracy contract at small omega.
inline double bessel_k_asymptotic(double nu, double omega, int terms) {
  if (terms < 1)
    throw std::domain_error("bessel_k_asymptotic: requires terms >= 1");
  if (!(omega > 0.0))
    throw std::domain_error("bessel_k_asymptotic: requires omega > 0");
  const double mu = 4.0 * nu * nu;
  double term = 1.0, sum = 1.0;
  for (int j = 1; j < terms; ++j) {
    const double odd = 2.0 * j - 1.0;
    term *= (mu - odd * odd) / (j * 8.0 * omega);
    sum += term;
  }
  return std::sqrt(kPi / 2.0) * std::exp(-omega) / std::sqrt(omega) * sum;
}

}  // namespace fnig

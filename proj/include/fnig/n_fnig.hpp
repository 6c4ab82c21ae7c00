#pragma once

#include <cmath>
#include <stdexcept>

#include "fnig/fbm_kernels.hpp"
#include "fnig/ig.hpp"
#include "fnig/quadrature.hpp"
#include "fnig/special_fn.hpp"

namespace fnig {

/// n-th order FNIG parameters: order n >= 1, H in (n-1, n), fixed noise
/// step eta > 0.
struct NFnigParams {
  int n;
  double alpha;
  double beta;
  double H;
  double eta;

  void validate() const {
    if (n < 1) throw std::domain_error("NFnigParams: requires n >= 1");
    if (!(alpha > 0.0)) throw std::domain_error("NFnigParams: requires alpha > 0");
    if (!(beta > 0.0)) throw std::domain_error("NFnigParams: requires beta > 0");
    if (!(H > n - 1.0 && H < n))
      throw std::domain_error("NFnigParams: requires n-1 < H < n");
    if (!(eta > 0.0)) throw std::domain_error("NFnigParams: requires eta > 0");
  }
};

namespace detail {

// E G(u)^r via the scaled-Bessel closed form, continued by 0 at u = 0
// (valid for r > 0, where the u^{r+1/2} power dominates the K blowup).
inline double ig_power_mean(double r, double u, double alpha, double beta) {
  if (u == 0.0) return 0.0;
  const double ab = alpha * beta;
  return std::sqrt(2.0 / kPi) * alpha * std::pow(alpha / beta, r - 0.5) *
         std::pow(u, r + 0.5) * bessel_k_scaled(r - 0.5, ab * u);
}

// Log-exponent of the IG(a, b) density at y = e^v, including the volume
// element dy = e^v dv.
inline double ig_log_density_exp(double v, double a, double b) {
  return a * b - 0.5 * v - 0.5 * (a * a * std::exp(-v) + b * b * std::exp(v));
}

// E[G(s)^j G(t)^{2H-j}] for 0 < s < t and j >= 1: the integer power sits
// on the *smaller* time, so no binomial expansion over increments exists
// and the expectation is taken by iterated adaptive quadrature over the
// joint density of (G(s), G(t) - G(s)).
inline double cross_moment_minor(int j, double t, double s,
                                 const NFnigParams& p) {
  const double r = 2.0 * p.H - j;  // exponent on G(t)
  const double a_inner = p.alpha * (t - s), b_inner = p.beta;
  const double a_outer = p.alpha * s, b_outer = p.beta;
  const double log_pref = std::log(a_outer) + std::log(a_inner) -
                          std::log(2.0 * kPi);

  // Center of the IG exponent in log space (closed form of the stationary
  // point of ig_log_density_exp without the polynomial factor).
  const auto ig_center = [](double a, double b) {
    const double w = (-0.5 + std::sqrt(0.25 + a * a * b * b)) / (b * b);
    return std::log(std::max(w, 1e-300));
  };

  const auto inner_value = [&](double a_val) {
    // E-like integral over b of (a + b)^r f_inner(b), b = e^v.
    const auto log_g = [&](double v) {
      return r * std::log(a_val + std::exp(v)) +
             ig_log_density_exp(v, a_inner, b_inner);
    };
    auto [lp, integral] = integrate_log_scan(
        log_g, ig_center(a_inner, b_inner), 90.0, 1e-9);
    return std::make_pair(lp, integral);
  };

  const auto log_outer = [&](double u) {
    const double a_val = std::exp(u);
    auto [lp, integral] = inner_value(a_val);
    return j * u + ig_log_density_exp(u, a_outer, b_outer) + lp +
           std::log(integral);
  };
  auto [lp, integral] =
      integrate_log_scan(log_outer, ig_center(a_outer, b_outer), 90.0, 1e-8);
  return std::exp(log_pref + lp) * integral;
}

}  // namespace detail

/// IG cross moment E G(t)^j G(s)^{2H-j} for 0 < s < t and integer
/// 0 <= j <= n-1, from the binomial expansion over the independent
/// increment G(t) - G(s):
///   (2/pi) alpha beta (alpha/beta)^{2H} sum_k binom(j,k)
///     e^{ab(t-s)} K_{k-1/2}(ab(t-s)) e^{abs} K_{2H-k-1/2}(ab s)
///     (t-s)^{k+1/2} s^{2H-k+1/2},
/// with the e^{abt} factor split across the two scaled Bessel terms.
inline double ig_cross_moment(int j, double t, double s,
                              const NFnigParams& p) {
  p.validate();
  if (j < 0 || j > p.n - 1)
    throw std::domain_error("ig_cross_moment: requires 0 <= j <= n-1");
  if (!(s > 0.0 && s < t))
    throw std::domain_error("ig_cross_moment: requires 0 < s < t");
  const double ab = p.alpha * p.beta;
  const double d = t - s;
  const double twoH = 2.0 * p.H;
  double sum = 0.0;
  for (int k = 0; k <= j; ++k) {
    const double term = detail::binom_real(j, k) *
                        bessel_k_scaled(k - 0.5, ab * d) *
                        bessel_k_scaled(twoH - k - 0.5, ab * s) *
                        std::pow(d, k + 0.5) * std::pow(s, twoH - k + 0.5);
    sum += term;
  }
  return 2.0 / kPi * ab * std::pow(p.alpha / p.beta, twoH) * sum;
}

/// Covariance E X^n(t) X^n(s) of the n-th order FNIG process, i.e. the
/// expectation of the n-FBM kernel over the subordinator pair:
///   (-1)^n (C_H^n/2) [ E G(|t-s|)^{2H}
///     - sum_{j<n} (-1)^j binom(2H,j) (E G(max)^j G(min)^{2H-j}
///                                     + E G(min)^j G(max)^{2H-j}) ].
/// The first member of each pair is ig_cross_moment; the second has no
/// closed form for j >= 1 and is evaluated by quadrature.
inline double nfnig_cov(double t, double s, const NFnigParams& p) {
  p.validate();
  if (!(t > 0.0 && s > 0.0))
    throw std::domain_error("nfnig_cov: requires t, s > 0");
  const double hi = std::max(t, s), lo = std::min(t, s);
  const double d = detail::gap(hi, lo);
  const double twoH = 2.0 * p.H;

  const double head = detail::ig_power_mean(twoH, d, p.alpha, p.beta);
  double tail = 0.0;
  double sign = 1.0;
  for (int j = 0; j < p.n; ++j) {
    double pair;
    if (d == 0.0) {
      // Both members of the pair collapse to E G(t)^{2H}.
      pair = 2.0 * detail::ig_power_mean(twoH, hi, p.alpha, p.beta);
    } else {
      const double major = ig_cross_moment(j, hi, lo, p);
      const double minor =
          j == 0 ? detail::ig_power_mean(twoH, hi, p.alpha, p.beta)
                 : detail::cross_moment_minor(j, hi, lo, p);
      pair = major + minor;
    }
    tail += sign * detail::binom_real(twoH, j) * pair;
    sign = -sign;
  }
  const double parity = p.n % 2 == 0 ? 1.0 : -1.0;
  return parity * 0.5 * c_coeff(p.n, p.H) * (head - tail);
}

/// Covariance of the n-th order FNIG noise at lag tau (even in tau): the
/// n-FGN covariance template with each |tau + j eta|^{2H} replaced by the
/// mean 2H-th power of the subordinator increment over that gap,
///   (-1)^n (C_H^n/2) sum_{j=-n..n} (-1)^j binom(2n, n+j) E G(|tau+j eta|)^{2H},
/// each expectation by adaptive quadrature of its first-passage integral
/// at relative tolerance 1e-8. Exact for n = 1, where it reduces to the
/// FNIG noise autocovariance.
inline double nfnign_cov(double tau, const NFnigParams& p) {
  p.validate();
  if (tau == 0.0) throw std::domain_error("nfnign_cov: requires tau != 0");
  tau = std::abs(tau);
  const double twoH = 2.0 * p.H;

  // E G(u)^{2H} = (alpha u / sqrt(2 pi)) e^{ab u} int_0^inf y^{2H-3/2}
  //   exp(-(alpha^2 u^2 / y + beta^2 y)/2) dy, via y = e^v. The exponent
  // is strictly concave with a closed-form stationary point.
  const auto mean_pow_quad = [&](double u) {
    if (u == 0.0) return 0.0;
    const double au = p.alpha * u, b = p.beta;
    const auto log_g = [&](double v) {
      return twoH * v + detail::ig_log_density_exp(v, au, b);
    };
    const double c = 2.0 * twoH - 1.0;
    const double w_peak =
        (0.5 * c + std::sqrt(0.25 * c * c + au * au * b * b)) / (b * b);
    const double center = std::log(w_peak);
    auto [lp, integral] =
        detail::integrate_log_concave(log_g, center - 80.0, center + 80.0, 1e-8);
    return au / std::sqrt(2.0 * kPi) * std::exp(lp) * integral;
  };

  double acc = 0.0;
  for (int j = -p.n; j <= p.n; ++j) {
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    acc += sign * detail::binom_real(2.0 * p.n, p.n + j) *
           mean_pow_quad(std::abs(tau + j * p.eta));
  }
  const double parity = p.n % 2 == 0 ? 1.0 : -1.0;
  return parity * 0.5 * c_coeff(p.n, p.H) * acc;
}

}  // namespace fnig

#pragma once

#include <cmath>
#include <functional>

#include "fnig/quadrature.hpp"

// Independent brute-force oracles for the analytic kernels. These go
// through plain integral representations only, never through the Bessel
// or density code paths they are used to check.
namespace oracle {

// Truncation point: the integrand has fallen ~e^-60 of its u = 0 value.
// Grown multiplicatively from a small start so the interval stays tight
// even for very large omega (boundary-layer integrands).
inline double bessel_trunc(double nu, double omega) {
  double u_hi = 1e-4;
  while (omega * (std::cosh(u_hi) - 1.0) - nu * u_hi < 60.0) u_hi *= 1.5;
  return u_hi;
}

// K_nu(omega) = int_0^inf cosh(nu u) exp(-omega cosh u) du.
inline double bessel_k_quadrature(double nu, double omega) {
  nu = std::abs(nu);
  const auto f = [&](double u) {
    return std::cosh(nu * u) * std::exp(-omega * std::cosh(u));
  };
  return fnig::integrate_adaptive(f, 0.0, bessel_trunc(nu, omega), 1e-12, 60);
}

// e^omega K_nu(omega), stable for large omega.
inline double bessel_k_scaled_quadrature(double nu, double omega) {
  nu = std::abs(nu);
  const auto f = [&](double u) {
    return std::cosh(nu * u) * std::exp(-omega * (std::cosh(u) - 1.0));
  };
  return fnig::integrate_adaptive(f, 0.0, bessel_trunc(nu, omega), 1e-12, 60);
}

// Adaptive integral of a positive function over [a, b].
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double rel_tol = 1e-10) {
  return fnig::integrate_adaptive(f, a, b, rel_tol, 60);
}

}  // namespace oracle

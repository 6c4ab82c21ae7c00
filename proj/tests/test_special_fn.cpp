#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "fnig/special_fn.hpp"
#include "support/oracles.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("half-integer closed forms") {
  // e^w K_{1/2}(w) = sqrt(pi/2) w^{-1/2}
  REQUIRE_THAT(fnig::bessel_k_scaled(0.5, 1.0),
               WithinRel(std::sqrt(kPi / 2.0), 1e-14));
  REQUIRE_THAT(fnig::bessel_k(0.5, 1.0),
               WithinRel(std::sqrt(kPi / 2.0) * std::exp(-1.0), 1e-14));
  // K_{3/2}(2) = sqrt(pi/4) e^{-2} (1 + 1/2), by recurrence from K_{1/2}.
  REQUIRE_THAT(fnig::bessel_k(1.5, 2.0),
               WithinRel(0.17990665795209218, 1e-13));
  // Frozen from the integral representation: e K_1(1).
  REQUIRE_THAT(fnig::bessel_k_scaled(1.0, 1.0),
               WithinRel(1.6361534862632583, 1e-13));
}

TEST_CASE("quadrature oracle grid") {
  // K agrees with adaptive quadrature of the integral representation to
  // 1e-10 relative across orders and arguments spanning both branches.
  for (double nu : {-1.5, -0.9, -0.5, 0.0, 0.5, 1.0, 1.5, 2.5}) {
    for (double omega : {0.1, 1.0, 5.0, 20.0}) {
      CAPTURE(nu, omega);
      REQUIRE_THAT(fnig::bessel_k(nu, omega),
                   WithinRel(oracle::bessel_k_quadrature(nu, omega), 1e-10));
    }
  }
}

TEST_CASE("symmetry in the order") {
  for (double nu : {0.2, 0.5, 0.9, 1.3, 2.5, 4.1}) {
    for (double omega : {0.05, 0.7, 2.1, 30.0}) {
      CAPTURE(nu, omega);
      REQUIRE_THAT(fnig::bessel_k(nu, omega),
                   WithinRel(fnig::bessel_k(-nu, omega), 1e-13));
    }
  }
}

TEST_CASE("strictly decreasing in omega") {
  for (double nu : {0.0, 0.5, 1.0, 2.5}) {
    double prev = fnig::bessel_k_scaled(nu, 0.01) * std::exp(-0.01);
    for (double omega = 0.05; omega < 30.0; omega *= 1.7) {
      const double cur = fnig::bessel_k(nu, omega);
      CAPTURE(nu, omega);
      REQUIRE(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("scaled and unscaled variants are consistent") {
  for (double nu : {-2.5, -0.3, 0.5, 1.7}) {
    for (double omega : {0.2, 1.0, 8.0, 120.0}) {
      CAPTURE(nu, omega);
      REQUIRE_THAT(fnig::bessel_k_scaled(nu, omega) * std::exp(-omega),
                   WithinRel(fnig::bessel_k(nu, omega), 1e-14));
    }
  }
}

TEST_CASE("no overflow in the scaled variant up to 1e6") {
  for (double nu : {0.0, 0.5, 2.0, 5.0}) {
    for (double omega : {1e2, 1e4, 1e6}) {
      const double v = fnig::bessel_k_scaled(nu, omega);
      CAPTURE(nu, omega);
      REQUIRE(std::isfinite(v));
      REQUIRE(v > 0.0);
      // Large-omega check against the scaled quadrature oracle.
      REQUIRE_THAT(v, WithinRel(oracle::bessel_k_scaled_quadrature(nu, omega),
                                1e-10));
    }
  }
}

TEST_CASE("both branches agree at the crossover") {
  // omega = 2 is the series/continued-fraction boundary; values either
  // side must line up against the oracle.
  for (double nu : {0.0, 0.3, 0.5, 1.2, 3.4}) {
    for (double omega : {1.999, 2.0, 2.001}) {
      CAPTURE(nu, omega);
      REQUIRE_THAT(fnig::bessel_k(nu, omega),
                   WithinRel(oracle::bessel_k_quadrature(nu, omega), 1e-12));
    }
  }
}

TEST_CASE("asymptotic expansion") {
  // mu = 1 kills every correction term: the one-term sum is exact.
  for (double omega : {0.5, 3.0, 80.0}) {
    REQUIRE_THAT(fnig::bessel_k_asymptotic(0.5, omega, 1),
                 WithinRel(std::sqrt(kPi / 2.0) * std::exp(-omega) /
                               std::sqrt(omega),
                           1e-15));
    REQUIRE(fnig::bessel_k_asymptotic(0.5, omega, 1) ==
            fnig::bessel_k_asymptotic(0.5, omega, 7));
  }
  REQUIRE_THAT(fnig::bessel_k_asymptotic(1.0, 50.0, 4),
               WithinRel(fnig::bessel_k(1.0, 50.0), 1e-6));
  // Divergent-series behaviour at small omega is permitted; just confirm
  // evaluation stays finite.
  REQUIRE(std::isfinite(fnig::bessel_k_asymptotic(1.0, 1.0, 2)));
  REQUIRE(std::isfinite(fnig::bessel_k_asymptotic(1.0, 1.0, 4)));
}

TEST_CASE("log_gamma values and domain") {
  REQUIRE(fnig::log_gamma(1.0) == 0.0);
  REQUIRE_THAT(fnig::log_gamma(0.5),
               WithinRel(std::log(std::sqrt(kPi)), 1e-14));
  REQUIRE_THAT(fnig::log_gamma(3.5), WithinRel(1.2009736023470743, 1e-13));
  // Recurrence Gamma(x+1) = x Gamma(x) across a range of x.
  for (double x : {0.25, 1.0, 2.5, 11.0}) {
    REQUIRE_THAT(fnig::log_gamma(x + 1.0),
                 WithinAbs(fnig::log_gamma(x) + std::log(x), 1e-12));
  }
  REQUIRE_THROWS_AS(fnig::log_gamma(0.0), std::domain_error);
  REQUIRE_THROWS_AS(fnig::log_gamma(-1.5), std::domain_error);
}

TEST_CASE("domain errors") {
  REQUIRE_THROWS_AS(fnig::bessel_k_scaled(0.5, 0.0), std::domain_error);
  REQUIRE_THROWS_AS(fnig::bessel_k_scaled(0.5, -1.0), std::domain_error);
  REQUIRE_THROWS_AS(fnig::bessel_k_scaled(std::nan(""), 1.0),
                    std::domain_error);
  REQUIRE_THROWS_AS(fnig::bessel_k_asymptotic(0.5, 1.0, 0), std::domain_error);
}

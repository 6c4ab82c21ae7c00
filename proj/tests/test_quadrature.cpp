#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "fnig/quadrature.hpp"

using Catch::Matchers::WithinRel;

TEST_CASE("polynomial and trigonometric integrals are exact") {
  const auto sq = [](double x) { return x * x; };
  REQUIRE_THAT(fnig::integrate_adaptive(sq, 0.0, 1.0, 1e-12),
               WithinRel(1.0 / 3.0, 1e-13));

  const auto s = [](double x) { return std::sin(x); };
  REQUIRE_THAT(fnig::integrate_adaptive(s, 0.0, std::numbers::pi, 1e-12),
               WithinRel(2.0, 1e-12));
}

TEST_CASE("localized Gaussian bump is resolved adaptively") {
  const auto g = [](double x) {
    return std::exp(-0.5 * (x - 7.0) * (x - 7.0) / 1e-2);
  };
  const double expected = std::sqrt(2.0 * std::numbers::pi) * 1e-1;
  REQUIRE_THAT(fnig::integrate_adaptive(g, 0.0, 30.0, 1e-10),
               WithinRel(expected, 1e-9));
}

TEST_CASE("integrable endpoint singularity converges") {
  const auto f = [](double x) { return std::log(x); };
  REQUIRE_THAT(fnig::integrate_adaptive(f, 0.0, 1.0, 1e-10),
               WithinRel(-1.0, 1e-9));
}

TEST_CASE("degenerate and invalid intervals") {
  const auto f = [](double x) { return x; };
  REQUIRE(fnig::integrate_adaptive(f, 2.0, 2.0) == 0.0);
  REQUIRE_THROWS_AS(fnig::integrate_adaptive(f, 3.0, 2.0), std::domain_error);
}

TEST_CASE("log-concave helper reproduces the Gaussian integral") {
  const auto log_g = [](double u) { return -0.5 * (u - 3.0) * (u - 3.0); };
  auto [log_peak, integral] =
      fnig::detail::integrate_log_concave(log_g, -50.0, 50.0, 1e-11);
  REQUIRE_THAT(std::exp(log_peak) * integral,
               WithinRel(std::sqrt(2.0 * std::numbers::pi), 1e-10));
}

TEST_CASE("scan helper handles a bimodal log-integrand") {
  // Two separated bumps; a unimodal search would lose one of them.
  const auto log_g = [](double u) {
    const double a = -0.5 * (u + 8.0) * (u + 8.0);
    const double b = -0.5 * (u - 8.0) * (u - 8.0);
    return std::max(a, b) + std::log1p(std::exp(-std::abs(a - b)));
  };
  auto [log_peak, integral] =
      fnig::detail::integrate_log_scan(log_g, 0.0, 40.0, 1e-10);
  REQUIRE_THAT(std::exp(log_peak) * integral,
               WithinRel(2.0 * std::sqrt(2.0 * std::numbers::pi), 1e-9));
}

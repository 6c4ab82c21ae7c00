#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "fnig/rng.hpp"
#include "fnig/special_fn.hpp"

namespace fnig {

/// Inverse Gaussian parameters: barrier a > 0 and drift b >= 0.
/// An IG subordinator increment over a window of length dt has
/// IgParams{alpha * dt, beta}. b = 0 is the one-sided stable-1/2 edge
/// case: the density exists but moments and sampling do not.
struct IgParams {
  double a;
  double b;

  void validate() const {
    if (!(a > 0.0)) throw std::domain_error("IgParams: requires a > 0");
    if (!(b >= 0.0)) throw std::domain_error("IgParams: requires b >= 0");
  }
};

/// IG(a, b) density at x > 0.
inline double ig_density(double x, const IgParams& p) {
  p.validate();
  if (!(x > 0.0)) throw std::domain_error("ig_density: requires x > 0");
  const double log_f = -0.5 * std::log(2.0 * kPi) + std::log(p.a) -
                       1.5 * std::log(x) + p.a * p.b -
                       0.5 * (p.a * p.a / x + p.b * p.b * x);
  return std::exp(log_f);
}

/// r-th moment of IG(a, b), valid for any real r, requires b > 0.
/// Evaluated through scaled Bessel functions, so no overflow for
/// a*b up to 1e6.
inline double ig_moment(double r, const IgParams& p) {
  p.validate();
  if (!(p.b > 0.0)) throw std::domain_error("ig_moment: moments require beta > 0");
  if (!std::isfinite(r)) throw std::domain_error("ig_moment: non-finite order");
  const double ab = p.a * p.b;
  // K_{r-1/2}(ab) / K_{-1/2}(ab) * (a/b)^r with the e^{ab} factors cancelled.
  const double k_half = std::sqrt(kPi / 2.0) / std::sqrt(ab);  // e^ab K_{-1/2}(ab)
  return bessel_k_scaled(r - 0.5, ab) / k_half * std::pow(p.a / p.b, r);
}

/// One exact IG(a, b) draw via the Michael-Schucany-Haas transformation
/// with rejection. Requires b > 0.
inline double ig_sample(const IgParams& p, RngStream& rng) {
  p.validate();
  if (!(p.b > 0.0)) throw std::domain_error("ig_sample: requires beta > 0");
  const double m = p.a / p.b;  // mean
  const double z = rng.normal();
  const double nu = z * z;
  if (nu == 0.0) return m;  // probability-zero draw; x1 degenerates to m
  // Stable form of m + nu/(2 b^2) - sqrt(4 a b nu + nu^2)/(2 b^2):
  // the root x1 lies in (0, m] by construction.
  const double x1 =
      m - 2.0 * p.a * nu /
              (p.b * (std::sqrt(nu * nu + 4.0 * p.a * p.b * nu) + nu));
  return rng.uniform() <= m / (m + x1) ? x1 : m * m / x1;
}

/// Laplace exponent of the IG subordinator: Phi(x) = alpha (sqrt(beta^2+2x) - beta).
inline double laplace_exponent(double x, double alpha, double beta) {
  if (!(x >= 0.0)) throw std::domain_error("laplace_exponent: requires x >= 0");
  if (!(alpha > 0.0) || !(beta >= 0.0))
    throw std::domain_error("laplace_exponent: requires alpha > 0, beta >= 0");
  // sqrt(b^2+2x) - b computed to avoid cancellation for large beta.
  return alpha * (2.0 * x / (std::sqrt(beta * beta + 2.0 * x) + beta));
}

/// A realized IG subordinator path on a grid. times[0] == 0 and
/// values[0] == 0 always; values are strictly increasing afterwards.
struct SubordinatorPath {
  std::vector<double> times;
  std::vector<double> values;
  double alpha = 0.0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Draws G over the given grid from independent IG(alpha*dt, beta)
/// increments. The grid must be strictly increasing with grid[0] >= 0;
/// a leading 0 is prepended when absent. Increments too small to move
/// the running sum are resampled (IG increments are a.s. positive and
/// the Gram matrix downstream needs distinct values).
inline SubordinatorPath subordinator_path(std::span<const double> grid,
                                          double alpha, double beta,
                                          RngStream& rng) {
  if (grid.empty()) throw std::domain_error("subordinator_path: empty grid");
  if (!(grid[0] >= 0.0))
    throw std::domain_error("subordinator_path: grid must start at >= 0");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::domain_error("subordinator_path: grid must be strictly increasing");
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::domain_error("subordinator_path: requires alpha > 0, beta > 0");

  SubordinatorPath path;
  path.alpha = alpha;
  path.beta = beta;
  path.seed = rng.seed();
  path.stream = rng.stream();
  path.times.push_back(0.0);
  path.values.push_back(0.0);
  double g = 0.0, prev_t = 0.0;
  for (double t : grid) {
    if (t == 0.0) continue;
    const IgParams inc_params{alpha * (t - prev_t), beta};
    double inc;
    do {
      inc = ig_sample(inc_params, rng);
    } while (!(g + inc > g));
    g += inc;
    path.times.push_back(t);
    path.values.push_back(g);
    prev_t = t;
  }
  return path;
}

}  // namespace fnig

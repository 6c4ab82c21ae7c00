#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fnig {

/// Thrown when an adaptive quadrature cannot reach its tolerance.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

// Gauss-Kronrod 7-15 abscissae and weights (positive half, QUADPACK dqk15).
inline constexpr double gk15_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double gk15_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double gk15_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline std::pair<double, double> gk15_panel(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double ik = gk15_wk[7] * fc;
  double ig = gk15_wg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double x = h * gk15_nodes[i];
    const double s = f(c - x) + f(c + x);
    ik += gk15_wk[i] * s;
    if (i % 2 == 1) ig += gk15_wg[i / 2] * s;
  }
  ik *= h;
  ig *= h;
  return {ik, std::abs(ik - ig)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b].
/// Bisects the worst panel until the summed error estimate is below
/// rel_tol * |integral| (or abs_tol), giving up on a panel after
/// max_depth bisection levels. Throws numerical_error if the frozen
/// panels leave the total error above tolerance.
template <class F>
inline double integrate_adaptive(F&& f, double a, double b,
                                 double rel_tol = 1e-10, int max_depth = 60,
                                 double abs_tol = 0.0) {
  struct Panel {
    double a, b, value, err;
    int depth;
    bool frozen;
  };
  if (!(a < b)) {
    if (a == b) return 0.0;
    throw std::domain_error("integrate_adaptive: requires a <= b");
  }

  auto [v0, e0] = detail::gk15_panel(f, a, b);
  std::vector<Panel> panels{{a, b, v0, e0, 0, false}};
  const std::size_t max_panels = 4096;

  for (;;) {
    double total = 0.0, err = 0.0;
    std::size_t worst = panels.size();
    double worst_err = -1.0;
    for (std::size_t i = 0; i < panels.size(); ++i) {
      total += panels[i].value;
      err += panels[i].err;
      if (!panels[i].frozen && panels[i].err > worst_err) {
        worst_err = panels[i].err;
        worst = i;
      }
    }
    const double target =
        std::max(abs_tol, rel_tol * std::max(std::abs(total),
                                             std::numeric_limits<double>::min()));
    if (err <= target) return total;
    if (worst == panels.size() || panels.size() >= max_panels)
      throw numerical_error(
          "integrate_adaptive: tolerance not reached on [" +
          std::to_string(a) + ", " + std::to_string(b) +
          "]; residual error " + std::to_string(err) + " on value " +
          std::to_string(total));

    Panel p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    auto [vl, el] = detail::gk15_panel(f, p.a, mid);
    auto [vr, er] = detail::gk15_panel(f, mid, p.b);
    const bool freeze = p.depth + 1 >= max_depth;
    panels[worst] = {p.a, mid, vl, el, p.depth + 1, freeze};
    panels.push_back({mid, p.b, vr, er, p.depth + 1, freeze});
  }
}

namespace detail {

// Integral of exp(log_g) over the real line when log_g is strictly
// concave, returned as {log_peak, integral of exp(log_g - log_peak)}.
// [lo, hi] must bracket the maximizer.
template <class F>
inline std::pair<double, double> integrate_log_concave(F&& log_g, double lo,
                                                       double hi,
                                                       double rel_tol,
                                                       int max_depth = 60) {
  for (int i = 0; i < 240 && hi - lo > 1e-12 * (1.0 + std::abs(hi)); ++i) {
    const double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (log_g(m1) < log_g(m2))
      lo = m1;
    else
      hi = m2;
  }
  const double u_peak = 0.5 * (lo + hi);
  const double log_peak = log_g(u_peak);
  const double drop = 55.0;
  double u_lo = u_peak - 1.0, u_hi = u_peak + 1.0;
  while (log_g(u_lo) > log_peak - drop) u_lo -= 1.0;
  while (log_g(u_hi) > log_peak - drop) u_hi += 1.0;
  const auto g = [&](double u) { return std::exp(log_g(u) - log_peak); };
  return {log_peak, integrate_adaptive(g, u_lo, u_hi, rel_tol, max_depth)};
}

// As above but for log-integrands that need not be concave (or even
// unimodal): a coarse scan around `center` locates the mass, then the
// outermost threshold crossings delimit the adaptive pass. Peaks narrower
// than the scan step only lower the detected maximum, which widens the
// effective drop window rather than losing mass.
template <class F>
inline std::pair<double, double> integrate_log_scan(F&& log_g, double center,
                                                    double half_width,
                                                    double rel_tol,
                                                    int max_depth = 60) {
  const double step = 0.2;
  const int m = static_cast<int>(half_width / step);
  double best = -std::numeric_limits<double>::infinity();
  for (int i = -m; i <= m; ++i)
    best = std::max(best, log_g(center + i * step));
  const double threshold = best - 60.0;
  int i_lo = -m, i_hi = m;
  while (i_lo < m && log_g(center + i_lo * step) < threshold) ++i_lo;
  while (i_hi > -m && log_g(center + i_hi * step) < threshold) --i_hi;
  const double u_lo = center + (i_lo - 1) * step;
  const double u_hi = center + (i_hi + 1) * step;
  const auto g = [&](double u) { return std::exp(log_g(u) - best); };
  return {best, integrate_adaptive(g, u_lo, u_hi, rel_tol, max_depth)};
}

}  // namespace detail

}  // namespace fnig

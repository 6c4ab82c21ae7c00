#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fnig/fbm_kernels.hpp"
#include "fnig/fnig_analytics.hpp"
#include "fnig/ig.hpp"
#include "fnig/quadrature.hpp"
#include "fnig/rng.hpp"

namespace fnig {

/// Conditional covariance matrix R(G_i, G_j) built from subordinator
/// values, together with the grid it came from.
struct GramMatrix {
  Eigen::MatrixXd entries;
  std::vector<double> source_grid;
};

/// Lower-triangular factor L with L L^T = Gamma + jitter I.
struct CholFactor {
  Eigen::MatrixXd lower;
  double jitter_used = 0.0;
};

/// Raised when a Gram matrix stays indefinite at the jitter cap.
class factorization_error : public numerical_error {
 public:
  factorization_error(const std::string& what, int pivot)
      : numerical_error(what), pivot_(pivot) {}
  int pivot() const { return pivot_; }

 private:
  int pivot_;
};

/// Gram matrix of the FBM kernel evaluated at subordinator values.
inline GramMatrix fbm_gram(std::span<const double> g_values,
                           const FbmParams& p) {
  p.validate();
  const auto n = static_cast<Eigen::Index>(g_values.size());
  GramMatrix gram;
  gram.source_grid.assign(g_values.begin(), g_values.end());
  gram.entries.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double v = fbm_cov(g_values[i], g_values[j], p);
      gram.entries(i, j) = v;
      gram.entries(j, i) = v;
    }
  return gram;
}

/// Cholesky factorization with jitter escalation: attempt the plain
/// factorization first; on failure add jitter starting at 1e-12 max(diag),
/// growing tenfold up to 1e-6 max(diag). Throws factorization_error naming
/// the first nonpositive pivot if the cap is reached.
inline CholFactor cholesky_psd(const GramMatrix& g) {
  const Eigen::Index n = g.entries.rows();
  if (n == 0) throw std::domain_error("cholesky_psd: empty matrix");
  if (g.entries.cols() != n)
    throw std::domain_error("cholesky_psd: matrix not square");
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < i; ++j) {
      const double a = g.entries(i, j), b = g.entries(j, i);
      if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
        throw std::domain_error("cholesky_psd: matrix not symmetric");
    }

  const double max_diag = g.entries.diagonal().maxCoeff();
  const double jitter_base = 1e-12 * max_diag;
  const double jitter_cap = 1e-6 * max_diag;

  Eigen::MatrixXd work;
  double jitter = 0.0;
  for (;;) {
    work = g.entries;
    if (jitter > 0.0) work.diagonal().array() += jitter;
    Eigen::LLT<Eigen::Ref<Eigen::MatrixXd>> llt(work);
    if (llt.info() == Eigen::Success) {
      CholFactor f;
      f.lower = work.triangularView<Eigen::Lower>();
      f.jitter_used = jitter;
      return f;
    }
    if (jitter >= jitter_cap) break;
    jitter = jitter == 0.0 ? jitter_base : std::min(jitter * 10.0, jitter_cap);
  }

  // Terminal failure: locate the offending pivot with a scalar pass.
  work = g.entries;
  work.diagonal().array() += jitter_cap;
  int pivot = -1;
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = work(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= work(j, k) * work(j, k);
    if (!(d > 0.0)) {
      pivot = static_cast<int>(j);
      break;
    }
    const double lj = std::sqrt(d);
    work(j, j) = lj;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = work(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= work(i, k) * work(j, k);
      work(i, j) = s / lj;
    }
  }
  throw factorization_error(
      "cholesky_psd: matrix indefinite at maximum jitter (pivot " +
          std::to_string(pivot) + ")",
      pivot);
}

/// X = L z: one conditional-Gaussian vector given the factored Gram matrix.
inline std::vector<double> gaussian_given_gram(const CholFactor& f,
                                               std::span<const double> z) {
  const Eigen::Index n = f.lower.rows();
  if (static_cast<Eigen::Index>(z.size()) != n)
    throw std::domain_error("gaussian_given_gram: dimension mismatch");
  Eigen::Map<const Eigen::VectorXd> zv(z.data(), n);
  Eigen::VectorXd x = f.lower.triangularView<Eigen::Lower>() * zv;
  return {x.data(), x.data() + n};
}

/// A simulated FNIG path with its provenance: the subordinator it rode on,
/// the parameters, and the RNG coordinates that reproduce it bit-exactly.
struct SamplePath {
  std::vector<double> times;   // starts at 0
  std::vector<double> values;  // X(0) = 0 prepended
  SubordinatorPath subordinator;
  FnigParams params;
  double jitter_used = 0.0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// The uniform grid t/n, 2t/n, ..., t of the simulation algorithm.
inline std::vector<double> uniform_grid(double t_max, std::size_t n_steps) {
  if (!(t_max > 0.0)) throw std::domain_error("uniform_grid: requires t_max > 0");
  if (n_steps == 0) throw std::domain_error("uniform_grid: requires n_steps >= 1");
  std::vector<double> grid(n_steps);
  for (std::size_t i = 0; i < n_steps; ++i)
    grid[i] = t_max * static_cast<double>(i + 1) / static_cast<double>(n_steps);
  return grid;
}

/// Simulates X over the grid: draws the subordinator, forms the FBM Gram
/// matrix at its values, factorizes, and returns X = L Z with X(0) = 0
/// prepended. Identical (seed, stream, params, grid) give a bit-identical
/// path.
inline SamplePath simulate_fnig_path(const FnigParams& p,
                                     std::span<const double> grid,
                                     RngStream& rng) {
  p.validate();
  if (!(p.beta > 0.0))
    throw std::domain_error("simulate_fnig_path: requires beta > 0");
  SamplePath path;
  path.params = p;
  path.seed = rng.seed();
  path.stream = rng.stream();
  path.subordinator = subordinator_path(grid, p.alpha, p.beta, rng);

  const std::size_t n = path.subordinator.values.size() - 1;  // minus t = 0
  std::span<const double> g(path.subordinator.values.data() + 1, n);
  const GramMatrix gram = fbm_gram(g, FbmParams{p.H, p.sigma2});
  const CholFactor factor = cholesky_psd(gram);
  path.jitter_used = factor.jitter_used;

  std::vector<double> z(n);
  for (auto& zi : z) zi = rng.normal();
  std::vector<double> x = gaussian_given_gram(factor, z);

  path.times = path.subordinator.times;
  path.values.resize(n + 1);
  path.values[0] = 0.0;
  std::copy(x.begin(), x.end(), path.values.begin() + 1);
  return path;
}

/// One exact draw of the marginal X(t) = sigma G(t)^H Z.
inline double sample_marginal(double t, const FnigParams& p, RngStream& rng) {
  p.validate();
  if (!(t > 0.0)) throw std::domain_error("sample_marginal: requires t > 0");
  if (!(p.beta > 0.0))
    throw std::domain_error("sample_marginal: requires beta > 0");
  const double g = ig_sample(IgParams{p.alpha * t, p.beta}, rng);
  return p.sigma() * std::pow(g, p.H) * rng.normal();
}

}  // namespace fnig

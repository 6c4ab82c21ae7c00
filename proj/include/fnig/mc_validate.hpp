#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <json.hpp>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fnig/fnig_noise.hpp"
#include "fnig/gaussian_sim.hpp"

namespace fnig {

/// Monte Carlo run configuration. `replicates` is the number of
/// independent units (draws or paths, depending on the estimator),
/// `path_length` the number of steps of each simulated path.
struct McConfig {
  std::size_t replicates = 100000;
  std::size_t path_length = 400;
  std::uint64_t seed = 0;
  double tolerance_sigmas = 3.0;

  void validate() const {
    if (replicates < 2) throw std::domain_error("McConfig: requires replicates >= 2");
    if (path_length < 2) throw std::domain_error("McConfig: requires path_length >= 2");
    if (!(tolerance_sigmas > 0.0))
      throw std::domain_error("McConfig: requires tolerance_sigmas > 0");
  }
};

struct McEstimate {
  double value = 0.0;
  double se = 0.0;
};

namespace detail {

template <class Fn>
inline void parallel_chunks(std::size_t n, Fn&& fn) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>(hw, (n + 4095) / 4096);
  if (n_threads <= 1) {
    fn(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + n_threads - 1) / n_threads;
  for (std::size_t t = 0; t < n_threads; ++t) {
    const std::size_t b = t * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& th : pool) th.join();
}

// Deterministic compensated sum over a fixed-order slot vector.
inline double kahan_sum(std::span<const double> xs) {
  double s = 0.0, c = 0.0;
  for (double x : xs) {
    const double y = x - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

inline McEstimate mean_se(std::span<const double> xs) {
  const auto n = static_cast<double>(xs.size());
  const double mean = kahan_sum(xs) / n;
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    sq[i] = (xs[i] - mean) * (xs[i] - mean);
  const double var = kahan_sum(sq) / (n - 1.0);
  return {mean, std::sqrt(var / n)};
}

}  // namespace detail

/// Sample mean and standard error of |X(t)|^q over cfg.replicates
/// independent marginal draws. Draw i uses substream(seed, stream_base+i),
/// so the estimate is deterministic and order-independent.
inline McEstimate estimate_abs_moment(double q, double t, const FnigParams& p,
                                      const McConfig& cfg,
                                      std::uint64_t stream_base = 0) {
  cfg.validate();
  p.validate();
  if (!(q >= 0.0)) throw std::domain_error("estimate_abs_moment: requires q >= 0");
  std::vector<double> vals(cfg.replicates);
  detail::parallel_chunks(cfg.replicates, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      RngStream rng = substream(cfg.seed, stream_base + i);
      vals[i] = std::pow(std::abs(sample_marginal(t, p, rng)), q);
    }
  });
  if (q == 0.0) return {1.0, 0.0};
  return detail::mean_se(vals);
}

/// Cross-replicate mean and standard error of the biased (1/N) sample
/// autocovariance of the noise W_j = X(j eta) - X((j-1) eta) at lag k,
/// from cfg.replicates simulated paths of cfg.path_length steps.
inline McEstimate estimate_noise_acf(long k, const NoiseParams& np,
                                     const McConfig& cfg,
                                     std::uint64_t stream_base = 0) {
  cfg.validate();
  np.validate();
  if (k < 0) throw std::domain_error("estimate_noise_acf: requires k >= 0");
  if (cfg.path_length <= static_cast<std::size_t>(k) + 1)
    throw std::domain_error("estimate_noise_acf: requires path_length > k + 1");
  const std::size_t steps = cfg.path_length;
  std::vector<double> acf(cfg.replicates);
  detail::parallel_chunks(cfg.replicates, [&](std::size_t b, std::size_t e) {
    std::vector<double> grid(steps);
    for (std::size_t j = 0; j < steps; ++j)
      grid[j] = np.eta * static_cast<double>(j + 1);
    for (std::size_t r = b; r < e; ++r) {
      RngStream rng = substream(cfg.seed, stream_base + r);
      const SamplePath path = simulate_fnig_path(np.base, grid, rng);
      std::vector<double> w(steps);
      for (std::size_t j = 0; j < steps; ++j)
        w[j] = path.values[j + 1] - path.values[j];
      double mean = 0.0;
      for (double x : w) mean += x;
      mean /= static_cast<double>(steps);
      double acc = 0.0;
      for (std::size_t j = 0; j + k < steps; ++j)
        acc += (w[j] - mean) * (w[j + k] - mean);
      acf[r] = acc / static_cast<double>(steps);
    }
  });
  return detail::mean_se(acf);
}

/// One analytic-vs-Monte-Carlo comparison in a validation report.
struct CheckResult {
  std::string name;
  double analytic = 0.0;
  double estimate = 0.0;
  double se = 0.0;
  double z = 0.0;
  bool pass = false;
  int attempts = 1;

  friend bool operator==(const CheckResult&, const CheckResult&) = default;
};

/// Structured analytic-vs-empirical comparison: one entry per check,
/// with the configuration and parameters echoed for reproducibility.
/// A check that lands outside tolerance_sigmas is retried once with a
/// fresh sub-seed and fails only on repeat (multiple-testing policy for
/// ~15 checks at 3 sigma).
struct ValidationReport {
  std::vector<CheckResult> entries;
  McConfig config;
  FnigParams params{1.0, 1.0, 1.0, 0.5};
  double eta = 1.0;

  bool all_pass() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const CheckResult& c) { return c.pass; });
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["config"] = {{"replicates", config.replicates},
                   {"path_length", config.path_length},
                   {"seed", config.seed},
                   {"tolerance_sigmas", config.tolerance_sigmas},
                   {"retry_policy", "retry-once-on-failure"}};
    j["params"] = {{"alpha", params.alpha},
                   {"beta", params.beta},
                   {"sigma2", params.sigma2},
                   {"H", params.H},
                   {"eta", eta}};
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : entries)
      j["checks"].push_back({{"name", c.name},
                             {"analytic", c.analytic},
                             {"estimate", c.estimate},
                             {"se", c.se},
                             {"z", c.z},
                             {"pass", c.pass},
                             {"attempts", c.attempts}});
    j["all_pass"] = all_pass();
    return j;
  }

  static ValidationReport from_json(const nlohmann::ordered_json& j) {
    ValidationReport r;
    r.config.replicates = j.at("config").at("replicates").get<std::size_t>();
    r.config.path_length = j.at("config").at("path_length").get<std::size_t>();
    r.config.seed = j.at("config").at("seed").get<std::uint64_t>();
    r.config.tolerance_sigmas = j.at("config").at("tolerance_sigmas").get<double>();
    r.params.alpha = j.at("params").at("alpha").get<double>();
    r.params.beta = j.at("params").at("beta").get<double>();
    r.params.sigma2 = j.at("params").at("sigma2").get<double>();
    r.params.H = j.at("params").at("H").get<double>();
    r.eta = j.at("params").at("eta").get<double>();
    for (const auto& cj : j.at("checks")) {
      CheckResult c;
      c.name = cj.at("name").get<std::string>();
      c.analytic = cj.at("analytic").get<double>();
      c.estimate = cj.at("estimate").get<double>();
      c.se = cj.at("se").get<double>();
      c.z = cj.at("z").get<double>();
      c.pass = cj.at("pass").get<bool>();
      c.attempts = cj.at("attempts").get<int>();
      r.entries.push_back(std::move(c));
    }
    return r;
  }

  std::string to_text() const {
    char line[256];
    std::string out;
    std::snprintf(line, sizeof line,
                  "%-18s %14s %14s %12s %8s %6s %s\n", "check", "analytic",
                  "estimate", "se", "z", "pass", "attempts");
    out += line;
    for (const auto& c : entries) {
      std::snprintf(line, sizeof line,
                    "%-18s %14.6g %14.6g %12.4g %8.2f %6s %d\n",
                    c.name.c_str(), c.analytic, c.estimate, c.se, c.z,
                    c.pass ? "ok" : "FAIL", c.attempts);
      out += line;
    }
    out += all_pass() ? "all checks passed\n" : "CHECK FAILURES PRESENT\n";
    return out;
  }

  friend bool operator==(const ValidationReport& a, const ValidationReport& b) {
    return a.entries == b.entries &&
           a.config.replicates == b.config.replicates &&
           a.config.path_length == b.config.path_length &&
           a.config.seed == b.config.seed &&
           a.config.tolerance_sigmas == b.config.tolerance_sigmas &&
           a.params.alpha == b.params.alpha && a.params.beta == b.params.beta &&
           a.params.sigma2 == b.params.sigma2 && a.params.H == b.params.H &&
           a.eta == b.eta;
  }
};

namespace detail {

struct NamedCheck {
  std::string name;
  // (cfg, params, eta, stream_base) -> (analytic, estimate)
  std::function<std::pair<double, McEstimate>(
      const McConfig&, const FnigParams&, double, std::uint64_t)>
      run;
};

inline McEstimate mc_mean_of(std::size_t n, std::uint64_t seed,
                             std::uint64_t stream_base,
                             const std::function<double(RngStream&)>& draw) {
  std::vector<double> vals(n);
  parallel_chunks(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      RngStream rng = substream(seed, stream_base + i);
      vals[i] = draw(rng);
    }
  });
  return mean_se(vals);
}

// Sample variance with a moment-based standard error (the LRD-safe
// cross-replicate route is not needed for i.i.d. draws).
inline McEstimate mc_variance_of(std::size_t n, std::uint64_t seed,
                                 std::uint64_t stream_base,
                                 const std::function<double(RngStream&)>& draw) {
  std::vector<double> vals(n);
  parallel_chunks(n, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      RngStream rng = substream(seed, stream_base + i);
      vals[i] = draw(rng);
    }
  });
  const double mean = kahan_sum(vals) / static_cast<double>(n);
  std::vector<double> c2(n);
  for (std::size_t i = 0; i < n; ++i) c2[i] = (vals[i] - mean) * (vals[i] - mean);
  const double m2 = kahan_sum(c2) / static_cast<double>(n);
  std::vector<double> c4(n);
  for (std::size_t i = 0; i < n; ++i) c4[i] = c2[i] * c2[i];
  const double m4 = kahan_sum(c4) / static_cast<double>(n);
  const double var_of_var = (m4 - m2 * m2) / static_cast<double>(n);
  return {m2, std::sqrt(std::max(var_of_var, 0.0))};
}

inline std::vector<NamedCheck> check_registry();

}  // namespace detail

inline std::vector<std::string> available_checks() {
  std::vector<std::string> names;
  for (const auto& c : detail::check_registry()) names.push_back(c.name);
  return names;
}

/// Runs the named analytic-vs-MC checks and aggregates pass/fail at
/// cfg.tolerance_sigmas, deterministically for a given (seed, cfg, params).
inline ValidationReport build_report(const std::vector<std::string>& checks,
                                     const McConfig& cfg, const FnigParams& p,
                                     double eta) {
  cfg.validate();
  p.validate();
  if (!(eta > 0.0)) throw std::domain_error("build_report: requires eta > 0");
  if (checks.empty()) throw std::domain_error("build_report: empty check set");
  const auto registry = detail::check_registry();

  ValidationReport report;
  report.config = cfg;
  report.params = p;
  report.eta = eta;
  for (const auto& name : checks) {
    const auto it =
        std::find_if(registry.begin(), registry.end(),
                     [&](const detail::NamedCheck& c) { return c.name == name; });
    if (it == registry.end()) {
      std::string msg = "build_report: unknown check '" + name +
                        "'; available checks:";
      for (const auto& c : registry) msg += " " + c.name;
      throw std::domain_error(msg);
    }
    const auto check_index =
        static_cast<std::uint64_t>(std::distance(registry.begin(), it));
    CheckResult result;
    result.name = name;
    for (int attempt = 0; attempt < 2; ++attempt) {
      const std::uint64_t stream_base =
          (check_index << 44) | (static_cast<std::uint64_t>(attempt) << 40);
      auto [analytic, est] = it->run(cfg, p, eta, stream_base);
      result.analytic = analytic;
      result.estimate = est.value;
      result.se = est.se;
      result.z = est.se > 0.0 ? (est.value - analytic) / est.se
                              : (est.value == analytic ? 0.0
                                                       : std::numeric_limits<double>::infinity());
      result.pass = std::abs(result.z) <= cfg.tolerance_sigmas;
      result.attempts = attempt + 1;
      if (result.pass) break;
    }
    report.entries.push_back(std::move(result));
  }
  return report;
}

namespace detail {

inline std::vector<NamedCheck> check_registry() {
  std::vector<NamedCheck> reg;
  const auto add = [&reg](std::string name, auto fn) {
    reg.push_back({std::move(name), fn});
  };

  add("ig_mean", [](const McConfig& cfg, const FnigParams& p, double,
                    std::uint64_t base) {
    const IgParams ig{p.alpha, p.beta};
    const double analytic = ig.a / ig.b;
    auto est = mc_mean_of(cfg.replicates, cfg.seed, base,
                          [&](RngStream& r) { return ig_sample(ig, r); });
    return std::pair{analytic, est};
  });
  add("ig_variance", [](const McConfig& cfg, const FnigParams& p, double,
                        std::uint64_t base) {
    const IgParams ig{p.alpha, p.beta};
    const double analytic = ig.a / (ig.b * ig.b * ig.b);
    auto est = mc_variance_of(cfg.replicates, cfg.seed, base,
                              [&](RngStream& r) { return ig_sample(ig, r); });
    return std::pair{analytic, est};
  });
  add("ig_moment_2H", [](const McConfig& cfg, const FnigParams& p, double,
                         std::uint64_t base) {
    const IgParams ig{p.alpha, p.beta};
    const double r0 = 2.0 * p.H;
    const double analytic = ig_moment(r0, ig);
    auto est = mc_mean_of(cfg.replicates, cfg.seed, base, [&](RngStream& r) {
      return std::pow(ig_sample(ig, r), r0);
    });
    return std::pair{analytic, est};
  });
  for (double x : {0.5, 1.0, 5.0}) {
    add("laplace_x" + std::to_string(x).substr(0, 3),
        [x](const McConfig& cfg, const FnigParams& p, double,
            std::uint64_t base) {
          const IgParams ig{p.alpha, p.beta};
          const double analytic =
              std::exp(-laplace_exponent(x, p.alpha, p.beta));
          auto est = mc_mean_of(cfg.replicates, cfg.seed, base,
                                [&](RngStream& r) {
                                  return std::exp(-x * ig_sample(ig, r));
                                });
          return std::pair{analytic, est};
        });
  }
  for (double q : {1.0, 2.0, 4.0}) {
    add("abs_moment_q" + std::to_string(static_cast<int>(q)),
        [q](const McConfig& cfg, const FnigParams& p, double,
            std::uint64_t base) {
          const double analytic = abs_moment(q, 1.0, p);
          auto est = estimate_abs_moment(q, 1.0, p, cfg, base);
          return std::pair{analytic, est};
        });
  }
  add("path_marginal_var", [](const McConfig& cfg, const FnigParams& p, double,
                              std::uint64_t base) {
    const double t1 = 1.0;
    const double analytic = abs_moment(2.0, t1, p);
    const std::vector<double> grid{0.5 * t1, t1};
    const std::size_t n = std::max<std::size_t>(cfg.replicates / 10, 2);
    auto est = mc_variance_of(n, cfg.seed, base, [&](RngStream& r) {
      return simulate_fnig_path(p, grid, r).values.back();
    });
    return std::pair{analytic, est};
  });
  add("path_cov_5_3", [](const McConfig& cfg, const FnigParams& p, double,
                         std::uint64_t base) {
    const double analytic = fnig_cov(5.0, 3.0, p);
    const std::vector<double> grid{3.0, 5.0};
    const std::size_t n = std::max<std::size_t>(cfg.replicates / 10, 2);
    std::vector<double> x3(n), x5(n);
    parallel_chunks(n, [&](std::size_t b, std::size_t e) {
      for (std::size_t i = b; i < e; ++i) {
        RngStream rng = substream(cfg.seed, base + i);
        const SamplePath path = simulate_fnig_path(p, grid, rng);
        x3[i] = path.values[1];
        x5[i] = path.values[2];
      }
    });
    const double m3 = kahan_sum(x3) / static_cast<double>(n);
    const double m5 = kahan_sum(x5) / static_cast<double>(n);
    std::vector<double> prod(n);
    for (std::size_t i = 0; i < n; ++i) prod[i] = (x3[i] - m3) * (x5[i] - m5);
    auto est = mean_se(prod);
    return std::pair{analytic, est};
  });
  for (long k : {0L, 1L, 5L}) {
    add("noise_acf_k" + std::to_string(k),
        [k](const McConfig& cfg, const FnigParams& p, double eta,
            std::uint64_t base) {
          const NoiseParams np{eta, p};
          const double analytic = noise_acf(k, np);
          McConfig path_cfg = cfg;
          path_cfg.replicates = std::clamp<std::size_t>(
              cfg.replicates / 1000, 2, 400);
          auto est = estimate_noise_acf(k, np, path_cfg, base);
          return std::pair{analytic, est};
        });
  }
  add("normalized_limit", [](const McConfig& cfg, const FnigParams& p, double,
                             std::uint64_t base) {
    const double t = 1000.0;
    const double analytic =
        p.sigma2 * std::pow(p.alpha / p.beta, 2.0 * p.H);
    auto est = mc_variance_of(cfg.replicates, cfg.seed, base,
                              [&](RngStream& r) {
                                return sample_marginal(t, p, r) /
                                       std::pow(t, p.H);
                              });
    return std::pair{analytic, est};
  });
  return reg;
}

}  // namespace detail

}  // namespace fnig

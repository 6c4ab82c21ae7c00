#pragma once

#include <cstdio>
#include <json.hpp>
#include <map>
#include <ostream>
#include <string>

#include "fnig/gaussian_sim.hpp"

namespace fnig {

/// Shortest exact decimal form of a double (17 significant digits
/// round-trip); keeps emitted tables bit-stable across reruns.
inline std::string fmt17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Leading `# key: value` metadata lines; every emitted artifact is
/// self-describing (params, seed, version).
inline void write_metadata(std::ostream& os,
                           const std::map<std::string, std::string>& meta) {
  for (const auto& [k, v] : meta) os << "# " << k << ": " << v << "\n";
}

inline void write_csv(std::ostream& os, const SubordinatorPath& path,
                      const std::map<std::string, std::string>& meta = {}) {
  write_metadata(os, meta);
  os << "t,G\n";
  for (std::size_t i = 0; i < path.times.size(); ++i)
    os << fmt17(path.times[i]) << ',' << fmt17(path.values[i]) << '\n';
}

inline void write_csv(std::ostream& os, const SamplePath& path,
                      const std::map<std::string, std::string>& meta = {}) {
  write_metadata(os, meta);
  os << "t,G,X\n";
  for (std::size_t i = 0; i < path.times.size(); ++i)
    os << fmt17(path.times[i]) << ',' << fmt17(path.subordinator.values[i])
       << ',' << fmt17(path.values[i]) << '\n';
}

inline nlohmann::ordered_json to_json(const SubordinatorPath& path) {
  nlohmann::ordered_json j;
  j["params"] = {{"alpha", path.alpha}, {"beta", path.beta}};
  j["seed"] = path.seed;
  j["stream"] = path.stream;
  j["times"] = path.times;
  j["values"] = path.values;
  return j;
}

inline nlohmann::ordered_json to_json(const SamplePath& path) {
  nlohmann::ordered_json j;
  j["params"] = {{"alpha", path.params.alpha},
                 {"beta", path.params.beta},
                 {"sigma2", path.params.sigma2},
                 {"H", path.params.H}};
  j["seed"] = path.seed;
  j["stream"] = path.stream;
  j["jitter_used"] = path.jitter_used;
  j["times"] = path.times;
  j["subordinator"] = path.subordinator.values;
  j["values"] = path.values;
  return j;
}

}  // namespace fnig

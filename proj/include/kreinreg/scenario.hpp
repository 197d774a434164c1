#ifndef KREINREG_SCENARIO_HPP
#define KREINREG_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "kreinreg/funcrep.hpp"
#include "kreinreg/profile.hpp"
#include "kreinreg/quadrature.hpp"
#include "kreinreg/report.hpp"

namespace kreinreg {

// Everything a run needs, assembled from defaults, an optional config
// file, and command-line overrides.  The config file is INI-flavoured:
// "[section]" headers with "key = value" lines, "#" or ";" comments.
// Sections and keys:
//   [profile]    rule (superexp|mild|custom), delta, beta,
//                weights (comma list of squared weights, custom rule only)
//   [quadrature] rel_tol, abs_tol, max_panels
//   [run]        scenarios (comma list), truncations (comma list),
//                seed, out, format (json|csv)
struct RunConfig {
  std::string rule = "superexp";
  double delta = 2.0;
  double beta = 1.5;
  std::vector<double> weights;  // squared weights for the custom rule

  std::vector<int> truncations{6};
  QuadratureSpec quad{};

  std::vector<std::string> scenarios{"neutral",  "majorant",   "krein",
                                     "abstract", "heisenberg", "sweep"};
  std::uint64_t seed = 20020205;
  std::string out_dir = "out";
  std::string format = "json";
};

// Parses a config file into a RunConfig starting from the defaults.
// Unknown sections or keys, malformed numbers, and unreadable files are
// ConfigError / IoError.
RunConfig load_config(const std::string& path);

// Validates scenario names, truncations, tolerances and format; throws
// ConfigError with the offending entry.
void validate_config(const RunConfig& cfg);

// Profile for one truncation order under the configured rule.
SingularityProfile profile_for(const RunConfig& cfg, int order_n);

// Deterministic seeded families.  Each function is a sum of plateau-bump
// atoms: order-k jet atoms x^k/k! * bump(width 0.3*4^-k) carrying an
// exact derivative value sign*C*B^k*k^(1.5k) at the origin, plus one
// off-origin body bump for square mass.  The stream is mt19937_64 on the
// given seed with 53-bit uniforms, so reruns reproduce bit for bit.
std::vector<FunctionRep> generic_family(std::uint64_t seed, int count,
                                        int order_n,
                                        double growth_base = 11.0);

// Same construction with growth base 0.35, so derivative values shrink
// with the order and every tolerance has headroom.
std::vector<FunctionRep> tame_family(std::uint64_t seed, int count,
                                     int order_n);

// Functions with all derivative values at the origin exactly zero: sums
// of two or three bumps translated at least one unit away from 0.
std::vector<FunctionRep> pure_family(std::uint64_t seed, int count);

// Runs the requested scenarios in dependency order and merges their
// records under "<scenario>/" prefixes.  Module errors become failed
// records, not crashes.  Deterministic given the seed.
Report run_scenario(const RunConfig& cfg);

}  // namespace kreinreg

#endif  // KREINREG_SCENARIO_HPP

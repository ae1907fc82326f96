#pragma once

#include <string>
#include <vector>

#include "conic/coefficients.hpp"
#include "conic/profile.hpp"
#include "conic/spectral.hpp"
#include "conic/trace.hpp"

namespace conic {

// Bumped whenever the solver discretization changes; part of the cache key.
inline constexpr const char* kSolverVersion = "1";

struct GridSpec {
  double t_min = 0;
  double t_max = 0;
  int samples = 0;
};

struct RunConfig {
  std::string family;
  std::vector<double> params;
  double lambda_max = 0;
  double tol = 1e-9;
  GridSpec grid;        // emission grid for heat-trace samples
  GridSpec fit;         // fit window; must lie inside the grid
  bool log_terms = false;
  int peel_samples = 0;  // 0 = no sequential peel (joint fit)
  int threads = 1;
  std::string convention = "sin";
  std::string out_dir = ".";
  std::string cache_dir;  // empty disables caching
};

// Throws std::invalid_argument on structural or range violations.
RunConfig parse_config(const std::string& text);

// Stable byte representation: every field emitted, keys sorted, numbers in
// shortest round-trip form.  parse(canonical(x)) reproduces x exactly.
std::string canonical_config(const RunConfig& cfg);

Profile profile_from_config(const RunConfig& cfg);
AngleConvention convention_from_string(const std::string& name);

std::string spectrum_to_csv(const Spectrum& spec);
Spectrum spectrum_from_csv(const std::string& text);

// Content-addressed spectrum cache: key covers profile parameters, cutoff,
// tolerance, and solver version; files carry a checksum line and corrupt
// entries read as misses.
std::string cache_key(const RunConfig& cfg);
bool cache_load(const std::string& dir, const std::string& key, std::string& csv);
void cache_store(const std::string& dir, const std::string& key, const std::string& csv);

struct SelfCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Analytic cross-checks that need no spectrum: transform identity grid,
// resolvent scaling, the regularized-sum chain, and the coefficient-ladder
// conversions.
std::vector<SelfCheck> run_self_checks();

int run_cli(int argc, char** argv);

}  // namespace conic

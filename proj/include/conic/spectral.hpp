#pragma once
#include "conic/profile.hpp"

#include <array>
#include <functional>
#include <limits>
#include <vector>

namespace conic {

// Radial operator of one angular mode after the unitary reduction to the
// half-density picture: -u'' + V_k u on (0, R), with the Friedrichs branch
// selected at each conic tip.
struct ModeOperator {
  int k = 0;
  const Profile* prof = nullptr;
  std::function<double(double)> V;
  bool cap = false;                    // Dirichlet condition at r = R
  double nu0 = 0.0, nuR = 0.0;         // tip indices k / c
  std::array<double, 3> vc0{}, vcR{};  // v_{-1}, v_0, v_1 of r^2 V - (nu^2 - 1/4)
};

ModeOperator build_mode_operator(const Profile& p, int k);

struct ModeEigenvalues {
  std::vector<double> lambda;
  std::vector<double> err;  // certified two-sided bounds from extrapolation
  // first eigenvalue beyond lambda_max, if the ladder resolved one; used to
  // place the completeness check in a spectral gap
  double first_above = std::numeric_limits<double>::infinity();
};

// All eigenvalues of the mode below lambda_max, each certified to
// err <= tol * max(|lambda|, 1) by a three-grid Richardson ladder.
// Throws std::runtime_error if certification fails at the maximum grid.
ModeEigenvalues mode_eigenvalues(const ModeOperator& op, double lambda_max,
                                 double tol);

// Independent oscillation count: number of eigenvalues below lambda by
// integrating the phase equation theta' = cos^2 + (lambda - V) sin^2.
int prufer_count(const ModeOperator& op, double lambda);

struct SpectrumEntry {
  double lambda;
  double err;
  int k;     // angular mode
  int n;     // 1-based index within the mode
  int mult;  // 1 for k = 0, else 2
};

struct Spectrum {
  std::vector<SpectrumEntry> entries;  // sorted by lambda
  double lambda_max = 0.0;
};

// Merged spectrum over all contributing modes (min V_k > lambda_max stops
// the mode ladder); every mode's completeness is cross-checked against the
// phase count at a spectral-gap midpoint.
Spectrum full_spectrum(const Profile& p, double lambda_max, double tol,
                       int threads = 1);

}  // namespace conic

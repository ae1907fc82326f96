#pragma once

#include <array>
#include <vector>

#include "conic/profile.hpp"
#include "conic/spectral.hpp"

namespace conic {

// Z(t) = sum over modes of mult * exp(-t*lambda), compensated summation.
double heat_trace(const Spectrum& spec, double t);

// First-order propagated uncertainty of Z(t) from the per-mode error bounds.
double heat_trace_error(const Spectrum& spec, double t);

// Two-sided envelope  slope*l + c_half_lo*sqrt(l) + c_zero_lo  <=  N(l)  <=
// slope*l + c_half*sqrt(l) + c_zero  for l >= cutoff.  The part of Z(t) the
// truncated spectrum misses is one-signed, so it is added back as the
// midpoint of the two induced tail integrals, with the half-width as its
// uncertainty; bounding alone would leave a systematic deficit in the data.
struct TailEnvelope {
  double area_slope = 0;      // exact leading slope, area / (4 pi)
  double c_half = 0;
  double c_zero = 0;
  double c_half_lo = 0;
  double c_zero_lo = 0;
  double cutoff = 0;
  double count_at_cutoff = 0; // modes (with multiplicity) at or below the cutoff

  double bound(double t) const;     // upper bound on the missing tail
  double estimate(double t) const;  // midpoint of the two tail integrals
  double half_width(double t) const;
};

TailEnvelope make_tail_envelope(const Spectrum& spec, double area);

// One basis function t^power, times log t when log is set.
struct BasisTerm {
  double power = 0;
  bool log = false;
};

std::vector<BasisTerm> cap_basis(bool with_log);
std::vector<BasisTerm> closed_basis(bool with_log);

struct FitOptions {
  std::vector<BasisTerm> basis;
  double t_min = 0;
  double t_max = 0;
  int samples = 80;       // geometric grid over [t_min, t_max]
  int peel_samples = 0;  // >0: pin the 1/t term first on that prefix
};

struct FitResult {
  std::vector<BasisTerm> basis;
  std::vector<double> coeff;
  // independent-noise propagation combined with the response to smooth
  // correlated error shapes (constant, linear, quadratic in log t, each
  // bounded by sigma_i): the sample errors here are smooth and one-signed,
  // so the covariance alone would understate them badly
  std::vector<double> sigma;
  double condition = 0;     // singular-value ratio of the weighted design
  double rms_residual = 0;  // weighted, per degree of freedom
  // two guard powers past the requested basis are carried in the fit so the
  // first neglected expansion orders cannot leak into the reported
  // coefficients; a third power one step further is probed and folded into
  // the weights as a truncation floor.  All three are kept as diagnostics.
  std::array<double, 3> guard_power{{0, 0, 0}};
  std::array<double, 3> guard_value{{0, 0, 0}};
  std::array<double, 3> guard_sigma{{0, 0, 0}};

  double coefficient(double power, bool log = false) const;
  double sigma_of(double power, bool log = false) const;
};

// Weighted least squares of samples (ts, ys, sig) on basis + guard powers.
// With peel_samples > 0 the 1/t coefficient is fitted first on that small-t
// prefix and subtracted before the remaining terms are fitted, with the
// subtraction error carried through the weights and the coefficient errors;
// the joint fit (peel_samples = 0) is tighter and is the default.
FitResult fit_samples(const std::vector<double>& ts, const std::vector<double>& ys,
                      const std::vector<double>& sig,
                      const std::vector<BasisTerm>& basis, int peel_samples);

// Samples Z(t) on a geometric grid, corrects by the estimated spectral tail,
// and fits; sigma_i combines the tail half-width and the propagated mode
// errors.
FitResult fit_expansion(const Spectrum& spec, double area, const FitOptions& opt);

// Split of the fitted t^0 coefficient into curvature, boundary, and tip parts.
struct ConstantTermSplit {
  double total = 0;
  double interior = 0;  // (1/12pi) * integrated Gauss curvature
  double boundary = 0;  // f'(R)/6 for a cap, zero for closed surfaces
  double singular = 0;  // remainder, attributed to the conic tips
};

ConstantTermSplit decompose_t0(const FitResult& fit, const Profile& prof);

}  // namespace conic

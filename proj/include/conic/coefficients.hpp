#pragma once

#include "conic/profile.hpp"

namespace conic {

// How the tip parameter c enters the closed-form coefficients.  Sine treats c
// as the sine of the half-angle (the slope f'(0) of the profile); Tangent
// treats it as the tangent, i.e. the primitive reading 1/f'(0) = cot(alpha).
enum class AngleConvention { Sine, Tangent };

// t^0 contribution of one tip:  (1/s - s)/12  with s the effective sine.
double b0_tip(double c, AngleConvention conv = AngleConvention::Sine);

// t^{1/2} contribution of one curved tip:  5 kappa / (96 sqrt(pi) c).
double bhalf_tip(double c, double kappa);

// Finite-part evaluation of the same coefficient, regularizing the tip mode
// sum directly with the angular grading nu = k/c:
//
//   bhalf = kappa/(2 sqrt(pi) c) * [ psi(1/2)/4 - 2 G1(c) ]
//   G1(c) = -zeta'(-2)/c^2 - 1/48 - log(2 pi c)/8 - 17 pi^2 c^2/5760
//           + sum_{k>=1} [ (nu^2-1/4) psi(nu+1/2) - nu^2 log nu
//                          + log(nu)/4 - 1/24 + 17/(960 nu^2) ]
//
// The naive cot(alpha) closed form above disagrees with measured spectra for
// curved tips; this evaluation tracks them to the fit resolution.  It vanishes
// identically at c = 1 for every kappa.
double bhalf_tip_fp(double c, double kappa);

// Closed-form short-time coefficients assembled from the profile geometry.
// For caps the t^{1/2} boundary correction from the rim is not included;
// t_half covers the tip contributions only.
struct HeatPrediction {
  double t_inv = 0;            // coefficient of 1/t  (volume / 4 pi)
  double t_half_inv = 0;       // coefficient of t^{-1/2}  (-L / (8 sqrt(pi)) for caps)
  double t_zero = 0;           // full t^0 coefficient
  double t_zero_interior = 0;  // (1/12pi) * integrated Gauss curvature
  double t_zero_boundary = 0;  // f'(R)/6 for caps
  double t_zero_singular = 0;  // sum of tip t^0 contributions
  double t_half = 0;           // coefficient of t^{1/2} (tips only)
};

HeatPrediction predict(const Profile& prof,
                       AngleConvention conv = AngleConvention::Sine);

}  // namespace conic

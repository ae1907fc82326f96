#pragma once

namespace conic {

// Model operator on the half line: T_nu = -d^2/dr^2 + (nu^2 - 1/4)/r^2,
// Friedrichs realization.  d is the resolvent power.
struct ModelKernel {
  double nu;
  int d;
};

// Diagonal of (T_nu + z^2)^{-d} at r, built from the Bessel product
// r I_nu(zr) K_nu(zr) by repeated application of -(1/2z) d/dz.
double resolvent_diag(const ModelKernel& kern, double r, double z);

// Mellin transform Int_0^inf r^s diag[(T_nu + 1)^{-(d+1)}] dr, carrying the
// 1/d! of the resolvent-power normalization.  Valid on the strip
// max(-2-2d, -2-2nu) < s < -1.  Numeric route: analytic series on [0,1],
// direct quadrature on [1,40], asymptotic series beyond (the integrand is a
// small residue of cancelling Bessel terms at both ends, so the endpoints
// must be summed analytically).
double mellin_diag_quadrature(double nu, int d, double s);

// Same transform in closed Gamma form.
double mellin_diag_closed(double nu, int d, double s);

// n-th Dirichlet eigenvalue of angular mode k on the flat cone of slope c:
// the squared n-th zero of J_{k/c}.
double flat_cone_eigenvalue(double c, int k, int n);

}  // namespace conic

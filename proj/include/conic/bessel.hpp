#pragma once

namespace conic {

struct BesselIK {
  double i;
  double k;
};

// Modified Bessel pair I_nu(x), K_nu(x) for nu >= 0, x > 0.
// Power-series (Temme) branch below x = 2, continued fractions above,
// Wronskian-normalized; relative accuracy ~1e-13 across the working range.
BesselIK bessel_ik(double nu, double x);

// Scaled pair { e^{-x} I_nu(x), e^{x} K_nu(x) }; safe for large x.
BesselIK bessel_ik_scaled(double nu, double x);

double bessel_i(double nu, double x);
double bessel_k(double nu, double x);

double bessel_j(double nu, double x);

// n-th positive zero of J_nu (n >= 1): sequential sign-scan brackets
// (step below the minimal zero gap, so none can be skipped) polished
// by safeguarded Newton.
double bessel_j_zero(double nu, int n);

}  // namespace conic

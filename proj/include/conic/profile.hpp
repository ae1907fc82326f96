#pragma once
#include <functional>
#include <string>
#include <vector>

namespace conic {

enum class Topology { ClosedSpindle, DirichletCap };

// Outward-coordinate derivatives of the profile at a conic tip: with rho the
// distance from the tip, c = f'(0+), kappa = f''(0+), etc.  Both tips of a
// closed profile are described in their own outward coordinate.
struct TipJet {
  double c;
  double kappa;
  double f3;
  double f4;
};

struct TipInvariants {
  double c;
  double kappa;
};

struct Profile {
  double R = 0.0;
  Topology topology = Topology::ClosedSpindle;
  // Smooth evaluators valid on the open interval (0, R).
  std::function<double(double)> f, f1, f2, f3;
  std::vector<TipJet> tips;  // tips[0] at r = 0; tips[1] at r = R if conic
  std::string family;
  std::vector<double> params;
};

// f = c r on [0, 1], Dirichlet condition at the cap r = 1.  0 < c <= 1.
Profile flat_cone(double c);
// f = beta sin r on [0, pi], conic tips at both poles.
Profile spindle(double beta);
// f = c sin r + (kappa/2) sin^2 r on [0, pi].
Profile curved_spindle(double c, double kappa);
// f = c1 sin r + sum_j q[j-2] sin^j r (j >= 2) on [0, pi].
Profile sine_series(double c1, const std::vector<double>& q);

// Tip data read off the analytic jet (which == 0 or 1).
TipInvariants tip_invariants(const Profile& p, int which);
// Independent finite-difference reading from the derivative evaluators.
TipInvariants tip_invariants_fd(const Profile& p, int which);

double volume(const Profile& p);                     // 2 pi Int f dr
double gauss_curvature(const Profile& p, double r);  // -f''/f
double total_curvature(const Profile& p);            // Int K dA over the smooth part
// Same integral over [r0, r1]; exact via the endpoint slopes.
double total_curvature(const Profile& p, double r0, double r1);

// Structural checks: positivity on the interior, admissible tip slopes,
// consistency of jets with the evaluators.  Throws std::invalid_argument.
void validate_profile(const Profile& p);

}  // namespace conic

#include "conic/coefficients.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <stdexcept>

namespace conic {

double b0_tip(double c, AngleConvention conv) {
  if (!(c > 0.0)) throw std::invalid_argument("tip parameter must be positive");
  double s = conv == AngleConvention::Sine ? c : c / std::sqrt(1.0 + c * c);
  return (1.0 / s - s) / 12.0;
}

double bhalf_tip(double c, double kappa) {
  if (!(c > 0.0)) throw std::invalid_argument("tip parameter must be positive");
  return 5.0 * kappa / (96.0 * std::sqrt(M_PI) * c);
}

double bhalf_tip_fp(double c, double kappa) {
  if (!(c > 0.0)) throw std::invalid_argument("tip parameter must be positive");
  // zeta'(-2) = -zeta(3)/(4 pi^2)
  const double zeta_p_m2 = -boost::math::zeta(3.0) / (4.0 * M_PI * M_PI);
  const double psi_half = boost::math::digamma(0.5);
  double rem = 0.0;
  // The summand collapses to (457/80640) nu^-4 - (127/30720 + 31/32256) nu^-6
  // + O(nu^-8) once psi(nu+1/2) is expanded, so evaluate it through digamma
  // only while cancellation stays benign and switch to that tail form after.
  const double a4 = 457.0 / 80640.0;
  const double a6 = -(127.0 / 30720.0 + 31.0 / 32256.0);
  for (int k = 100000; k >= 1; --k) {
    double nu = k / c;
    if (nu >= 20.0) {
      double w = 1.0 / (nu * nu);
      rem += (a4 + a6 * w) * w * w;
    } else {
      double ln = std::log(nu);
      rem += (nu * nu - 0.25) * boost::math::digamma(nu + 0.5) -
             nu * nu * ln + 0.25 * ln - 1.0 / 24.0 +
             17.0 / (960.0 * nu * nu);
    }
  }
  double g1 = -zeta_p_m2 / (c * c) - 1.0 / 48.0 -
              std::log(2.0 * M_PI * c) / 8.0 -
              17.0 * M_PI * M_PI * c * c / 5760.0 + rem;
  return kappa * (0.25 * psi_half - 2.0 * g1) / (2.0 * std::sqrt(M_PI) * c);
}

HeatPrediction predict(const Profile& prof, AngleConvention conv) {
  HeatPrediction out;
  out.t_inv = volume(prof) / (4.0 * M_PI);
  out.t_zero_interior = total_curvature(prof) / (12.0 * M_PI);
  bool cap = prof.topology == Topology::DirichletCap;
  if (cap) {
    double rim = 2.0 * M_PI * prof.f(prof.R);
    out.t_half_inv = -rim / (8.0 * std::sqrt(M_PI));
    out.t_zero_boundary = prof.f1(prof.R) / 6.0;
  }
  int ntips = cap ? 1 : 2;
  for (int i = 0; i < ntips; ++i) {
    const TipJet& tip = prof.tips[i];
    out.t_zero_singular += b0_tip(tip.c, conv);
    out.t_half += bhalf_tip(tip.c, tip.kappa);
  }
  out.t_zero = out.t_zero_interior + out.t_zero_boundary + out.t_zero_singular;
  return out;
}

}  // namespace conic

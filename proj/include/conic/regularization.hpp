#pragma once
#include <functional>
#include <limits>
#include <vector>

namespace conic {

// Value of a meromorphic quantity at an evaluation point: the finite part
// plus the residue of a possible first-order pole there.
struct RegularizedValue {
  double regular = 0.0;
  double pole_residue = 0.0;
};

// Treatment of the formally divergent flat term of the tip sum.  Published
// keeps the zeta-reading of sum_k 1 used in the closed-form coefficient
// tables; Plain drops it (both continue the same convergent tail).
enum class SumScheme { Published, Plain };

double riemann_zeta(double s);

// Analytic continuation of  2 sum_{k>=1} (-k^2/c^2 - 1/4) G_k(s) - G_0(s)/4,
// G_k(s) = Gamma(k+1+s/2)/Gamma(k-s/2): exact head of `head_terms` plus a
// zeta-matched asymptotic tail.  The result is independent of head_terms up
// to the matching order; a first-order pole in s is reported via the residue.
RegularizedValue gamma_ratio_sum(double c, int d, double s,
                                 SumScheme scheme = SumScheme::Published,
                                 int head_terms = 50);

// Resolvent-side half-power coefficient of one tip of slope c and curvature
// kappa at resolvent power d, assembled through gamma_ratio_sum at s = -1.
double b_rho_1(double c, double kappa, int d,
               SumScheme scheme = SumScheme::Published);

// Coefficient family at resolvent power d.  On the heat side a[l] multiplies
// t^{l-1}, b[l] multiplies t^{l/2}, c[l] multiplies t^l log t; the resolvent
// side carries the corresponding inverse-power ladders.
struct CoefficientSet {
  int d = 2;
  std::vector<double> a, b, c;
};

CoefficientSet heat_from_resolvent(const CoefficientSet& rho);
CoefficientSet resolvent_from_heat(const CoefficientSet& heat);

// Integrand with an analytically summed head on [0, r0] (as a function of s,
// carrying its own pole bookkeeping), a quadrature body, and optionally an
// analytic tail beyond `cut`.
struct IntegrandDescriptor {
  std::function<double(double)> f;
  std::function<RegularizedValue(double)> head_integral;
  double r0 = 1.0;
  std::function<double(double)> tail_integral;  // may be empty
  double cut = std::numeric_limits<double>::infinity();
};

// Finite part of Int_0^inf r^s f(r) dr continued in s.
RegularizedValue finite_part_integral(const IntegrandDescriptor& dsc, double s);

// Descriptor whose head is the power-law expansion f ~ sum c_i r^{p_i}
// on (0, r0]; integrating a term across s + p_i + 1 = 0 yields a pole.
IntegrandDescriptor power_law_head(std::function<double(double)> f,
                                   std::vector<std::pair<double, double>> powers,
                                   double r0);

}  // namespace conic

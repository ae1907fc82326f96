#include "doctest.h"

#include "conic/model.hpp"
#include "conic/regularization.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "helpers.hpp"

using namespace conic;
using testutil::rel;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
}  // namespace

TEST_CASE("zeta reference values") {
  CHECK(rel(riemann_zeta(0.5), -1.4603545088095868129) < 1e-13);
  CHECK(rel(riemann_zeta(-0.5), -0.20788622497735456602) < 1e-13);
  CHECK(rel(riemann_zeta(-2.2), 0.0048792123593035946974) < 1e-12);
  CHECK(rel(riemann_zeta(3.7), 1.1062882414646792607) < 1e-13);
  CHECK(rel(riemann_zeta(1.5), 2.6123753486854883433) < 1e-13);
  CHECK(rel(riemann_zeta(2.0), kPi * kPi / 6.0) < 1e-14);
  CHECK(rel(riemann_zeta(-1.0), -1.0 / 12.0) < 1e-13);
  CHECK(rel(riemann_zeta(0.0), -0.5) < 1e-14);
  CHECK(std::abs(riemann_zeta(-2.0)) < 1e-15);  // trivial zero
  CHECK(std::abs(riemann_zeta(-6.0)) < 1e-15);
  CHECK(rel(riemann_zeta(-9.0), -1.0 / 132.0) < 1e-12);
  CHECK_THROWS_AS(riemann_zeta(1.0), std::domain_error);
}

TEST_CASE("regularized tip sum at the evaluation point") {
  // At s = -1 every gamma ratio collapses to 1 and the continuation is exact:
  // the published reading gives -5/24 for every slope, the plain reading 0.
  for (double c : {0.3, 0.5, 1.0}) {
    CAPTURE(c);
    auto pub = gamma_ratio_sum(c, 2, -1.0, SumScheme::Published);
    CHECK(std::abs(pub.regular - (-5.0 / 24.0)) < 1e-12);
    CHECK(std::abs(pub.pole_residue) < 1e-12);
    auto pl = gamma_ratio_sum(c, 2, -1.0, SumScheme::Plain);
    CHECK(std::abs(pl.regular) < 1e-12);
    CHECK(std::abs(pl.pole_residue) < 1e-12);
  }
}

TEST_CASE("regularized tip sum: head-length independence and reference value") {
  auto v50 = gamma_ratio_sum(0.5, 2, -1.2, SumScheme::Published, 50);
  auto v200 = gamma_ratio_sum(0.5, 2, -1.2, SumScheme::Published, 200);
  CHECK(std::abs(v50.regular - v200.regular) < 1e-9 * std::abs(v50.regular));
  CHECK(rel(v50.regular, -0.30596692361328472) < 1e-12);
  CHECK(std::abs(v50.pole_residue) < 1e-12);
  // the plain reading annihilates the whole sum off the pole as well
  auto pl = gamma_ratio_sum(0.5, 2, -1.2, SumScheme::Plain, 50);
  CHECK(std::abs(pl.regular) < 1e-10);
}

TEST_CASE("regularized tip sum rejects bad arguments") {
  CHECK_THROWS_AS(gamma_ratio_sum(0.0, 2, -1.0), std::domain_error);
  CHECK_THROWS_AS(gamma_ratio_sum(-0.5, 2, -1.0), std::domain_error);
  CHECK_THROWS_AS(gamma_ratio_sum(0.5, 0, -1.0), std::domain_error);
  CHECK_THROWS_AS(gamma_ratio_sum(0.5, 2, -2.0), std::domain_error);
  CHECK_THROWS_AS(gamma_ratio_sum(0.5, 2, 0.0), std::domain_error);
  CHECK_THROWS_AS(b_rho_1(0.5, 0.3, 1), std::domain_error);
}

TEST_CASE("half-power resolvent coefficient: closed form and symmetries") {
  auto closed = [](double c, double kappa, int d) {
    double fact = 1.0;
    for (int i = 2; i < d; ++i) fact *= i;  // (d-1)!
    return (kappa / c) * 5.0 * std::tgamma(d + 0.5) /
           (96.0 * std::sqrt(kPi) * fact);
  };
  for (int d : {2, 3, 4})
    for (double c : {0.3, 0.6, 1.0})
      for (double kappa : {-0.5, 0.4, 1.0}) {
        CAPTURE(d);
        CAPTURE(c);
        CAPTURE(kappa);
        CHECK(rel(b_rho_1(c, kappa, d), closed(c, kappa, d)) < 1e-10);
      }
  CHECK(rel(b_rho_1(0.5, 0.3, 2), 0.0234375) < 1e-12);  // (0.3/0.5) * 15/384
  // linear in the curvature, homogeneous of degree -1 in the slope
  double base = b_rho_1(0.4, 0.3, 3);
  CHECK(rel(b_rho_1(0.4, 0.9, 3), 3.0 * base) < 1e-11);
  CHECK(rel(b_rho_1(0.8, 0.3, 3), 0.5 * base) < 1e-10);
  CHECK(b_rho_1(0.4, 0.0, 3) == 0.0);
}

TEST_CASE("resolvent-to-heat conversion ladders") {
  CoefficientSet rho;
  rho.d = 3;
  rho.a = {1.25, -0.5, 2.0};
  rho.b = {0.7337, 0.25, -1.5};
  rho.c = {0.0, 0.125, 3.0};
  CoefficientSet h = heat_from_resolvent(rho);
  // the flat half-ladder entry converts with factor exactly one
  CHECK(h.b[0] == rho.b[0]);
  // spot factors at d = 3: a_0 gains Gamma(3)/Gamma(2) = 2, c_1 Gamma(3)/Gamma(4) = 1/3
  CHECK(rel(h.a[0], 2.0 * rho.a[0]) < 1e-15);
  CHECK(rel(h.c[1], rho.c[1] / 3.0) < 1e-15);
  CoefficientSet back = resolvent_from_heat(h);
  REQUIRE(back.a.size() == rho.a.size());
  REQUIRE(back.b.size() == rho.b.size());
  REQUIRE(back.c.size() == rho.c.size());
  for (std::size_t i = 0; i < rho.a.size(); ++i)
    CHECK(std::abs(back.a[i] - rho.a[i]) < 1e-14 * std::max(1.0, std::abs(rho.a[i])));
  for (std::size_t i = 0; i < rho.b.size(); ++i)
    CHECK(std::abs(back.b[i] - rho.b[i]) < 1e-14 * std::max(1.0, std::abs(rho.b[i])));
  for (std::size_t i = 0; i < rho.c.size(); ++i)
    CHECK(std::abs(back.c[i] - rho.c[i]) < 1e-14 * std::max(1.0, std::abs(rho.c[i])));
}

TEST_CASE("half-power chain collapses to the same heat coefficient for every power") {
  // b_rho_1(d) converted through the half-ladder must lose its d dependence
  double c = 0.6, kappa = 0.4;
  double want = 5.0 * kappa / (96.0 * std::sqrt(kPi) * c);
  std::vector<double> got;
  for (int d : {2, 3, 4}) {
    CoefficientSet rho;
    rho.d = d;
    rho.b = {0.0, b_rho_1(c, kappa, d)};
    got.push_back(heat_from_resolvent(rho).b[1]);
  }
  for (double g : got) CHECK(rel(g, want) < 1e-10);
  CHECK(rel(want, 0.019589916095408204408) < 1e-14);
}

TEST_CASE("finite-part integral of an exponential with a power-law head") {
  auto f = [](double r) { return std::exp(-r); };
  auto dsc = power_law_head(f, {{0.0, 1.0}, {1.0, -1.0}}, 1.0);
  // off the pole lattice the continuation is Gamma(s+1)
  auto v = finite_part_integral(dsc, -1.5);
  CHECK(rel(v.regular, -3.5449077018110320546) < 1e-8);  // Gamma(-1/2)
  CHECK(std::abs(v.pole_residue) < 1e-14);
  auto w = finite_part_integral(dsc, -0.5);
  CHECK(rel(w.regular, std::sqrt(kPi)) < 1e-8);  // Gamma(1/2)
  CHECK(std::abs(w.pole_residue) < 1e-14);
  // on the lattice the constant head term produces the pole of Gamma at 0
  auto p = finite_part_integral(dsc, -1.0);
  CHECK(rel(p.pole_residue, 1.0) < 1e-12);
  CHECK(std::abs(p.regular - (-kEulerGamma)) < 1e-8);
}

TEST_CASE("finite-part integral of a model kernel matches the transform") {
  // nu = 1 kernel at resolvent power 3 vanishes fast enough at the origin
  // that no head subtraction is needed; algebraic decay is handled by the
  // semi-infinite quadrature branch.
  auto f = [](double r) { return resolvent_diag({1.0, 3}, r, 1.0); };
  auto dsc = power_law_head(f, {}, 1.0);
  auto v = finite_part_integral(dsc, -1.5);
  CHECK(std::abs(v.pole_residue) < 1e-14);
  CHECK(rel(v.regular, mellin_diag_quadrature(1.0, 2, -1.5)) < 1e-8);
  CHECK(rel(v.regular, mellin_diag_closed(1.0, 2, -1.5)) < 1e-8);
}

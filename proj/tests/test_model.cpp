#include "doctest.h"

#include "conic/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "helpers.hpp"

using namespace conic;
using testutil::rel;
using testutil::snap26;

TEST_CASE("resolvent diagonal against reference values") {
  struct {
    double nu;
    int d;
    double r, z, want;
  } table[] = {
      {0.0, 2, 0.3, 1.0, 0.131262563684802484},
      {1.0, 3, 2.0, 1.0, 0.0952968746540252991},
      {2.5, 4, 5.0, 1.0, 0.0690345991578292531},
      {0.5, 1, 1.0, 1.0, 0.432332358381693654},
      {5.0, 3, 10.0, 1.0, 0.106806749022422459},
      {1.0, 2, 0.7, 3.0, 0.00650857190878443776},
  };
  for (const auto& c : table) {
    CAPTURE(c.nu);
    CAPTURE(c.d);
    CHECK(rel(resolvent_diag({c.nu, c.d}, c.r, c.z), c.want) < 1e-12);
  }
  // d=1 half-integer closed form: I_{1/2}(x) K_{1/2}(x) = (1 - e^{-2x})/(2x)
  for (double x : {0.4, 1.0, 3.3}) {
    double want = (1.0 - std::exp(-2.0 * x)) / (2.0 * x);
    CHECK(rel(resolvent_diag({0.5, 1}, x, 1.0), want) < 1e-13);
  }
}

TEST_CASE("scaling identity over random samples") {
  testutil::Rng rng(77);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    double nu = rng.uniform(0.0, 5.0);
    double r = snap26(rng.uniform(0.1, 5.0));
    double z = snap26(rng.uniform(0.5, 3.0));
    int d = 1 + (int)(rng.next() % 4);
    double lhs = resolvent_diag({nu, d}, r, z);
    double rhs = std::pow(z, -(2.0 * d - 1.0)) * resolvent_diag({nu, d}, z * r, 1.0);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("resolvent diagonal is positive and decreasing in z") {
  for (double nu : {0.0, 1.5}) {
    for (int d : {1, 2, 3}) {
      for (double r : {0.3, 1.0, 4.0}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double z : {0.5, 0.8, 1.3, 2.1, 3.4}) {
          double v = resolvent_diag({nu, d}, r, z);
          CHECK(v > 0.0);
          CHECK(v < prev);
          prev = v;
        }
      }
    }
  }
}

TEST_CASE("higher resolvent powers match a finite difference in the spectral variable") {
  // (T + z^2)^{-2}(r,r) = -(1/2z) d/dz (T + z^2)^{-1}(r,r)
  double h = 1e-4, z = 1.0, r = 1.0;
  for (double nu : {0.0, 2.0}) {
    double fd = -(resolvent_diag({nu, 1}, r, z + h) -
                  resolvent_diag({nu, 1}, r, z - h)) /
                (2.0 * h) / (2.0 * z);
    CHECK(std::abs(fd - resolvent_diag({nu, 2}, r, z)) < 1e-7);
  }
}

TEST_CASE("transform identity: quadrature route vs Gamma closed form") {
  double worst = 0.0;
  int npts = 0;
  for (double nu : {0.0, 0.5, 1.0, 2.0, 5.0}) {
    for (int d : {1, 2, 3}) {
      for (double s : {-1.2, -1.5, -1.9}) {
        double lo = std::max(-2.0 - 2.0 * d, -2.0 - 2.0 * nu);
        if (!(s > lo + 0.05)) continue;
        CAPTURE(nu);
        CAPTURE(d);
        CAPTURE(s);
        double q = mellin_diag_quadrature(nu, d, s);
        double c = mellin_diag_closed(nu, d, s);
        CHECK(rel(q, c) < 1e-6);
        worst = std::max(worst, rel(q, c));
        ++npts;
      }
    }
  }
  CHECK(npts >= 40);
}

TEST_CASE("Gamma closed form against reference values") {
  struct {
    double nu;
    int d;
    double s, want;
  } table[] = {
      {1.0, 2, -1.5, 0.28570857379423300797},
      {2.5, 3, -1.2, 0.55439184835425997158},
      {0.0, 1, -1.2, 1.7733747916280604335},
      {5.0, 3, -1.9, 0.022769516671181082237},
      {0.5, 1, -1.5, 0.6266570686577501256},
  };
  for (const auto& c : table) {
    CAPTURE(c.nu);
    CAPTURE(c.s);
    CHECK(rel(mellin_diag_closed(c.nu, c.d, c.s), c.want) < 1e-12);
  }
}

TEST_CASE("transform grows without bound toward the strip edge s = -1") {
  double prev = 0.0;
  for (int m = 2; m <= 6; ++m) {
    double v = std::abs(mellin_diag_closed(1.0, 2, -1.0 - std::pow(10.0, -m)));
    CHECK(v > prev);
    prev = v;
  }
  CHECK(prev > 1e4);
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(resolvent_diag({-0.5, 1}, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(resolvent_diag({1.0, 0}, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(resolvent_diag({1.0, 1}, 0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(resolvent_diag({1.0, 1}, 1.0, -2.0), std::domain_error);
  // s must lie strictly inside (max(-2-2d, -2-2nu), -1)
  CHECK_THROWS_AS(mellin_diag_quadrature(1.0, 2, -1.0), std::domain_error);
  CHECK_THROWS_AS(mellin_diag_quadrature(1.0, 2, -0.5), std::domain_error);
  CHECK_THROWS_AS(mellin_diag_quadrature(0.0, 3, -2.0), std::domain_error);
  CHECK_THROWS_AS(mellin_diag_closed(1.0, 2, -1.0), std::domain_error);
  CHECK_THROWS_AS(mellin_diag_closed(0.0, 3, -2.5), std::domain_error);
  CHECK_THROWS_AS(flat_cone_eigenvalue(0.0, 0, 1), std::domain_error);
  CHECK_THROWS_AS(flat_cone_eigenvalue(1.2, 0, 1), std::domain_error);
  CHECK_THROWS_AS(flat_cone_eigenvalue(0.5, -1, 1), std::domain_error);
  CHECK_THROWS_AS(flat_cone_eigenvalue(0.5, 0, 0), std::domain_error);
}

TEST_CASE("flat-cone eigenvalue ladder") {
  CHECK(rel(flat_cone_eigenvalue(1.0, 0, 1), 5.78318596294678452) < 1e-10);
  CHECK(rel(flat_cone_eigenvalue(0.5, 1, 1), 26.3746164271633908) < 1e-10);
  CHECK(rel(flat_cone_eigenvalue(0.5, 8, 15), 4847.8705127472618) < 1e-10);
  CHECK(rel(flat_cone_eigenvalue(0.3, 8, 15), 7048.6986148982028) < 1e-10);
  // strictly increasing in n
  for (int n = 1; n < 10; ++n)
    CHECK(flat_cone_eigenvalue(0.7, 2, n) < flat_cone_eigenvalue(0.7, 2, n + 1));
}

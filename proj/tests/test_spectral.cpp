#include "doctest.h"

#include "conic/model.hpp"
#include "conic/profile.hpp"
#include "conic/spectral.hpp"
#include "conic/trace.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "helpers.hpp"

using namespace conic;
using testutil::rel;

TEST_CASE("mode operator assembly") {
  Profile cone = flat_cone(0.5);
  ModeOperator op1 = build_mode_operator(cone, 1);
  CHECK(op1.nu0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(op1.cap);
  // flat cone: V = (nu^2 - 1/4)/r^2 exactly
  for (double r : {0.1, 0.37, 0.9})
    CHECK(rel(op1.V(r) * r * r, 3.75) < 1e-13);

  ModeOperator op3 = build_mode_operator(cone, 3);
  CHECK(op3.nu0 == doctest::Approx(6.0).epsilon(1e-14));

  Profile sph = spindle(1.0);
  ModeOperator s0 = build_mode_operator(sph, 0);
  CHECK(rel(s0.V(M_PI / 2), -0.5) < 1e-13);

  CHECK_THROWS_AS(build_mode_operator(sph, -1), std::invalid_argument);
}

TEST_CASE("tip expansion of the potential: r^2 V -> nu^2 - 1/4 with linear rate") {
  Profile p = curved_spindle(0.6, 0.4);
  for (int k : {0, 1, 2, 3}) {
    CAPTURE(k);
    ModeOperator op = build_mode_operator(p, k);
    double nu = op.nu0;
    double lead = nu * nu - 0.25;

    // the first correction is (kappa/c)(1/4 - nu^2) * r at both tips
    double want = (0.4 / 0.6) * (0.25 - nu * nu);
    CHECK(std::abs(op.vc0[0] - want) < 1e-12 * std::max(1.0, std::abs(want)));
    CHECK(std::abs(op.vcR[0] - want) < 1e-12 * std::max(1.0, std::abs(want)));

    // numeric consistency at r = 1e-3, 1e-4: e(r)/r is linear-in-r accurate,
    // so one Richardson step lands on the coefficient
    auto e_over_r = [&](double r) { return (op.V(r) * r * r - lead) / r; };
    double y3 = e_over_r(1e-3), y4 = e_over_r(1e-4);
    double extrap = (10.0 * y4 - y3) / 9.0;
    CHECK(std::abs(extrap - op.vc0[0]) < 1e-8);
    CHECK(std::abs(y4 - op.vc0[0]) < 0.12 * std::abs(y3 - op.vc0[0]) + 1e-10);
  }
}

TEST_CASE("V_k dominates V_0 pointwise") {
  Profile p = curved_spindle(0.6, 0.4);
  ModeOperator v0 = build_mode_operator(p, 0);
  for (int k : {1, 2, 5}) {
    ModeOperator vk = build_mode_operator(p, k);
    for (int i = 1; i <= 40; ++i) {
      double r = p.R * i / 41.0;
      CHECK(vk.V(r) >= v0.V(r));
    }
  }
}

TEST_CASE("flat-cone modes against the Bessel-zero ladder") {
  Profile cone = flat_cone(0.5);

  ModeOperator k0 = build_mode_operator(cone, 0);
  ModeEigenvalues e0 = mode_eigenvalues(k0, 250.0, 1e-8);
  REQUIRE(e0.lambda.size() >= 1);
  CHECK(rel(e0.lambda[0], 5.78318596294678452) < 1e-7);

  ModeOperator k1 = build_mode_operator(cone, 1);
  ModeEigenvalues e1 = mode_eigenvalues(k1, 250.0, 1e-8);
  REQUIRE(e1.lambda.size() == 4);  // j_{2,n}^2 < 250 for n <= 4
  CHECK(rel(e1.lambda[0], 26.3746164271633908) < 1e-7);
  for (std::size_t i = 0; i < e1.lambda.size(); ++i) {
    CHECK(e1.err[i] <= 1e-8 * std::max(std::abs(e1.lambda[i]), 1.0));
    CHECK(rel(e1.lambda[i], flat_cone_eigenvalue(0.5, 1, (int)i + 1)) < 1e-7);
  }
  // the gap sentinel sits above the truncation
  CHECK(e1.first_above > 250.0);

  CHECK(prufer_count(k1, 250.0) == 4);
}

TEST_CASE("solver matches the Bessel-zero ladder across slopes and modes") {
  // dense sweep at c = 0.5; spot modes for the flanking slopes (the full
  // three-slope sweep is exercised by the acceptance suite)
  auto check_mode = [](double c, int k, int nmax) {
    CAPTURE(c);
    CAPTURE(k);
    Profile cone = flat_cone(c);
    ModeOperator op = build_mode_operator(cone, k);
    double top = flat_cone_eigenvalue(c, k, nmax) * (1.0 + 1e-6) + 1e-6;
    ModeEigenvalues me = mode_eigenvalues(op, top, 1e-8);
    REQUIRE((int)me.lambda.size() == nmax);
    for (int n = 1; n <= nmax; ++n)
      CHECK(rel(me.lambda[n - 1], flat_cone_eigenvalue(c, k, n)) < 1e-7);
  };
  for (int k = 0; k <= 8; ++k) check_mode(0.5, k, 15);
  for (double c : {0.3, 0.8})
    for (int k : {0, 4, 8}) check_mode(c, k, 6);
}

TEST_CASE("sphere mode k=0: zero mode plus l(l+1)") {
  Profile sph = spindle(1.0);
  ModeOperator op = build_mode_operator(sph, 0);
  ModeEigenvalues me = mode_eigenvalues(op, 13.0, 1e-9);
  REQUIRE(me.lambda.size() == 4);
  CHECK(std::abs(me.lambda[0]) <= 1e-9);
  CHECK(rel(me.lambda[1], 2.0) < 1e-8);
  CHECK(rel(me.lambda[2], 6.0) < 1e-8);
  CHECK(rel(me.lambda[3], 12.0) < 1e-8);
  CHECK(prufer_count(op, 13.0) == 4);
  CHECK(prufer_count(build_mode_operator(sph, 1), 13.0) == 3);
}

TEST_CASE("full sphere spectrum assembles the classical multiplicities") {
  Profile sph = spindle(1.0);
  Spectrum spec = full_spectrum(sph, 13.0, 1e-9);

  // sorted, nonnegative within error, zero mode present
  for (std::size_t i = 1; i < spec.entries.size(); ++i)
    CHECK(spec.entries[i - 1].lambda <= spec.entries[i].lambda);
  for (const auto& e : spec.entries) CHECK(e.lambda >= -e.err);
  CHECK(std::abs(spec.entries.front().lambda) <= 1e-9);

  std::map<int, int> mult;  // keyed by round(lambda)
  for (const auto& e : spec.entries) {
    CHECK(rel(e.lambda < 0.5 ? 0.0 : e.lambda, e.lambda < 0.5 ? 0.0 : std::round(e.lambda)) < 1e-7);
    mult[(int)std::round(e.lambda)] += e.mult;
    CHECK(e.mult == (e.k == 0 ? 1 : 2));
  }
  REQUIRE(mult.size() == 4);
  CHECK(mult[0] == 1);
  CHECK(mult[2] == 3);
  CHECK(mult[6] == 5);
  CHECK(mult[12] == 7);
}

TEST_CASE("sphere completeness: (L+1)^2 states below L(L+1)+1") {
  Spectrum spec = full_spectrum(spindle(1.0), 31.0, 1e-9);
  int total = 0;
  for (const auto& e : spec.entries) total += e.mult;
  CHECK(total == 36);  // L = 5
}

TEST_CASE("closed spindle below the first positive eigenvalue: constants only") {
  Spectrum spec = full_spectrum(spindle(0.5), 0.5, 1e-9);
  REQUIRE(spec.entries.size() == 1);
  CHECK(std::abs(spec.entries[0].lambda) <= 1e-9);
  CHECK(spec.entries[0].mult == 1);
}

TEST_CASE("cap spectra are strictly positive") {
  Spectrum spec = full_spectrum(flat_cone(0.5), 100.0, 1e-8);
  REQUIRE(!spec.entries.empty());
  for (const auto& e : spec.entries) CHECK(e.lambda > 0.0);
}

TEST_CASE("smallest eigenvalue per mode is nondecreasing in k") {
  Spectrum spec = full_spectrum(spindle(0.5), 40.0, 1e-8);
  std::map<int, double> lowest;
  for (const auto& e : spec.entries)
    if (!lowest.count(e.k)) lowest[e.k] = e.lambda;  // entries sorted by lambda
  REQUIRE(lowest.size() >= 3);
  double prev = -1.0;
  for (const auto& [k, lam] : lowest) {
    CHECK(lam >= prev - 1e-9);
    prev = lam;
  }
}

TEST_CASE("multiplicity-2 layout reproduces the signed-mode sum") {
  // oracle case: flat cone, where the signed angular modes m = ..,-1,0,1,..
  // are enumerable independently via the Bessel ladder
  Spectrum spec = full_spectrum(flat_cone(0.5), 100.0, 1e-8);
  for (double t : {0.2, 0.6}) {
    double z = heat_trace(spec, t);
    double direct = 0.0;
    for (int m = -20; m <= 20; ++m) {
      for (int n = 1;; ++n) {
        double lam = flat_cone_eigenvalue(0.5, std::abs(m), n);
        if (lam > 100.0) break;
        direct += std::exp(-t * lam);
      }
    }
    CHECK(rel(z, direct) < 1e-7);
  }
}

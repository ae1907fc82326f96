#include "conic/bessel.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace conic {
namespace {

constexpr double kEps = 1e-16;
constexpr double kFpMin = 1e-300;
constexpr int kMaxIter = 20000;
constexpr double kPi = 3.14159265358979323846;

// Taylor coefficients of 1/Gamma(1+t) = sum a_m t^m.
constexpr double kInvGamma[] = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.04200263503409523553,
    0.16653861138229148950,
    -0.04219773455554433675,
    -0.00962197152787697356,
    0.00721894324666309954,
    -0.00116516759185906511,
    -0.00021524167411495097,
    0.00012805028238811619,
    -0.00002013485478078824,
    -0.00000125049348214267,
    0.00000113302723198170,
    -0.00000020563384169776,
    0.00000000611609510448,
    0.00000000500200764447,
    -0.00000000118127457049,
    0.00000000010434267117,
};

// Temme's Gamma_1, Gamma_2 for |mu| <= 1/2:
//   g1 = [1/Gamma(1-mu) - 1/Gamma(1+mu)] / (2 mu),   g2 = [.. + ..] / 2.
void temme_gammas(double mu, double& g1, double& g2) {
  double mu2 = mu * mu;
  g1 = 0.0;
  g2 = 0.0;
  double p = 1.0;
  for (int m = 0; 2 * m + 1 < (int)(sizeof(kInvGamma) / sizeof(double)); ++m) {
    g1 -= kInvGamma[2 * m + 1] * p;  // odd part / mu, sign flipped
    g2 += kInvGamma[2 * m] * p;
    p *= mu2;
  }
}

struct CorePair {
  double i_scaled;  // e^{-x} I_nu
  double k_scaled;  // e^{+x} K_nu
};

CorePair bessel_core(double nu, double x) {
  if (!(nu >= 0.0) || !(x > 0.0))
    throw std::domain_error("bessel_ik: need nu >= 0 and x > 0");

  int nl = (int)(nu + 0.5);
  double mu = nu - nl;  // |mu| <= 1/2
  double mu2 = mu * mu;
  double xi = 1.0 / x;
  double xi2 = 2.0 * xi;

  // CF1 for f = I'_nu / I_nu (modified Lentz).
  double h = nu * xi;
  if (h < kFpMin) h = kFpMin;
  double b = xi2 * nu;
  double d = 0.0;
  double c = h;
  for (int i = 1; i <= kMaxIter; ++i) {
    b += xi2;
    d = 1.0 / (b + d);
    c = b + 1.0 / c;
    double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }

  // Unnormalized downward recurrence of (I, I') from order nu to mu.
  double ril = kFpMin;
  double ripl = h * ril;
  const double ril1 = ril;
  double renorm = 1.0;  // product of applied rescalings
  double fact = nu * xi;
  for (int l = nl; l >= 1; --l) {
    double ritemp = fact * ril + ripl;
    fact -= xi;
    ripl = fact * ritemp + ril;
    ril = ritemp;
    if (std::abs(ril) > 1e250) {
      ril *= 1e-250;
      ripl *= 1e-250;
      renorm *= 1e-250;
    }
  }
  double f = ripl / ril;  // I'_mu / I_mu

  double rkmu, rk1;  // K_mu, K_{mu+1}, scaled by e^{x}
  if (x < 2.0) {
    // Temme series.
    double x2 = 0.5 * x;
    double pimu = kPi * mu;
    double fct = (std::abs(pimu) < 1e-12) ? 1.0 : pimu / std::sin(pimu);
    double dd = -std::log(x2);
    double e = mu * dd;
    double fct2 = (std::abs(e) < 1e-12) ? 1.0 : std::sinh(e) / e;
    double g1, g2;
    temme_gammas(mu, g1, g2);
    double gampl = g2 - mu * g1;  // 1/Gamma(1+mu)
    double gammi = g2 + mu * g1;  // 1/Gamma(1-mu)
    double ff = fct * (g1 * std::cosh(e) + g2 * fct2 * dd);
    double sum = ff;
    double ee = std::exp(e);
    double p = 0.5 * ee / gampl;
    double q = 0.5 / (ee * gammi);
    double cc = 1.0;
    double d2 = x2 * x2;
    double sum1 = p;
    for (int i = 1; i <= kMaxIter; ++i) {
      ff = (i * ff + p + q) / (i * i - mu2);
      cc *= d2 / i;
      p /= (i - mu);
      q /= (i + mu);
      double del = cc * ff;
      sum += del;
      double del1 = cc * (p - i * ff);
      sum1 += del1;
      if (std::abs(del) < std::abs(sum) * kEps) break;
    }
    double scale = std::exp(x);
    rkmu = sum * scale;
    rk1 = sum1 * xi2 * scale;
  } else {
    // CF2 (Steed) — naturally e^{x}-scaled.
    double bb = 2.0 * (1.0 + x);
    double dd = 1.0 / bb;
    double delh = dd;
    double hh = delh;
    double q1 = 0.0, q2 = 1.0;
    double a1 = 0.25 - mu2;
    double qq = a1, cc = a1;
    double aa = -a1;
    double ss = 1.0 + qq * delh;
    for (int i = 2; i <= kMaxIter; ++i) {
      aa -= 2 * (i - 1);
      cc = -aa * cc / i;
      double qnew = (q1 - bb * q2) / aa;
      q1 = q2;
      q2 = qnew;
      qq += cc * qnew;
      bb += 2.0;
      dd = 1.0 / (bb + aa * dd);
      delh = (bb * dd - 1.0) * delh;
      hh += delh;
      double dels = qq * delh;
      ss += dels;
      if (std::abs(dels / ss) < kEps) break;
    }
    hh = a1 * hh;
    rkmu = std::sqrt(kPi / (2.0 * x)) / ss;
    rk1 = rkmu * (mu + x + 0.5 - hh) * xi;
  }

  double rkmup = mu * xi * rkmu - rk1;           // K'_mu (scaled)
  double rimu_scaled = xi / (f * rkmu - rkmup);  // e^{-x} I_mu via Wronskian

  // I back up to order nu, K forward.
  double i_nu = rimu_scaled * (ril1 / ril) * renorm;
  for (int i = 1; i <= nl; ++i) {
    double rktemp = (mu + i) * xi2 * rk1 + rkmu;
    rkmu = rk1;
    rk1 = rktemp;
  }
  return {i_nu, rkmu};
}

}  // namespace

BesselIK bessel_ik_scaled(double nu, double x) {
  CorePair cp = bessel_core(nu, x);
  return {cp.i_scaled, cp.k_scaled};
}

BesselIK bessel_ik(double nu, double x) {
  CorePair cp = bessel_core(nu, x);
  double ex = std::exp(x);
  return {cp.i_scaled * ex, cp.k_scaled / ex};
}

double bessel_i(double nu, double x) { return bessel_ik(nu, x).i; }
double bessel_k(double nu, double x) { return bessel_ik(nu, x).k; }

double bessel_j(double nu, double x) { return boost::math::cyl_bessel_j(nu, x); }

namespace {

double bessel_j_prime(double nu, double x) {
  return (nu / x) * bessel_j(nu, x) - bessel_j(nu + 1.0, x);
}

// Bisection + safeguarded Newton inside a sign-change bracket.
double polish_zero(double nu, double lo, double hi) {
  double flo = bessel_j(nu, lo);
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    double fm = bessel_j(nu, mid);
    if ((flo > 0) == (fm > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-3) break;
  }
  double xz = 0.5 * (lo + hi);
  for (int it = 0; it < 60; ++it) {
    double fx = bessel_j(nu, xz);
    double dfx = bessel_j_prime(nu, xz);
    double step = fx / dfx;
    double xn = xz - step;
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);  // fall back to bisection
    if ((flo > 0) == (bessel_j(nu, xn) > 0))
      lo = xn;
    else
      hi = xn;
    if (std::abs(xn - xz) <= 1e-15 * xz) {
      xz = xn;
      break;
    }
    xz = xn;
  }
  return xz;
}

}  // namespace

double bessel_j_zero(double nu, int n) {
  if (nu < 0.0 || n < 1) throw std::domain_error("bessel_j_zero: need nu >= 0, n >= 1");
  // First zero: J_nu > 0 on (0, j_{nu,1}); the first negative lobe is wider
  // than pi, so a forward scan with step 3 cannot jump across it.
  double lo = std::max(nu, 0.5);
  double x = lo;
  double fx = bessel_j(nu, x);
  while (!(fx < 0.0)) {
    lo = x;
    x += 3.0;
    fx = bessel_j(nu, x);
  }
  double z = polish_zero(nu, lo, x);
  // Subsequent zeros: consecutive gaps stay above ~2.9 for every nu >= 0,
  // and lobes alternate sign, so a unit step cannot straddle two zeros.
  for (int m = 2; m <= n; ++m) {
    double a = z + 0.4;
    double fa = bessel_j(nu, a);
    double bpt = a;
    double fb = fa;
    while ((fa > 0.0) == (fb > 0.0)) {
      a = bpt;
      fa = fb;
      bpt = a + 1.0;
      fb = bessel_j(nu, bpt);
    }
    z = polish_zero(nu, a, bpt);
  }
  return z;
}

}  // namespace conic

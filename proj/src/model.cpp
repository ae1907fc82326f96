#include "conic/model.hpp"

#include "conic/bessel.hpp"
#include "conic/util.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace conic {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr int kSeriesTerms = 30;  // small-r series length
constexpr int kTailTerms = 14;    // asymptotic tail length
constexpr double kTailCut = 40.0;

// One term c * z^zp * r^rp * I_{nu+i}(zr) K_{nu+j}(zr) of the derivative
// algebra; the key is (zp, rp, i, j).
using TermKey = std::array<int, 4>;
using TermMap = std::map<TermKey, double>;

void add_term(TermMap& m, TermKey k, double c) {
  if (c != 0.0) m[k] += c;
}

// Apply D = -(1/2z) d/dz once, using
//   x I'_m(x) = x I_{m+1} + m I_m,   x K'_m(x) = -x K_{m+1} + m K_m.
TermMap apply_d(const TermMap& in, double nu) {
  TermMap out;
  for (const auto& [k, c] : in) {
    auto [zp, rp, i, j] = k;
    add_term(out, {zp - 2, rp, i, j},
             -0.5 * c * (zp + (nu + i) + (nu + j)));
    add_term(out, {zp - 1, rp + 1, i + 1, j}, -0.5 * c);
    add_term(out, {zp - 1, rp + 1, i, j + 1}, 0.5 * c);
  }
  return out;
}

// Terms of D^{p-1}[r I_nu(zr) K_nu(zr)] for resolvent power p, cached.
std::shared_ptr<const TermMap> kernel_terms(double nu, int p) {
  static std::mutex mu;
  static std::map<std::pair<double, int>, std::shared_ptr<const TermMap>> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find({nu, p});
  if (it != cache.end()) return it->second;
  TermMap t{{{0, 1, 0, 0}, 1.0}};
  for (int step = 1; step < p; ++step) t = apply_d(t, nu);
  auto sp = std::make_shared<const TermMap>(std::move(t));
  cache[{nu, p}] = sp;
  return sp;
}

double factorial(int n) { return std::tgamma(n + 1.0); }

double eval_terms(const TermMap& terms, double nu, int p, double r, double z) {
  double x = z * r;
  std::vector<BesselIK> bik(p);
  for (int m = 0; m < p; ++m) bik[m] = bessel_ik_scaled(nu + m, x);
  // quad-precision accumulation: the terms cancel strongly for small zr, and
  // prefactor rounding would otherwise be amplified by the cancellation ratio
  int zlo = 0, rhi = 0;
  for (const auto& [k, c] : terms) {
    (void)c;
    zlo = std::min(zlo, k[0]);
    rhi = std::max(rhi, k[1]);
  }
  std::vector<__float128> zpw(1 - zlo), rpw(rhi + 1);
  zpw[0] = 1;  // zpw[m] = z^{-m}; z-exponents are never positive
  for (int m = 1; m <= -zlo; ++m) zpw[m] = zpw[m - 1] / z;
  rpw[0] = 1;
  for (int m = 1; m <= rhi; ++m) rpw[m] = rpw[m - 1] * r;
  __float128 acc = 0;
  for (const auto& [k, c] : terms) {
    auto [zp, rp, i, j] = k;
    // scaled I and K: the e^{+-x} factors cancel inside each product
    acc += (__float128)c * zpw[-zp] * rpw[rp] *
           ((__float128)bik[i].i * (__float128)bik[j].k);
  }
  return (double)acc;
}

// q (q-1) ... (q-m+1); matches d^m/dw^m w^q = ff(q,m) w^{q-m}.
double ff(double q, int m) { return falling_factorial(q, m); }

// d^P/dw^P [w^q ln w] at w = 1 (the ff(q,P) ln 1 piece drops out).
double fl(double q, int P) {
  double acc = 0.0;
  double sgn = (P % 2 == 0) ? -1.0 : 1.0;  // (-1)^{P-1-j} at j = 0
  for (int j = 0; j <= P - 1; ++j) {
    acc += binomial(P, j) * ff(q, j) * sgn * factorial(P - 1 - j);
    sgn = -sgn;
  }
  return acc;
}

double harmonic(int n) {
  double h = 0.0;
  for (int i = 1; i <= n; ++i) h += 1.0 / i;
  return h;
}

double digamma_int(int n) { return -kEulerGamma + harmonic(n - 1); }

// Int_0^a r^{s + q} dr continued in s (q is the power carried by the series
// term; all divisors are strictly positive inside the Mellin strip).
struct SmallrInts {
  double s, a, lga2;
  double e1(double q) const { return std::pow(a, s + q + 1) / (s + q + 1); }
  double e2(double q) const {  // with an extra ln(r/2) in the integrand
    double u = s + q + 1;
    return std::pow(a, u) * (lga2 / u - 1.0 / (u * u));
  }
};

// Analytic Int_0^a r^s K_p(r) dr via the power series of I and K around 0,
// differentiated in w = z^2 under the integral sign.
double mellin_small_r(double nu, int p, double s, double a) {
  int P = p - 1;
  SmallrInts I{s, a, std::log(a / 2.0)};
  double pref = ((P % 2 == 0) ? 1.0 : -1.0) / factorial(P);
  int nn = (int)std::floor(nu + 0.5);
  if (std::abs(nu - nn) < 1e-8) {
    // integer order: K_n carries a logarithm
    int n = nn;
    std::vector<double> Pk(kSeriesTerms + 1), Rk(kSeriesTerms + 1);
    for (int k = 0; k <= kSeriesTerms; ++k) {
      Pk[k] = std::pow(2.0, -(n + 2 * k)) / (factorial(k) * factorial(n + k));
      Rk[k] = (digamma_int(k + 1) + digamma_int(n + k + 1)) * Pk[k];
    }
    std::vector<double> Qk(std::max(n, 0));
    for (int k = 0; k < n; ++k)
      Qk[k] = ((k % 2 == 0) ? 1.0 : -1.0) * std::pow(2.0, n - 2 * k) *
              factorial(n - k - 1) / factorial(k);
    double sgn_n = (n % 2 == 0) ? 1.0 : -1.0;
    NeumaierSum acc;
    for (int m = 0; m <= kSeriesTerms; ++m) {
      double Um = 0.0, Wm = 0.0;
      for (int aa = 0; aa <= m; ++aa) {
        Um += Pk[aa] * Pk[m - aa];
        Wm += Pk[aa] * Rk[m - aa];
      }
      double Vm = 0.0;
      for (int k = 0; k <= std::min(m, n - 1); ++k) Vm += Pk[m - k] * Qk[k];
      double qlog = n + m;            // w power of the x^{2n+2m} family
      double qr = 2.0 * (n + m) + 1;  // its r power (with the leading r)
      acc.add(-sgn_n * Um * (I.e2(qr) * ff(qlog, P) + 0.5 * I.e1(qr) * fl(qlog, P)));
      acc.add(sgn_n * 0.5 * Wm * I.e1(qr) * ff(qlog, P));
      acc.add(0.5 * Vm * I.e1(2.0 * m + 1) * ff(m, P));
    }
    return pref * acc.value();
  }
  // noninteger order: K_nu = pi/(2 sin pi nu) (I_{-nu} - I_nu)
  double gs = kPi / (2.0 * std::sin(kPi * nu));
  NeumaierSum acc;
  for (int m = 0; m <= kSeriesTerms; ++m) {
    double Am = 0.0, Bm = 0.0;
    for (int aa = 0; aa <= m; ++aa) {
      int bb = m - aa;
      Am += 1.0 / (factorial(aa) * factorial(bb) * std::tgamma(nu + aa + 1) *
                   std::tgamma(-nu + bb + 1));
      Bm += 1.0 / (factorial(aa) * factorial(bb) * std::tgamma(nu + aa + 1) *
                   std::tgamma(nu + bb + 1));
    }
    Am *= std::pow(4.0, -m);
    Bm *= std::pow(2.0, -2.0 * nu - 2 * m);
    acc.add(Am * ff(m, P) * I.e1(2.0 * m + 1));
    acc.add(-Bm * ff(nu + m, P) * I.e1(2.0 * nu + 2 * m + 1));
  }
  return pref * gs * acc.value();
}

// Hankel asymptotic coefficients: I_nu K_nu ~ (1/2x) sum c_m x^{-m}.
std::vector<double> ik_tail_coeffs(double nu, int M) {
  std::vector<double> ak(M + 1);
  ak[0] = 1.0;
  for (int k = 1; k <= M; ++k) {
    double num = 1.0;
    for (int j = 1; j <= k; ++j) num *= 4.0 * nu * nu - (2.0 * j - 1) * (2.0 * j - 1);
    ak[k] = num / (factorial(k) * std::pow(8.0, k));
  }
  std::vector<double> cm(M + 1, 0.0);
  for (int m = 0; m <= M; ++m)
    for (int k = 0; k <= m; ++k)
      cm[m] += ((k % 2 == 0) ? 1.0 : -1.0) * ak[k] * ak[m - k];
  return cm;
}

// Analytic Int_A^inf r^s K_p(r) dr from the large-argument expansion.
double mellin_tail(double nu, int p, double s, double A) {
  int P = p - 1;
  std::vector<double> cm = ik_tail_coeffs(nu, kTailTerms);
  NeumaierSum acc;
  for (int m = 0; m <= kTailTerms; ++m) {
    double qm = 1.0;
    for (int t = 0; t < P; ++t) qm *= m + 1 + 2 * t;
    acc.add(cm[m] * qm * std::pow(A, s + 1 - m) / (m - 1 - s));
  }
  return acc.value() / (factorial(P) * std::pow(2.0, p));
}

}  // namespace

double resolvent_diag(const ModelKernel& kern, double r, double z) {
  if (kern.nu < 0.0 || kern.d < 1)
    throw std::domain_error("resolvent_diag: need nu >= 0, d >= 1");
  if (!(r > 0.0) || !(z > 0.0))
    throw std::domain_error("resolvent_diag: need r > 0, z > 0");
  auto terms = kernel_terms(kern.nu, kern.d);
  return eval_terms(*terms, kern.nu, kern.d, r, z) / factorial(kern.d - 1);
}

double mellin_diag_quadrature(double nu, int d, double s) {
  if (nu < 0.0 || d < 1) throw std::domain_error("mellin: need nu >= 0, d >= 1");
  if (!(s > std::max(-2.0 - 2 * d, -2.0 - 2 * nu) && s < -1.0))
    throw std::domain_error("mellin: s outside the strip");
  int p = d + 1;
  auto terms = kernel_terms(nu, p);
  double invfact = 1.0 / factorial(p - 1);
  auto integrand = [&](double r) {
    return std::pow(r, s) * eval_terms(*terms, nu, p, r, 1.0) * invfact;
  };
  using boost::math::quadrature::gauss_kronrod;
  double err;
  double mid = gauss_kronrod<double, 31>::integrate(integrand, 1.0, kTailCut, 12,
                                                    1e-12, &err);
  return mellin_small_r(nu, p, s, 1.0) + mid + mellin_tail(nu, p, s, kTailCut);
}

double mellin_diag_closed(double nu, int d, double s) {
  if (nu < 0.0 || d < 1) throw std::domain_error("mellin: need nu >= 0, d >= 1");
  if (!(s > std::max(-2.0 - 2 * d, -2.0 - 2 * nu) && s < -1.0))
    throw std::domain_error("mellin: s outside the strip");
  return std::tgamma(d + 1 + s / 2) * std::tgamma(-0.5 - s / 2) *
         std::tgamma(nu + 1 + s / 2) /
         (4.0 * std::sqrt(kPi) * factorial(d) * std::tgamma(nu - s / 2));
}

double flat_cone_eigenvalue(double c, int k, int n) {
  if (!(c > 0.0 && c <= 1.0) || k < 0 || n < 1)
    throw std::domain_error("flat_cone_eigenvalue: bad arguments");
  double z = bessel_j_zero((double)k / c, n);
  return z * z;
}

}  // namespace conic

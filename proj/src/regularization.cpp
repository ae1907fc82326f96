#include "conic/regularization.hpp"

#include "conic/util.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <array>
#include <cmath>
#include <stdexcept>

namespace conic {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr int kExpOrder = 10;  // matched tail order in 1/k

// First-order jet in s: value and d/ds.
struct Dual {
  double v = 0.0, d = 0.0;
};
Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }
Dual operator*(double a, Dual b) { return {a * b.v, a * b.d}; }

// Truncated power series in the auxiliary variable u = 1/k with Dual
// coefficients; long enough for the matched tail.
struct Series {
  std::array<Dual, kExpOrder + 1> c{};
};

Series mul(const Series& a, const Series& b) {
  Series r;
  for (int i = 0; i <= kExpOrder; ++i)
    for (int j = 0; i + j <= kExpOrder; ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
  return r;
}

Series exp_series(const Series& s) {  // requires s.c[0] == 0
  Series e;
  e.c[0] = {1.0, 0.0};
  for (int n = 1; n <= kExpOrder; ++n) {
    Dual acc{0.0, 0.0};
    for (int j = 1; j <= n; ++j) acc = acc + (double)j * (s.c[j] * e.c[n - j]);
    e.c[n] = (1.0 / n) * acc;
  }
  return e;
}

Dual bernoulli_poly(int n, Dual x, const std::vector<double>& bnum) {
  Dual acc{0.0, 0.0};
  Dual p{1.0, 0.0};  // x^0
  // sum_k C(n,k) B_{n-k} x^k  (equivalent ordering of the usual formula)
  for (int k = 0; k <= n; ++k) {
    acc = acc + (binomial(n, k) * bnum[n - k]) * p;
    p = p * x;
  }
  return acc;
}

// Coefficients e_m(s) of G_k(s) = k^{1+s} (1 + sum_m e_m(s) k^{-m}), from the
// symmetric ratio Gamma(w + delta)/Gamma(w - delta) at w = k + 1/2,
// delta = (1+s)/2, re-expanded around k.  e_1 cancels identically and every
// e_m vanishes at s = -1.
std::array<Dual, kExpOrder + 1> tail_coeffs(double s0) {
  Dual delta{(1.0 + s0) / 2.0, 0.5};
  Dual one_plus_s{1.0 + s0, 1.0};
  auto bnum = bernoulli_numbers(kExpOrder + 2);

  // log(1 + u/2) and t = u/(1 + u/2) as series in u
  Series logw, t;
  for (int m = 1; m <= kExpOrder; ++m) {
    double half_m = std::pow(0.5, m);
    logw.c[m] = {((m % 2 == 1) ? 1.0 : -1.0) * half_m / m, 0.0};
    t.c[m] = {((m % 2 == 1) ? 1.0 : -1.0) * half_m * 2.0, 0.0};  // u (-u/2)^{m-1}
  }

  Series lng;
  for (int m = 1; m <= kExpOrder; ++m) lng.c[m] = one_plus_s * logw.c[m];
  Series tp = t;
  for (int j = 1; j <= kExpOrder; ++j) {
    int n = j + 1;
    Dual pj = (((j % 2 == 0) ? -1.0 : 1.0) / (double)(j * (j + 1))) *
              (bernoulli_poly(n, delta, bnum) -
               bernoulli_poly(n, Dual{-delta.v, -delta.d}, bnum));
    for (int m = j; m <= kExpOrder; ++m) lng.c[m] = lng.c[m] + pj * tp.c[m];
    if (j < kExpOrder) tp = mul(tp, t);
  }
  return exp_series(lng).c;
}

double rising_factorial(double s, int m) {
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= s + i;
  return r;
}

double zeta_euler_maclaurin(double s) {
  const int N = 24, J = 13;
  static const std::vector<double> bnum = bernoulli_numbers(2 * J + 1);
  NeumaierSum acc;
  for (int k = 1; k < N; ++k) acc.add(std::pow(k, -s));
  acc.add(std::pow(N, 1.0 - s) / (s - 1.0));
  acc.add(0.5 * std::pow(N, -s));
  double fact = 1.0;
  for (int j = 1; j <= J; ++j) {
    fact *= (2.0 * j) * (2.0 * j - 1.0);
    acc.add(bnum[2 * j] / fact * rising_factorial(s, 2 * j - 1) *
            std::pow(N, -s - 2 * j + 1));
  }
  return acc.value();
}

}  // namespace

double riemann_zeta(double s) {
  if (s == 1.0) throw std::domain_error("riemann_zeta: pole at s = 1");
  if (s < -4.0) {
    // reflection onto the convergent side
    return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(kPi * s / 2.0) *
           std::tgamma(1.0 - s) * zeta_euler_maclaurin(1.0 - s);
  }
  return zeta_euler_maclaurin(s);
}

namespace {

// W * zeta(arg(s)) with arg moving linearly in s; splits off the pole when
// arg sits on 1.
void add_zeta_term(Dual W, double arg0, double darg, RegularizedValue& out) {
  if (std::abs(arg0 - 1.0) < 1e-9) {
    out.pole_residue += W.v / darg;
    out.regular += W.v * kEulerGamma + W.d / darg;
  } else {
    out.regular += W.v * riemann_zeta(arg0);
  }
}

}  // namespace

RegularizedValue gamma_ratio_sum(double c, int d, double s, SumScheme scheme,
                                 int head_terms) {
  if (!(c > 0.0) || d < 1) throw std::domain_error("gamma_ratio_sum: bad c or d");
  if (!(s > -2.0 && s < 0.0))
    throw std::domain_error("gamma_ratio_sum: s outside (-2, 0)");
  const int K = head_terms;
  RegularizedValue out;
  NeumaierSum head;
  for (int k = 1; k <= K; ++k) {
    double gk = std::exp(std::lgamma(k + 1 + s / 2) - std::lgamma(k - s / 2));
    head.add(2.0 * (-(double)k * k / (c * c) - 0.25) * gk);
  }
  head.add(-0.25 * std::tgamma(1 + s / 2) / std::tgamma(-s / 2));

  auto em = tail_coeffs(s);
  em[0] = {1.0, 0.0};
  const double gA = -2.0 / (c * c);  // k^2 group
  const double gB = -0.5;            // flat group
  NeumaierSum partial;
  for (int m = 0; m <= kExpOrder; ++m) {
    // sum_{k>K} k^{q-m} = zeta(m-q) - sum_{k<=K} k^{q-m}, q = 3+s and 1+s
    add_zeta_term(gA * em[m], m - 3.0 - s, -1.0, out);
    double argB = (m == 0 && scheme == SumScheme::Published) ? (-2.0 - s)
                                                             : (m - 1.0 - s);
    add_zeta_term(gB * em[m], argB, -1.0, out);
    for (int k = 1; k <= K; ++k) {
      partial.add(-(gA * em[m]).v * std::pow(k, 3.0 + s - m));
      partial.add(-(gB * em[m]).v * std::pow(k, 1.0 + s - m));
    }
  }
  out.regular += head.value() + partial.value();
  return out;
}

double b_rho_1(double c, double kappa, int d, SumScheme scheme) {
  if (d < 2) throw std::domain_error("b_rho_1: need d >= 2");
  RegularizedValue S = gamma_ratio_sum(c, d, -1.0, scheme);
  if (std::abs(S.pole_residue) > 1e-9 * std::max(1.0, std::abs(S.regular)))
    throw std::runtime_error("b_rho_1: pole fails to cancel at s = -1");
  return -d * (kappa / c) * S.regular * std::tgamma(d + 0.5) /
         (4.0 * std::sqrt(kPi) * std::tgamma(d + 1.0));
}

CoefficientSet heat_from_resolvent(const CoefficientSet& rho) {
  CoefficientSet h;
  h.d = rho.d;
  double gd = std::tgamma((double)rho.d);
  for (std::size_t l = 0; l < rho.a.size(); ++l)
    h.a.push_back(rho.a[l] * gd / std::tgamma(rho.d - 1.0 + l));
  for (std::size_t l = 0; l < rho.b.size(); ++l)
    h.b.push_back(rho.b[l] * gd / std::tgamma(rho.d + l / 2.0));
  for (std::size_t l = 0; l < rho.c.size(); ++l)
    h.c.push_back(rho.c[l] * gd / std::tgamma(rho.d + (double)l));
  return h;
}

CoefficientSet resolvent_from_heat(const CoefficientSet& heat) {
  CoefficientSet r;
  r.d = heat.d;
  double gd = std::tgamma((double)heat.d);
  for (std::size_t l = 0; l < heat.a.size(); ++l)
    r.a.push_back(heat.a[l] * std::tgamma(heat.d - 1.0 + l) / gd);
  for (std::size_t l = 0; l < heat.b.size(); ++l)
    r.b.push_back(heat.b[l] * std::tgamma(heat.d + l / 2.0) / gd);
  for (std::size_t l = 0; l < heat.c.size(); ++l)
    r.c.push_back(heat.c[l] * std::tgamma(heat.d + (double)l) / gd);
  return r;
}

RegularizedValue finite_part_integral(const IntegrandDescriptor& dsc, double s) {
  RegularizedValue out = dsc.head_integral(s);
  auto g = [&](double r) { return std::pow(r, s) * dsc.f(r); };
  if (std::isfinite(dsc.cut)) {
    using boost::math::quadrature::gauss_kronrod;
    double err;
    out.regular +=
        gauss_kronrod<double, 31>::integrate(g, dsc.r0, dsc.cut, 12, 1e-12, &err);
    out.regular += dsc.tail_integral(s);
  } else {
    boost::math::quadrature::exp_sinh<double> es;
    out.regular += es.integrate(g, dsc.r0, std::numeric_limits<double>::infinity(),
                                1e-12);
  }
  return out;
}

IntegrandDescriptor power_law_head(std::function<double(double)> f,
                                   std::vector<std::pair<double, double>> powers,
                                   double r0) {
  IntegrandDescriptor dsc;
  dsc.f = f;
  dsc.r0 = r0;
  dsc.head_integral = [f, powers, r0](double s) {
    RegularizedValue rv;
    // analytic part of the head terms, continued across s + p + 1 = 0
    for (auto [p, cf] : powers) {
      double u = s + p + 1.0;
      if (std::abs(u) < 1e-12) {
        rv.pole_residue += cf;
        rv.regular += cf * std::log(r0);
      } else {
        rv.regular += cf * std::pow(r0, u) / u;
      }
    }
    // quadrature of the remainder f - head, vanishing at the origin
    auto rem = [&, s](double r) {
      double h = 0.0;
      for (auto [p, cf] : powers) h += cf * std::pow(r, p);
      return std::pow(r, s) * (f(r) - h);
    };
    boost::math::quadrature::tanh_sinh<double> ts(9);
    rv.regular += ts.integrate(rem, 0.0, r0, 1e-9);
    return rv;
  };
  return dsc;
}

}  // namespace conic

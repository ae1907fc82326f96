#include "conic/profile.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace conic {
namespace {

constexpr double kPi = 3.14159265358979323846;

// m-th derivative (m <= 3) of sin^j r, valid for r in the open interior.
double sinpow_deriv(int j, int m, double r) {
  double s = std::sin(r), co = std::cos(r);
  double jd = j;
  switch (m) {
    case 0:
      return std::pow(s, j);
    case 1:
      return jd * std::pow(s, j - 1) * co;
    case 2:
      return jd * (jd - 1) * std::pow(s, j - 2) * co * co - jd * std::pow(s, j);
    case 3: {
      double a = jd * (jd - 1) * (jd - 2);
      double b = 2 * jd * (jd - 1) + jd * jd;
      double t1 = (a == 0.0) ? 0.0 : a * std::pow(s, j - 3) * co * co * co;
      return t1 - b * std::pow(s, j - 1) * co;
    }
    default:
      throw std::logic_error("sinpow_deriv: m out of range");
  }
}

Profile make_sine_series(std::string family, std::vector<double> params) {
  // params[0] multiplies sin r, params[j-1] multiplies sin^j r.
  Profile p;
  p.R = kPi;
  p.topology = Topology::ClosedSpindle;
  p.family = std::move(family);
  p.params = params;
  auto eval = [params](int m, double r) {
    double acc = 0.0;
    for (std::size_t j = 0; j < params.size(); ++j)
      if (params[j] != 0.0) acc += params[j] * sinpow_deriv((int)j + 1, m, r);
    return acc;
  };
  p.f = [eval](double r) { return eval(0, r); };
  p.f1 = [eval](double r) { return eval(1, r); };
  p.f2 = [eval](double r) { return eval(2, r); };
  p.f3 = [eval](double r) { return eval(3, r); };
  // sin^j r = r^j - (j/6) r^{j+2} + O(r^{j+4}) gives the tip jet; the profile
  // is symmetric under r -> pi - r term by term, so both tips share it.
  double c = params.size() > 0 ? params[0] : 0.0;
  double kap = params.size() > 1 ? 2.0 * params[1] : 0.0;
  double f3t = -c + (params.size() > 2 ? 6.0 * params[2] : 0.0);
  double f4t = (params.size() > 1 ? -8.0 * params[1] : 0.0) +
               (params.size() > 3 ? 24.0 * params[3] : 0.0);
  p.tips = {{c, kap, f3t, f4t}, {c, kap, f3t, f4t}};
  return p;
}

}  // namespace

Profile flat_cone(double c) {
  if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("flat_cone: need 0 < c <= 1");
  Profile p;
  p.R = 1.0;
  p.topology = Topology::DirichletCap;
  p.family = "flat_cone";
  p.params = {c};
  p.f = [c](double r) { return c * r; };
  p.f1 = [c](double) { return c; };
  p.f2 = [](double) { return 0.0; };
  p.f3 = [](double) { return 0.0; };
  p.tips = {{c, 0.0, 0.0, 0.0}};
  validate_profile(p);
  return p;
}

Profile spindle(double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("spindle: need 0 < beta <= 1");
  Profile p = make_sine_series("spindle", {beta});
  validate_profile(p);
  return p;
}

Profile curved_spindle(double c, double kappa) {
  Profile p = make_sine_series("curved_spindle", {c, kappa / 2.0});
  p.params = {c, kappa};
  validate_profile(p);
  return p;
}

Profile sine_series(double c1, const std::vector<double>& q) {
  std::vector<double> params = {c1};
  params.insert(params.end(), q.begin(), q.end());
  Profile p = make_sine_series("sine_series", std::move(params));
  validate_profile(p);
  return p;
}

TipInvariants tip_invariants(const Profile& p, int which) {
  if (which < 0 || which >= (int)p.tips.size())
    throw std::invalid_argument("tip_invariants: no such tip");
  return {p.tips[which].c, p.tips[which].kappa};
}

TipInvariants tip_invariants_fd(const Profile& p, int which) {
  if (which < 0 || which >= (int)p.tips.size())
    throw std::invalid_argument("tip_invariants_fd: no such tip");
  double h = 1e-4;
  auto d1 = [&](double rho) { return which == 0 ? p.f1(rho) : -p.f1(p.R - rho); };
  auto d2 = [&](double rho) { return which == 0 ? p.f2(rho) : p.f2(p.R - rho); };
  // One Richardson step removes the O(h) term of the outward Taylor reading.
  double c = 2.0 * d1(h / 2) - d1(h);
  double kap = 2.0 * d2(h / 2) - d2(h);
  return {c, kap};
}

double volume(const Profile& p) {
  using boost::math::quadrature::gauss_kronrod;
  double err;
  double v = gauss_kronrod<double, 61>::integrate(p.f, 0.0, p.R, 12, 1e-12, &err);
  return 2.0 * kPi * v;
}

double gauss_curvature(const Profile& p, double r) { return -p.f2(r) / p.f(r); }

namespace {

// Slope with the endpoint values taken from the tip jets, where the raw
// evaluators are not defined.
double slope_at(const Profile& p, double r) {
  if (r <= 0.0) return p.tips.empty() ? p.f1(0.0) : p.tips[0].c;
  if (r >= p.R)
    return p.topology == Topology::DirichletCap ? p.f1(p.R) : -p.tips[1].c;
  return p.f1(r);
}

}  // namespace

double total_curvature(const Profile& p, double r0, double r1) {
  if (!(0.0 <= r0 && r0 < r1 && r1 <= p.R))
    throw std::invalid_argument("total_curvature: need 0 <= r0 < r1 <= R");
  // Int K dA over [r0, r1] = -2 pi Int f'' dr = 2 pi (f'(r0) - f'(r1)).
  return 2.0 * kPi * (slope_at(p, r0) - slope_at(p, r1));
}

double total_curvature(const Profile& p) { return total_curvature(p, 0.0, p.R); }

void validate_profile(const Profile& p) {
  if (!(p.R > 0.0)) throw std::invalid_argument("profile: R must be positive");
  for (const auto& tip : p.tips) {
    if (!(tip.c > 0.0 && tip.c <= 1.0))
      throw std::invalid_argument("profile: tip slope must lie in (0, 1]");
  }
  int n = 2000;
  for (int i = 1; i < n; ++i) {
    double r = p.R * i / n;
    if (!(p.f(r) > 0.0)) throw std::invalid_argument("profile: f must be positive inside");
  }
  if (p.topology == Topology::DirichletCap && !(p.f(p.R) > 0.0))
    throw std::invalid_argument("profile: cap radius must be positive");
  for (int which = 0; which < (int)p.tips.size(); ++which) {
    TipInvariants a = tip_invariants(p, which);
    TipInvariants b = tip_invariants_fd(p, which);
    if (std::abs(a.c - b.c) > 1e-6 * std::max(1.0, std::abs(a.c)) ||
        std::abs(a.kappa - b.kappa) > 1e-6 * std::max(1.0, std::abs(a.kappa)))
      throw std::invalid_argument("profile: tip jet disagrees with evaluators");
  }
}

}  // namespace conic

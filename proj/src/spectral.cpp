#include "conic/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace conic {
namespace {

constexpr double kDelta = 1e-3;  // tip offset of the regularized interval

struct Tridiag {
  std::vector<double> d, e;  // symmetric: diagonal and subdiagonal
};

// v-coefficients of the tip expansion r^2 V_k = nu^2 - 1/4 + v_{-1} r
// + v_0 r^2 + v_1 r^3 + ..., from the outward jet of the profile.
std::array<double, 3> tip_vcoeffs(const TipJet& t, double nu) {
  double b1 = t.kappa / (2.0 * t.c);
  double b2 = t.f3 / (6.0 * t.c);
  double b3 = t.f4 / (24.0 * t.c);
  double p1 = 2.0 * b2 - b1 * b1;
  double p2 = 3.0 * b3 - 3.0 * b1 * b2 + b1 * b1 * b1;
  double n2 = nu * nu;
  double vm1 = 2.0 * b1 * (0.25 - n2);
  double v0 = n2 * (3.0 * b1 * b1 - 2.0 * b2) + p1 + 0.25 * b1 * b1;
  double v1 = n2 * (-2.0 * b3 + 6.0 * b1 * b2 - 4.0 * b1 * b1 * b1) +
              1.5 * p2 + 0.5 * b1 * p1;
  return {vm1, v0, v1};
}

// Logarithmic derivative u'/u at distance delta from the tip for the
// Friedrichs branch u = r^{nu + 1/2} (1 + a1 r + a2 r^2 + a3 r^3), with the
// spectral parameter folded into v_0.
double series_robin(double nu, const std::array<double, 3>& vc, double lam,
                    double delta) {
  double vm1 = vc[0], v0 = vc[1] - lam, v1 = vc[2];
  double a1 = vm1 / (2.0 * nu + 1.0);
  double a2 = (a1 * vm1 + v0) / (2.0 * (2.0 * nu + 2.0));
  double a3 = (a2 * vm1 + a1 * v0 + v1) / (3.0 * (2.0 * nu + 3.0));
  double s = 1.0 + delta * (a1 + delta * (a2 + delta * a3));
  double sp = a1 + delta * (2.0 * a2 + delta * 3.0 * a3);
  return (nu + 0.5) / delta + sp / s;
}

// Finite-volume discretization of -(f w')'/f = lambda w in L^2(f dr) over
// the full interval; the natural boundary behavior needs no tip cutoff.
Tridiag assemble_flux(const Profile& p, int N) {
  double h = p.R / N;
  bool cap = p.topology == Topology::DirichletCap;
  int n = cap ? N : N + 1;  // unknowns; the cap endpoint is eliminated
  std::vector<double> face(N);
  for (int i = 0; i < N; ++i) face[i] = p.f(h * (i + 0.5));
  auto cell_mass = [&](int i) {
    double a = std::max(0.0, h * i - 0.5 * h);
    double b = std::min(p.R, h * i + 0.5 * h);
    double mid = 0.5 * (a + b);
    double fa = (a == 0.0) ? 0.0 : p.f(a);
    double fb = (b == p.R && !cap) ? 0.0 : p.f(b);
    return (b - a) / 6.0 * (fa + 4.0 * p.f(mid) + fb);
  };
  Tridiag t;
  t.d.resize(n);
  t.e.resize(n - 1);
  std::vector<double> m(n);
  for (int i = 0; i < n; ++i) m[i] = cell_mass(i);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    if (i > 0) diag += face[i - 1] / h;
    if (i < N) diag += face[i] / h;
    t.d[i] = diag / m[i];
  }
  for (int i = 0; i + 1 < n; ++i)
    t.e[i] = -face[i] / h / std::sqrt(m[i] * m[i + 1]);
  return t;
}

// Second-order scheme for -u'' + V u with series-Robin rows at conic ends;
// the boundary half-cells carry mass 1/2, including their potential term.
Tridiag assemble_uform(const ModeOperator& op, int N, double lam_ref) {
  const Profile& p = *op.prof;
  double left = kDelta;
  double right = op.cap ? p.R : p.R - kDelta;
  double h = (right - left) / N;
  int n = op.cap ? N : N + 1;  // Dirichlet cap point eliminated
  Tridiag t;
  t.d.resize(n);
  t.e.assign(n - 1, -1.0 / (h * h));
  std::vector<double> m(n, 1.0);
  m[0] = 0.5;
  if (!op.cap) m[n - 1] = 0.5;
  std::vector<double> V(n);
  for (int i = 0; i < n; ++i) V[i] = op.V(left + h * i);
  for (int i = 0; i < n; ++i) t.d[i] = 2.0 / (h * h) + V[i];
  double bL = series_robin(op.nu0, op.vc0, lam_ref, kDelta);
  t.d[0] = 1.0 / (h * h) + m[0] * V[0] + bL / h;
  if (!op.cap) {
    // outward series at the right tip; u'(r) = -u'(rho)
    double bR = -series_robin(op.nuR, op.vcR, lam_ref, kDelta);
    t.d[n - 1] = 1.0 / (h * h) + m[n - 1] * V[n - 1] - bR / h;
  }
  // similarity transform of the generalized problem onto standard form
  for (int i = 0; i < n; ++i) t.d[i] /= m[i];
  for (int i = 0; i + 1 < n; ++i) t.e[i] /= std::sqrt(m[i] * m[i + 1]);
  return t;
}

int sturm_count(const Tridiag& t, double x) {
  int cnt = 0;
  double q = 1.0;
  int n = (int)t.d.size();
  for (int i = 0; i < n; ++i) {
    q = t.d[i] - x - ((i > 0) ? t.e[i - 1] * t.e[i - 1] / q : 0.0);
    if (std::abs(q) < 1e-300) q = -1e-300;
    if (q < 0.0) ++cnt;
  }
  return cnt;
}

std::vector<double> eigenvalues_below(const Tridiag& t, double cut) {
  double lo0 = t.d[0];
  int n = (int)t.d.size();
  for (int i = 0; i < n; ++i) {
    double g = t.d[i] - std::abs(i > 0 ? t.e[i - 1] : 0.0) -
               std::abs(i < n - 1 ? t.e[i] : 0.0);
    lo0 = std::min(lo0, g);
  }
  int m = sturm_count(t, cut);
  std::vector<double> out;
  out.reserve(m);
  double lo_base = lo0;
  for (int j = 1; j <= m; ++j) {
    double lo = lo_base, hi = cut;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      if (sturm_count(t, mid) >= j)
        hi = mid;
      else
        lo = mid;
      if (hi - lo <= 1e-14 * std::max(1.0, std::abs(mid))) break;
    }
    out.push_back(0.5 * (lo + hi));
    lo_base = lo;  // spectra of a mode are simple: next root lies above
  }
  return out;
}

std::vector<double> grid_eigenvalues(const ModeOperator& op, int N, double cut,
                                     double lam_ref) {
  Tridiag t = (op.k == 0) ? assemble_flux(*op.prof, N)
                          : assemble_uform(op, N, lam_ref);
  return eigenvalues_below(t, cut);
}

}  // namespace

ModeOperator build_mode_operator(const Profile& p, int k) {
  if (k < 0) throw std::invalid_argument("build_mode_operator: k < 0");
  ModeOperator op;
  op.k = k;
  op.prof = &p;
  op.cap = p.topology == Topology::DirichletCap;
  double kk = k;
  op.V = [&p, kk](double r) {
    double f = p.f(r), f1 = p.f1(r), f2 = p.f2(r);
    return kk * kk / (f * f) + f2 / (2.0 * f) - f1 * f1 / (4.0 * f * f);
  };
  op.nu0 = kk / p.tips[0].c;
  op.vc0 = tip_vcoeffs(p.tips[0], op.nu0);
  if (!op.cap) {
    op.nuR = kk / p.tips[1].c;
    op.vcR = tip_vcoeffs(p.tips[1], op.nuR);
  }
  return op;
}

ModeEigenvalues mode_eigenvalues(const ModeOperator& op, double lambda_max,
                                 double tol) {
  double cut = lambda_max * 1.3 + 10.0;
  double lam_ref = lambda_max / 2.0;  // frozen reference for the Robin rows
  for (int base = 1024; base <= 4096; base *= 2) {
    std::vector<double> lam0 = grid_eigenvalues(op, base, cut, lam_ref);
    std::vector<double> lam1 = grid_eigenvalues(op, 2 * base, cut, lam_ref);
    std::vector<double> lam2 = grid_eigenvalues(op, 4 * base, cut, lam_ref);
    std::size_t m = std::min({lam0.size(), lam1.size(), lam2.size()});
    ModeEigenvalues out;
    bool ok = true;
    for (std::size_t i = 0; i < m; ++i) {
      double e1 = (4.0 * lam1[i] - lam0[i]) / 3.0;
      double e2 = (4.0 * lam2[i] - lam1[i]) / 3.0;
      double fin = (16.0 * e2 - e1) / 15.0;
      double err = std::max(std::abs(fin - e2), 1e-13 * std::max(std::abs(fin), 1.0));
      if (fin > lambda_max) {
        out.first_above = fin;
        break;
      }
      if (err > tol * std::max(std::abs(fin), 1.0)) {
        ok = false;
        break;
      }
      out.lambda.push_back(fin);
      out.err.push_back(err);
    }
    if (ok) return out;
  }
  throw std::runtime_error("mode_eigenvalues: cannot certify tolerance at max grid");
}

int prufer_count(const ModeOperator& op, double lambda) {
  // Scaled Pruefer phase: u = rho sin(theta)/sqrt(S), u' = rho sqrt(S)
  // cos(theta), with S frozen per step and the phase rebased across scale
  // switches.  S ~ sqrt(|lambda - V|) keeps the stiffness ~S on both sides of
  // a turning point: oscillatory regions advance at rate S, forbidden regions
  // relax to the stable equilibrium theta = pi/4 (mod pi) at rate 2S, where
  // the unscaled form has Jacobian |lambda - V| itself and explicit stepping
  // blows up near a tip.  Zero crossings of u stay at theta = n pi and
  // floor-counting is unchanged.
  const Profile& p = *op.prof;
  double left = kDelta;
  double right = op.cap ? p.R : p.R - kDelta;
  double bL = series_robin(op.nu0, op.vc0, lambda, kDelta);
  double scur = std::sqrt(std::max(std::abs(lambda - op.V(left)), 1.0));
  double theta = std::atan2(scur, bL);  // in (0, pi): u > 0 just inside
  double r = left;
  while (r < right) {
    double w = std::max(std::abs(lambda - op.V(r)), 1.0);
    double dist = op.cap ? r : std::min(r, p.R - r);
    double h = std::min({0.02, 0.4 / std::sqrt(w), 0.2 * dist});
    h = std::min(h, right - r);
    double snew =
        std::sqrt(std::max(std::abs(lambda - op.V(r + 0.5 * h)), 1.0));
    if (snew != scur) {
      // continuity of u'/u = S cot(theta) across the scale switch
      double n = std::floor(theta / M_PI);
      double phi = theta - n * M_PI;
      theta = n * M_PI + std::atan2(snew * std::sin(phi), scur * std::cos(phi));
      scur = snew;
    }
    auto fprime = [&](double rr, double th) {
      double c = std::cos(th), s = std::sin(th);
      return scur * c * c + (lambda - op.V(rr)) / scur * s * s;
    };
    double k1 = fprime(r, theta);
    double k2 = fprime(r + h / 2, theta + h / 2 * k1);
    double k3 = fprime(r + h / 2, theta + h / 2 * k2);
    double k4 = fprime(r + h, theta + h * k3);
    theta += h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    r += h;
  }
  if (op.cap) return (int)std::floor(theta / M_PI);
  double bR = -series_robin(op.nuR, op.vcR, lambda, kDelta);
  double phi = std::atan2(scur, bR);  // in (pi/2, pi) for the decaying branch
  if (theta <= phi) return 0;
  return (int)std::floor((theta - phi) / M_PI) + 1;
}

Spectrum full_spectrum(const Profile& p, double lambda_max, double tol,
                       int threads) {
  if (!(lambda_max > 0.0) || !(tol > 0.0))
    throw std::invalid_argument("full_spectrum: bad lambda_max or tol");
  // modes stop contributing once min V_k exceeds the cutoff
  std::vector<ModeOperator> ops;
  for (int k = 0;; ++k) {
    ModeOperator op = build_mode_operator(p, k);
    if (k >= 1) {
      double vmin = std::numeric_limits<double>::infinity();
      int M = 4001;
      for (int i = 1; i < M; ++i)
        vmin = std::min(vmin, op.V(p.R * i / M));
      if (vmin > lambda_max) break;
    }
    ops.push_back(std::move(op));
  }

  std::vector<ModeEigenvalues> results(ops.size());
  std::vector<int> counts(ops.size());
  auto solve_range = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = a; i < b; ++i) {
      results[i] = mode_eigenvalues(ops[i], lambda_max, tol);
      // completeness: oscillation count at a gap midpoint must match
      double fa = results[i].first_above;
      double top = std::isfinite(fa) ? 0.5 * (lambda_max + fa) : lambda_max;
      counts[i] = prufer_count(ops[i], top);
    }
  };
  if (threads <= 1) {
    solve_range(0, ops.size());
  } else {
    std::vector<std::thread> pool;
    std::size_t per = (ops.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      std::size_t a = t * per, b = std::min(ops.size(), (t + 1) * per);
      if (a < b) pool.emplace_back(solve_range, a, b);
    }
    for (auto& th : pool) th.join();
  }

  Spectrum spec;
  spec.lambda_max = lambda_max;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const auto& me = results[i];
    if ((int)me.lambda.size() != counts[i])
      throw std::runtime_error("full_spectrum: phase count disagrees with solver");
    for (std::size_t j = 0; j < me.lambda.size(); ++j)
      spec.entries.push_back({me.lambda[j], me.err[j], ops[i].k, (int)j + 1,
                              ops[i].k == 0 ? 1 : 2});
  }
  std::sort(spec.entries.begin(), spec.entries.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) {
              return std::tie(a.lambda, a.k, a.n) < std::tie(b.lambda, b.k, b.n);
            });
  return spec;
}

}  // namespace conic

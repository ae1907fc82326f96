#include "conic/trace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "conic/util.hpp"

namespace conic {

double heat_trace(const Spectrum& spec, double t) {
  NeumaierSum s;
  for (const auto& e : spec.entries) s.add(e.mult * std::exp(-t * e.lambda));
  return s.value();
}

double heat_trace_error(const Spectrum& spec, double t) {
  NeumaierSum s;
  for (const auto& e : spec.entries) s.add(e.mult * t * e.err * std::exp(-t * e.lambda));
  return s.value();
}

namespace {

// t * int_L^inf exp(-t l) (slope l + ch sqrt(l) + cz - N(L)) dl: the tail of
// Z(t) when the counting function is continued by the given envelope
double tail_integral(const TailEnvelope& e, double t, double ch, double cz) {
  double head = e.area_slope * (e.cutoff + 1.0 / t) + ch * std::sqrt(e.cutoff) +
                cz - e.count_at_cutoff;
  return std::exp(-t * e.cutoff) * head +
         ch * 0.5 * std::sqrt(M_PI / t) * std::erfc(std::sqrt(t * e.cutoff));
}

}  // namespace

double TailEnvelope::bound(double t) const {
  return std::max(tail_integral(*this, t, c_half, c_zero), 0.0);
}

double TailEnvelope::estimate(double t) const {
  double hi = bound(t);
  double lo = std::clamp(tail_integral(*this, t, c_half_lo, c_zero_lo), 0.0, hi);
  return 0.5 * (hi + lo);
}

double TailEnvelope::half_width(double t) const {
  double hi = bound(t);
  double lo = std::clamp(tail_integral(*this, t, c_half_lo, c_zero_lo), 0.0, hi);
  return 0.5 * (hi - lo);
}

TailEnvelope make_tail_envelope(const Spectrum& spec, double area) {
  if (spec.entries.empty()) throw std::invalid_argument("empty spectrum");
  TailEnvelope env;
  env.area_slope = area / (4.0 * M_PI);
  env.cutoff = spec.lambda_max;

  // counting-function residual d = N(lambda) - slope*lambda at each jump,
  // sampled after the jump (upper value) and before it (lower value)
  std::vector<double> lam, resid, resid_lo;
  double count = 0;
  for (const auto& e : spec.entries) {
    resid_lo.push_back(count - env.area_slope * e.lambda);
    count += e.mult;
    lam.push_back(e.lambda);
    resid.push_back(count - env.area_slope * e.lambda);
  }
  env.count_at_cutoff = count;

  // two-parameter fit of the residual over the upper half of the range
  double lo = 0.5 * spec.lambda_max;
  double shh = 0, s1h = 0, s11 = 0, shd = 0, s1d = 0;
  std::size_t used = 0;
  for (std::size_t j = 0; j < lam.size(); ++j) {
    if (lam[j] < lo) continue;
    double x = std::sqrt(lam[j]);
    shh += x * x;
    s1h += x;
    s11 += 1.0;
    shd += x * resid[j];
    s1d += resid[j];
    ++used;
  }
  if (used >= 2) {
    double det = shh * s11 - s1h * s1h;
    if (std::abs(det) > 1e-12 * std::max(1.0, shh * s11)) {
      env.c_half = (shd * s11 - s1d * s1h) / det;
      env.c_zero = (shh * s1d - s1h * shd) / det;
    }
  }
  // inflate (deflate) the sqrt term and move the constant until every
  // observed jump lies below the upper (above the lower) envelope, so both
  // sides err on the safe side of the fit
  double ch = env.c_half, cz = env.c_zero;
  env.c_half = ch >= 0 ? 2.0 * ch : 0.5 * ch;
  env.c_half_lo = ch >= 0 ? 0.5 * ch : 2.0 * ch;
  env.c_zero_lo = cz;
  double up = 0, down = 0;
  for (std::size_t j = 0; j < lam.size(); ++j) {
    double x = std::sqrt(lam[j]);
    up = std::max(up, resid[j] - env.c_half * x - env.c_zero);
    down = std::max(down, env.c_half_lo * x + env.c_zero_lo - resid_lo[j]);
  }
  env.c_zero += up;
  env.c_zero_lo -= down;
  return env;
}

std::vector<BasisTerm> cap_basis(bool with_log) {
  std::vector<BasisTerm> b = {{-1.0, false}, {-0.5, false}, {0.0, false},
                              {0.5, false},  {1.0, false},  {1.5, false}};
  if (with_log) b.push_back({1.0, true});
  return b;
}

std::vector<BasisTerm> closed_basis(bool with_log) {
  std::vector<BasisTerm> b = {
      {-1.0, false}, {0.0, false}, {0.5, false}, {1.0, false}, {1.5, false}};
  if (with_log) b.push_back({1.0, true});
  return b;
}

namespace {

int find_term(const std::vector<BasisTerm>& basis, double power, bool log) {
  for (std::size_t j = 0; j < basis.size(); ++j) {
    if (basis[j].log == log && std::abs(basis[j].power - power) < 1e-12)
      return static_cast<int>(j);
  }
  return -1;
}

double basis_value(const BasisTerm& b, double t) {
  double v = std::pow(t, b.power);
  if (b.log) v *= std::log(t);
  return v;
}

struct WeightedFit {
  Eigen::VectorXd coeff;
  Eigen::VectorXd sigma;  // filled by systematic_sigma
  Eigen::MatrixXd gain;   // dcoeff_j / d(y_i / sig_i), p x n
  double condition = 0;
  double rms = 0;
};

WeightedFit weighted_lsq(const std::vector<BasisTerm>& basis, const std::vector<double>& ts,
                         const std::vector<double>& ys, const std::vector<double>& sig) {
  const int n = static_cast<int>(ts.size());
  const int p = static_cast<int>(basis.size());
  if (n < p + 1) throw std::invalid_argument("not enough samples for the requested basis");
  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    double w = 1.0 / sig[i];
    for (int j = 0; j < p; ++j) X(i, j) = w * basis_value(basis[j], ts[i]);
    y(i) = w * ys[i];
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
  WeightedFit out;
  out.coeff = svd.solve(y);
  const auto& s = svd.singularValues();
  out.condition = s(p - 1) > 0 ? s(0) / s(p - 1) : std::numeric_limits<double>::infinity();
  out.rms = std::sqrt((X * out.coeff - y).squaredNorm() / std::max(1, n - p));
  Eigen::VectorXd sinv(p);
  for (int k = 0; k < p; ++k) sinv(k) = s(k) > s(0) * 1e-290 ? 1.0 / s(k) : 0.0;
  out.gain = svd.matrixV() * sinv.asDiagonal() * svd.matrixU().transpose();
  return out;
}

// Coefficient errors: independent propagation (L2 row norms of the gain)
// combined with the response to smooth correlated error shapes phi(log t)
// bounded by sigma_i -- constant, linear, quadratic, plus caller-supplied
// shapes.  The dominant sample errors (tail estimate, truncation floor, a
// peeled subtraction) are smooth and one-signed, which the covariance alone
// cannot see.
void systematic_sigma(WeightedFit& f, const std::vector<double>& ts,
                      const std::vector<Eigen::VectorXd>& extra = {}) {
  const int n = static_cast<int>(ts.size());
  Eigen::VectorXd s2 = f.gain.rowwise().squaredNorm();
  double l0 = std::log(ts.front()), l1 = std::log(ts.back());
  double mid = 0.5 * (l0 + l1), half = std::max(0.5 * (l1 - l0), 1e-30);
  Eigen::VectorXd cst(n), lin(n), quad(n);
  for (int i = 0; i < n; ++i) {
    double x = (std::log(ts[i]) - mid) / half;
    cst(i) = 1.0;
    lin(i) = x;
    quad(i) = 2 * x * x - 1;
  }
  for (const Eigen::VectorXd* phi : {&cst, &lin, &quad}) {
    s2 += (f.gain * *phi).cwiseAbs2();
  }
  for (const auto& phi : extra) s2 += (f.gain * phi).cwiseAbs2();
  f.sigma = s2.cwiseSqrt();
}

}  // namespace

double FitResult::coefficient(double power, bool log) const {
  int j = find_term(basis, power, log);
  if (j < 0) throw std::out_of_range("basis term not in fit");
  return coeff[j];
}

double FitResult::sigma_of(double power, bool log) const {
  int j = find_term(basis, power, log);
  if (j < 0) throw std::out_of_range("basis term not in fit");
  return sigma[j];
}

FitResult fit_samples(const std::vector<double>& ts, const std::vector<double>& ys,
                      const std::vector<double>& sig,
                      const std::vector<BasisTerm>& basis, int peel_samples) {
  if (basis.empty()) throw std::invalid_argument("empty basis");
  const int n = static_cast<int>(ts.size());
  if (n < 2 * static_cast<int>(basis.size()))
    throw std::invalid_argument("need at least twice as many samples as basis terms");
  std::vector<double> sg = sig;
  for (double& s : sg) s = std::max(s, 1e-300);

  FitResult out;
  out.basis = basis;
  out.coeff.assign(basis.size(), 0.0);
  out.sigma.assign(basis.size(), 0.0);

  // Two guard powers past the basis join the fit: the weights collapse to
  // rounding level toward large t, so expansion orders the basis cannot
  // represent would otherwise be forced into the reported coefficients as a
  // fully correlated bias.  Unmodeled high-order content leaks mostly into
  // adjacent powers, so each guard damps what reaches the reported terms by
  // roughly an order of magnitude.
  double pmax = 0;
  for (const auto& b : basis) pmax = std::max(pmax, b.power);
  const std::array<double, 3> gp = {pmax + 0.5, pmax + 1.0, pmax + 1.5};
  std::vector<BasisTerm> full = basis;
  for (int m = 0; m < 2; ++m)
    if (find_term(full, gp[m], false) < 0) full.push_back({gp[m], false});
  while (n < static_cast<int>(full.size()) + 2 && full.size() > basis.size())
    full.pop_back();

  // Probe one order further; its magnitude becomes a truncation floor in the
  // weights, so a window stretched past the reach of the model widens the
  // errors instead of silently biasing the coefficients.
  std::vector<BasisTerm> prb = full;
  if (find_term(prb, gp[2], false) < 0) prb.push_back({gp[2], false});
  if (prb.size() > full.size() && n > static_cast<int>(prb.size()) + 1) {
    WeightedFit pre = weighted_lsq(prb, ts, ys, sg);
    systematic_sigma(pre, ts);
    int j3 = find_term(prb, gp[2], false);
    out.guard_power[2] = gp[2];
    out.guard_value[2] = pre.coeff(j3);
    out.guard_sigma[2] = pre.sigma(j3);
    double chi = std::abs(pre.coeff(j3)) + pre.sigma(j3);
    for (int i = 0; i < n; ++i) sg[i] += chi * std::pow(ts[i], gp[2]);
  }

  int inv = find_term(full, -1.0, false);
  int np = peel_samples;
  bool peel = inv >= 0 && np > static_cast<int>(full.size()) + 1 && np < n;
  WeightedFit fin;
  if (peel) {
    std::vector<double> tp(ts.begin(), ts.begin() + np);
    std::vector<double> yp(ys.begin(), ys.begin() + np);
    std::vector<double> sp(sg.begin(), sg.begin() + np);
    WeightedFit pre = weighted_lsq(full, tp, yp, sp);
    systematic_sigma(pre, tp);
    double a = pre.coeff(inv);
    double sa = pre.sigma(inv);

    // the subtraction injects an error of shape sa/t; widen the weights so
    // the second stage cannot be dragged by it, and propagate the shape
    // explicitly into the coefficient errors
    std::vector<BasisTerm> rest = full;
    rest.erase(rest.begin() + inv);
    std::vector<double> ys2 = ys, sg2 = sg;
    for (int i = 0; i < n; ++i) {
      ys2[i] -= a / ts[i];
      sg2[i] += sa / ts[i];
    }
    fin = weighted_lsq(rest, ts, ys2, sg2);
    Eigen::VectorXd inj(n);
    for (int i = 0; i < n; ++i) inj(i) = (sa / ts[i]) / sg2[i];
    systematic_sigma(fin, ts, {inj});
    // splice the peeled coefficient back so indexing below is uniform
    fin.coeff.conservativeResize(fin.coeff.size() + 1);
    fin.sigma.conservativeResize(fin.sigma.size() + 1);
    for (int j = static_cast<int>(fin.coeff.size()) - 1; j > inv; --j) {
      fin.coeff(j) = fin.coeff(j - 1);
      fin.sigma(j) = fin.sigma(j - 1);
    }
    fin.coeff(inv) = a;
    fin.sigma(inv) = sa;
  } else {
    fin = weighted_lsq(full, ts, ys, sg);
    systematic_sigma(fin, ts);
  }
  out.condition = fin.condition;
  out.rms_residual = fin.rms;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    int jj = find_term(full, basis[j].power, basis[j].log);
    out.coeff[j] = fin.coeff(jj);
    out.sigma[j] = fin.sigma(jj);
  }
  for (int m = 0; m < 2; ++m) {
    int jj = find_term(full, gp[m], false);
    out.guard_power[m] = gp[m];
    if (jj >= static_cast<int>(basis.size())) {  // true guard, not user-requested
      out.guard_value[m] = fin.coeff(jj);
      out.guard_sigma[m] = fin.sigma(jj);
    }
  }
  return out;
}

FitResult fit_expansion(const Spectrum& spec, double area, const FitOptions& opt) {
  if (!(opt.t_min > 0) || !(opt.t_max > opt.t_min))
    throw std::invalid_argument("bad fit window");
  if (opt.basis.empty()) throw std::invalid_argument("empty basis");
  TailEnvelope env = make_tail_envelope(spec, area);

  const int n = std::max(opt.samples, static_cast<int>(opt.basis.size()) + 4);
  std::vector<double> ts(n), ys(n), sig(n);
  double span = std::log(opt.t_max / opt.t_min);
  for (int i = 0; i < n; ++i) {
    double t = opt.t_min * std::exp(span * i / (n - 1.0));
    ts[i] = t;
    // add the estimated tail back: the raw sum is missing it entirely, and a
    // one-signed deficit would bias the small-t samples rather than widen them
    ys[i] = heat_trace(spec, t) + env.estimate(t);
    sig[i] = env.half_width(t) + heat_trace_error(spec, t) +
             1e-14 * std::abs(ys[i]) + 1e-300;
  }
  return fit_samples(ts, ys, sig, opt.basis, opt.peel_samples);
}

ConstantTermSplit decompose_t0(const FitResult& fit, const Profile& prof) {
  ConstantTermSplit out;
  out.total = fit.coefficient(0.0, false);
  out.interior = total_curvature(prof) / (12.0 * M_PI);
  out.boundary =
      prof.topology == Topology::DirichletCap ? prof.f1(prof.R) / 6.0 : 0.0;
  out.singular = out.total - out.interior - out.boundary;
  return out;
}

}  // namespace conic

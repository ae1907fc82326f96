#include "conic/cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "conic/model.hpp"
#include "conic/regularization.hpp"
#include "conic/util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace conic {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hex16(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& text) {
  fs::create_directories(dir.empty() ? "." : dir);
  fs::path p = fs::path(dir.empty() ? "." : dir) / name;
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + p.string());
}

GridSpec parse_grid(const json& j, const char* what) {
  GridSpec g;
  g.t_min = j.at("t_min").get<double>();
  g.t_max = j.at("t_max").get<double>();
  g.samples = j.at("samples").get<int>();
  if (!(g.t_min > 0) || !(g.t_max > g.t_min))
    throw std::invalid_argument(std::string("config: ") + what +
                                " needs 0 < t_min < t_max");
  if (g.samples < 4)
    throw std::invalid_argument(std::string("config: ") + what +
                                " needs at least 4 samples");
  return g;
}

std::string term_name(const BasisTerm& b) {
  if (b.power == 0.0) return b.log ? "log t" : "1";
  char buf[40];
  std::snprintf(buf, sizeof buf, "t^%g", b.power);
  std::string s = buf;
  if (b.log) s += " log t";
  return s;
}

double term_value(const BasisTerm& b, double t) {
  double v = std::pow(t, b.power);
  if (b.log) v *= std::log(t);
  return v;
}

std::optional<double> predicted_for(const BasisTerm& b, const HeatPrediction& pred,
                                    bool cap) {
  if (b.log) return std::nullopt;
  if (b.power == -1.0) return pred.t_inv;
  if (b.power == -0.5) return pred.t_half_inv;
  if (b.power == 0.0) return pred.t_zero;
  if (b.power == 0.5 && !cap) return pred.t_half;  // cap rim term has no closed form here
  return std::nullopt;
}

}  // namespace

AngleConvention convention_from_string(const std::string& name) {
  if (name == "sin") return AngleConvention::Sine;
  if (name == "tan") return AngleConvention::Tangent;
  throw std::invalid_argument("convention must be 'sin' or 'tan'");
}

Profile profile_from_config(const RunConfig& cfg) {
  const auto& q = cfg.params;
  auto need = [&](std::size_t n) {
    if (q.size() != n)
      throw std::invalid_argument("config: family '" + cfg.family + "' takes " +
                                  std::to_string(n) + " parameter(s)");
  };
  if (cfg.family == "flat_cone") {
    need(1);
    return flat_cone(q[0]);
  }
  if (cfg.family == "spindle") {
    need(1);
    return spindle(q[0]);
  }
  if (cfg.family == "curved_spindle") {
    need(2);
    return curved_spindle(q[0], q[1]);
  }
  if (cfg.family == "sine_series") {
    if (q.empty()) throw std::invalid_argument("config: sine_series needs parameters");
    return sine_series(q[0], std::vector<double>(q.begin() + 1, q.end()));
  }
  throw std::invalid_argument("config: unknown profile family '" + cfg.family + "'");
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  RunConfig cfg;
  try {
    const json& prof = j.at("profile");
    cfg.family = prof.at("family").get<std::string>();
    cfg.params = prof.at("params").get<std::vector<double>>();
    cfg.lambda_max = j.at("lambda_max").get<double>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("grid")) cfg.grid = parse_grid(j.at("grid"), "grid");
    if (j.contains("fit")) {
      const json& f = j.at("fit");
      cfg.fit = parse_grid(f, "fit");
      if (f.contains("log_terms")) cfg.log_terms = f.at("log_terms").get<bool>();
      if (f.contains("peel_samples"))
        cfg.peel_samples = f.at("peel_samples").get<int>();
    }
    if (j.contains("threads")) cfg.threads = j.at("threads").get<int>();
    if (j.contains("convention"))
      cfg.convention = j.at("convention").get<std::string>();
    if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
    if (j.contains("cache")) cfg.cache_dir = j.at("cache").get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!(cfg.lambda_max >= 0))
    throw std::invalid_argument("config: lambda_max must be nonnegative");
  if (!(cfg.tol > 0)) throw std::invalid_argument("config: tol must be positive");
  if (cfg.threads < 1) throw std::invalid_argument("config: threads must be >= 1");
  if (cfg.peel_samples < 0)
    throw std::invalid_argument("config: peel_samples must be nonnegative");
  convention_from_string(cfg.convention);
  if (cfg.grid.samples == 0 && cfg.fit.samples != 0) cfg.grid = cfg.fit;
  if (cfg.fit.samples == 0 && cfg.grid.samples != 0) cfg.fit = cfg.grid;
  if (cfg.fit.samples != 0 &&
      (cfg.fit.t_min < cfg.grid.t_min || cfg.fit.t_max > cfg.grid.t_max))
    throw std::invalid_argument("config: fit window lies outside the t-grid");
  profile_from_config(cfg);  // range validation
  return cfg;
}

std::string canonical_config(const RunConfig& cfg) {
  json j;
  j["profile"]["family"] = cfg.family;
  j["profile"]["params"] = cfg.params;
  j["lambda_max"] = cfg.lambda_max;
  j["tol"] = cfg.tol;
  if (cfg.grid.samples != 0)
    j["grid"] = {{"t_min", cfg.grid.t_min},
                 {"t_max", cfg.grid.t_max},
                 {"samples", cfg.grid.samples}};
  if (cfg.fit.samples != 0)
    j["fit"] = {{"t_min", cfg.fit.t_min},
                {"t_max", cfg.fit.t_max},
                {"samples", cfg.fit.samples},
                {"log_terms", cfg.log_terms},
                {"peel_samples", cfg.peel_samples}};
  j["threads"] = cfg.threads;
  j["convention"] = cfg.convention;
  j["out"] = cfg.out_dir;
  j["cache"] = cfg.cache_dir;
  return j.dump(2) + "\n";
}

std::string spectrum_to_csv(const Spectrum& spec) {
  std::string out = "# lambda_max=" + fmt17(spec.lambda_max) + "\n";
  out += "k,n,lambda,mult,err\n";
  for (const auto& e : spec.entries) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d,%d,%s,%d,%s\n", e.k, e.n,
                  fmt17(e.lambda).c_str(), e.mult, fmt17(e.err).c_str());
    out += buf;
  }
  return out;
}

Spectrum spectrum_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Spectrum spec;
  if (!std::getline(in, line) || line.rfind("# lambda_max=", 0) != 0)
    throw std::invalid_argument("spectrum csv: missing lambda_max header");
  spec.lambda_max = std::strtod(line.c_str() + std::strlen("# lambda_max="), nullptr);
  if (!std::getline(in, line) || line != "k,n,lambda,mult,err")
    throw std::invalid_argument("spectrum csv: bad column header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SpectrumEntry e;
    if (std::sscanf(line.c_str(), "%d,%d,%lf,%d,%lf", &e.k, &e.n, &e.lambda,
                    &e.mult, &e.err) != 5)
      throw std::invalid_argument("spectrum csv: malformed row");
    spec.entries.push_back(e);
  }
  return spec;
}

std::string cache_key(const RunConfig& cfg) {
  std::string s = std::string("solver-v") + kSolverVersion + "|" + cfg.family;
  for (double p : cfg.params) s += "|" + fmt17(p);
  s += "|L" + fmt17(cfg.lambda_max) + "|tol" + fmt17(cfg.tol);
  return hex16(fnv1a64(s));
}

bool cache_load(const std::string& dir, const std::string& key, std::string& csv) {
  std::ifstream in(fs::path(dir) / (key + ".csv"), std::ios::binary);
  if (!in) return false;
  std::string first;
  if (!std::getline(in, first)) return false;
  auto pos = first.find("fnv1a64=");
  if (pos == std::string::npos) return false;
  std::string want = first.substr(pos + std::strlen("fnv1a64="));
  std::ostringstream rest;
  rest << in.rdbuf();
  std::string body = rest.str();
  if (want != hex16(fnv1a64(body))) return false;  // corrupt entry reads as a miss
  csv = body;
  return true;
}

void cache_store(const std::string& dir, const std::string& key,
                 const std::string& csv) {
  fs::create_directories(dir);
  fs::path final_path = fs::path(dir) / (key + ".csv");
  fs::path tmp = final_path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << "# conic-cache fnv1a64=" << hex16(fnv1a64(csv)) << "\n" << csv;
    if (!out) throw std::runtime_error("cache write failed: " + tmp.string());
  }
  fs::rename(tmp, final_path);
}

std::vector<SelfCheck> run_self_checks() {
  std::vector<SelfCheck> out;
  char buf[200];

  {
    // transform identity: numeric three-piece route against the Gamma form
    double worst = 0;
    int npts = 0;
    for (double nu : {0.0, 0.5, 1.0, 2.5}) {
      for (int d : {1, 2, 3}) {
        for (double s : {-1.2, -1.5, -1.9}) {
          double lo = std::max(-2.0 - 2.0 * d, -2.0 - 2.0 * nu);
          if (!(s > lo + 0.05)) continue;
          double q = mellin_diag_quadrature(nu, d, s);
          double c = mellin_diag_closed(nu, d, s);
          worst = std::max(worst, std::abs(q - c) / std::abs(c));
          ++npts;
        }
      }
    }
    std::snprintf(buf, sizeof buf, "%d grid points, worst rel dev %.2e", npts, worst);
    out.push_back({"transform identity grid", worst < 1e-6, buf});
  }

  {
    // resolvent scaling: diag(nu,d)(r, z) = z^{-(2d-1)} diag(nu,d)(zr, 1).
    // Samples keep 26 mantissa bits so z*r is exact and the comparison probes
    // the identity rather than the rounding of the evaluation point.
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> unu(0.0, 5.0), ur(0.1, 5.0), uz(0.5, 3.0);
    auto snap = [](double v) {
      return std::ldexp(std::round(std::ldexp(v, 26 - std::ilogb(v) - 1)),
                        std::ilogb(v) + 1 - 26);
    };
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      double nu = unu(rng), r = snap(ur(rng)), z = snap(uz(rng));
      ModelKernel kern{nu, 1 + i % 4};
      double lhs = resolvent_diag(kern, r, z);
      double rhs = std::pow(z, -(2.0 * kern.d - 1.0)) * resolvent_diag(kern, z * r, 1.0);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
    }
    std::snprintf(buf, sizeof buf, "50 samples, worst rel dev %.2e", worst);
    out.push_back({"resolvent scaling identity", worst < 1e-12, buf});
  }

  {
    // regularized-sum chain vs the closed coefficient, and power independence
    double c = 0.6, kappa = 0.4;
    double heat_ref = bhalf_tip(c, kappa);
    double worst = 0, worst_d = 0;
    for (int d : {2, 3, 4}) {
      double chain = b_rho_1(c, kappa, d);
      double closed = (kappa / c) * 5.0 * std::tgamma(d + 0.5) /
                      (96.0 * std::sqrt(M_PI) * std::tgamma(double(d)));
      worst = std::max(worst, std::abs(chain - closed) / std::abs(closed));
      double heat = std::tgamma(double(d)) / std::tgamma(d + 0.5) * chain;
      worst_d = std::max(worst_d, std::abs(heat - heat_ref) / std::abs(heat_ref));
    }
    std::snprintf(buf, sizeof buf,
                  "d=2..4: worst rel dev %.2e vs closed, %.2e across powers", worst,
                  worst_d);
    out.push_back({"regularized-sum chain", worst < 1e-10 && worst_d < 1e-12, buf});
  }

  {
    // coefficient-ladder conversions: l=0 factor exact, round trip at 1e-14
    CoefficientSet rho;
    rho.d = 3;
    rho.a = {1.25, -0.4, 0.7};
    rho.b = {1.0, 0.31, -0.2};
    rho.c = {0.0, 0.11};
    CoefficientSet heat = heat_from_resolvent(rho);
    CoefficientSet back = resolvent_from_heat(heat);
    bool exact0 = heat.b[0] == rho.b[0];
    double worst = 0;
    auto cmp = [&](const std::vector<double>& x, const std::vector<double>& y) {
      for (std::size_t i = 0; i < x.size(); ++i)
        worst = std::max(worst,
                         std::abs(x[i] - y[i]) / std::max(1.0, std::abs(x[i])));
    };
    cmp(rho.a, back.a);
    cmp(rho.b, back.b);
    cmp(rho.c, back.c);
    std::snprintf(buf, sizeof buf, "l=0 factor %s, round trip dev %.2e",
                  exact0 ? "exact" : "NOT exact", worst);
    out.push_back({"coefficient conversions", exact0 && worst < 1e-14, buf});
  }

  return out;
}

namespace {

Spectrum load_or_compute(const RunConfig& cfg, const Profile& prof, bool& hit,
                         std::string& csv) {
  std::string key = cache_key(cfg);
  if (!cfg.cache_dir.empty() && cache_load(cfg.cache_dir, key, csv)) {
    try {
      Spectrum s = spectrum_from_csv(csv);
      hit = true;
      return s;
    } catch (const std::invalid_argument&) {
      // stale format: recompute below
    }
  }
  Spectrum s = full_spectrum(prof, cfg.lambda_max, cfg.tol, cfg.threads);
  csv = spectrum_to_csv(s);
  if (!cfg.cache_dir.empty()) cache_store(cfg.cache_dir, key, csv);
  hit = false;
  return s;
}

int cmd_spectrum(const RunConfig& cfg) {
  Profile prof = profile_from_config(cfg);
  bool hit = false;
  std::string csv;
  Spectrum spec = load_or_compute(cfg, prof, hit, csv);
  write_file(cfg.out_dir, "spectrum.csv", csv);
  if (spec.entries.empty())
    std::fprintf(stderr, "warning: no eigenvalues at or below lambda_max=%s\n",
                 fmt17(cfg.lambda_max).c_str());
  std::printf("%zu rows at or below lambda_max=%s (%s)\n", spec.entries.size(),
              fmt17(cfg.lambda_max).c_str(), hit ? "cache hit" : "computed");
  std::printf("wrote %s\n", (fs::path(cfg.out_dir) / "spectrum.csv").string().c_str());
  return 0;
}

int cmd_heat_trace(const RunConfig& cfg) {
  if (cfg.grid.samples == 0)
    throw std::invalid_argument("config: heat-trace needs a t-grid");
  Profile prof = profile_from_config(cfg);
  bool hit = false;
  std::string csv;
  Spectrum spec = load_or_compute(cfg, prof, hit, csv);
  TailEnvelope env = make_tail_envelope(spec, volume(prof));
  std::string out = "t,trace,tail_bound\n";
  int n = cfg.grid.samples;
  double span = std::log(cfg.grid.t_max / cfg.grid.t_min);
  for (int i = 0; i < n; ++i) {
    double t = cfg.grid.t_min * std::exp(span * i / (n - 1.0));
    out += fmt17(t) + "," + fmt17(heat_trace(spec, t)) + "," +
           fmt17(env.bound(t)) + "\n";
  }
  write_file(cfg.out_dir, "heat_trace.csv", out);
  std::printf("%d samples on [%s, %s]\n", n, fmt17(cfg.grid.t_min).c_str(),
              fmt17(cfg.grid.t_max).c_str());
  std::printf("wrote %s\n",
              (fs::path(cfg.out_dir) / "heat_trace.csv").string().c_str());
  return 0;
}

int cmd_fit(const RunConfig& cfg) {
  if (cfg.fit.samples == 0)
    throw std::invalid_argument("config: fit needs a window");
  Profile prof = profile_from_config(cfg);
  bool cap = prof.topology == Topology::DirichletCap;
  bool hit = false;
  std::string csv;
  Spectrum spec = load_or_compute(cfg, prof, hit, csv);

  FitOptions opt;
  opt.basis = cap ? cap_basis(cfg.log_terms) : closed_basis(cfg.log_terms);
  opt.t_min = cfg.fit.t_min;
  opt.t_max = cfg.fit.t_max;
  opt.samples = cfg.fit.samples;
  opt.peel_samples = cfg.peel_samples;
  double area = volume(prof);
  FitResult fit = fit_expansion(spec, area, opt);
  HeatPrediction pred = predict(prof, convention_from_string(cfg.convention));
  ConstantTermSplit split = decompose_t0(fit, prof);

  json jterms = json::array();
  std::printf("%-12s %-25s %-12s %-25s %s\n", "term", "fitted", "sigma",
              "predicted", "dev/sigma");
  for (std::size_t i = 0; i < fit.basis.size(); ++i) {
    const BasisTerm& b = fit.basis[i];
    std::optional<double> p = predicted_for(b, pred, cap);
    json row = {{"power", b.power},
                {"log", b.log},
                {"coeff", fit.coeff[i]},
                {"sigma", fit.sigma[i]}};
    if (p) {
      double dev = (fit.coeff[i] - *p) / (fit.sigma[i] > 0 ? fit.sigma[i] : 1e-300);
      row["predicted"] = *p;
      row["dev_sigma"] = dev;
      std::printf("%-12s %-25.17g %-12.3e %-25.17g %+.2f\n", term_name(b).c_str(),
                  fit.coeff[i], fit.sigma[i], *p, dev);
    } else {
      std::printf("%-12s %-25.17g %-12.3e %-25s %s\n", term_name(b).c_str(),
                  fit.coeff[i], fit.sigma[i], "-", "-");
    }
    jterms.push_back(row);
  }
  std::printf("t^0 split: interior %.17g, boundary %.17g, singular %.17g "
              "(predicted singular %.17g)\n",
              split.interior, split.boundary, split.singular, pred.t_zero_singular);
  std::printf("condition %.3e, weighted rms %.3e\n", fit.condition,
              fit.rms_residual);

  json jout = {
      {"condition", fit.condition},
      {"rms_residual", fit.rms_residual},
      {"terms", jterms},
      {"t0_split",
       {{"total", split.total},
        {"interior", split.interior},
        {"boundary", split.boundary},
        {"singular", split.singular},
        {"predicted_singular", pred.t_zero_singular}}},
      {"predicted",
       {{"t_inv", pred.t_inv},
        {"t_half_inv", pred.t_half_inv},
        {"t_zero", pred.t_zero},
        {"t_zero_interior", pred.t_zero_interior},
        {"t_zero_boundary", pred.t_zero_boundary},
        {"t_zero_singular", pred.t_zero_singular},
        {"t_half", pred.t_half}}},
      {"convention", cfg.convention},
  };
  write_file(cfg.out_dir, "fit.json", jout.dump(2) + "\n");

  // plot data over the same geometric grid the fit used
  int n = std::max(opt.samples, int(opt.basis.size()) + 2);
  double span = std::log(opt.t_max / opt.t_min);
  std::string pcsv = "t,trace,model,residual\n";
  for (int i = 0; i < n; ++i) {
    double t = opt.t_min * std::exp(span * i / (n - 1.0));
    double z = heat_trace(spec, t);
    double model = 0;
    for (std::size_t jj = 0; jj < fit.basis.size(); ++jj)
      model += fit.coeff[jj] * term_value(fit.basis[jj], t);
    pcsv += fmt17(t) + "," + fmt17(z) + "," + fmt17(model) + "," +
            fmt17(z - model) + "\n";
  }
  write_file(cfg.out_dir, "fit_plot.csv", pcsv);
  std::printf("wrote %s and %s\n",
              (fs::path(cfg.out_dir) / "fit.json").string().c_str(),
              (fs::path(cfg.out_dir) / "fit_plot.csv").string().c_str());
  return 0;
}

int cmd_predict(const RunConfig& cfg) {
  Profile prof = profile_from_config(cfg);
  HeatPrediction pred = predict(prof, convention_from_string(cfg.convention));
  std::printf("%-18s %s\n", "t^-1", fmt17(pred.t_inv).c_str());
  if (prof.topology == Topology::DirichletCap)
    std::printf("%-18s %s\n", "t^-1/2", fmt17(pred.t_half_inv).c_str());
  std::printf("%-18s %s\n", "t^0", fmt17(pred.t_zero).c_str());
  std::printf("%-18s %s\n", "  interior", fmt17(pred.t_zero_interior).c_str());
  std::printf("%-18s %s\n", "  boundary", fmt17(pred.t_zero_boundary).c_str());
  std::printf("%-18s %s\n", "  singular", fmt17(pred.t_zero_singular).c_str());
  std::printf("%-18s %s\n", "t^1/2 (tips)", fmt17(pred.t_half).c_str());
  json jout = {
      {"t_inv", pred.t_inv},
      {"t_half_inv", pred.t_half_inv},
      {"t_zero", pred.t_zero},
      {"t_zero_interior", pred.t_zero_interior},
      {"t_zero_boundary", pred.t_zero_boundary},
      {"t_zero_singular", pred.t_zero_singular},
      {"t_half", pred.t_half},
      {"convention", cfg.convention},
  };
  write_file(cfg.out_dir, "predict.json", jout.dump(2) + "\n");
  std::printf("wrote %s\n",
              (fs::path(cfg.out_dir) / "predict.json").string().c_str());
  return 0;
}

int cmd_verify() {
  auto checks = run_self_checks();
  bool all = true;
  for (const auto& c : checks) {
    std::printf("[%s] %s: %s\n", c.pass ? " OK " : "FAIL", c.name.c_str(),
                c.detail.c_str());
    all = all && c.pass;
  }
  return all ? 0 : 3;
}

void error_json(const char* what, int code) {
  std::fprintf(stderr, "{\"error\":%s,\"code\":%d}\n",
               json(std::string(what)).dump().c_str(), code);
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"heat-trace workbench for surfaces of revolution with conic tips"};
  app.require_subcommand(1);
  std::string config_path, out_dir, cache_dir, convention;
  int threads = 0;
  auto add_common = [&](CLI::App* sub, bool need_config) {
    auto* oc = sub->add_option("--config", config_path, "run configuration (JSON file)");
    if (need_config) oc->required();
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--cache", cache_dir, "spectrum cache directory (overrides config)");
    sub->add_option("--threads", threads, "solver threads")->check(CLI::PositiveNumber);
    sub->add_option("--convention", convention, "angle convention for closed forms")
        ->check(CLI::IsMember({"sin", "tan"}));
  };
  CLI::App* c_spectrum =
      app.add_subcommand("spectrum", "compute and cache the eigenvalue list");
  add_common(c_spectrum, true);
  CLI::App* c_trace =
      app.add_subcommand("heat-trace", "emit heat-trace samples with tail bounds");
  add_common(c_trace, true);
  CLI::App* c_fit = app.add_subcommand(
      "fit", "fit the short-time expansion and compare with closed forms");
  add_common(c_fit, true);
  CLI::App* c_predict =
      app.add_subcommand("predict", "closed-form coefficient table for a profile");
  add_common(c_predict, true);
  CLI::App* c_verify =
      app.add_subcommand("verify", "run the analytic self-check suite");
  add_common(c_verify, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c_verify->parsed()) return cmd_verify();
    RunConfig cfg = parse_config(read_file(config_path));
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
    if (threads > 0) cfg.threads = threads;
    if (!convention.empty()) cfg.convention = convention;
    if (c_spectrum->parsed()) return cmd_spectrum(cfg);
    if (c_trace->parsed()) return cmd_heat_trace(cfg);
    if (c_fit->parsed()) return cmd_fit(cfg);
    if (c_predict->parsed()) return cmd_predict(cfg);
  } catch (const std::invalid_argument& e) {
    error_json(e.what(), 1);
    return 1;
  } catch (const std::out_of_range& e) {
    error_json(e.what(), 1);
    return 1;
  } catch (const std::exception& e) {
    error_json(e.what(), 2);
    return 2;
  }
  return 0;
}

}  // namespace conic

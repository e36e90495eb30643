#include "nlkpp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlkpp/coefficients.hpp"
#include "nlkpp/dispersion.hpp"
#include "nlkpp/error.hpp"
#include "nlkpp/front.hpp"
#include "nlkpp/kernel.hpp"
#include "nlkpp/periodic.hpp"
#include "nlkpp/report.hpp"
#include "nlkpp/simulate.hpp"
#include "nlkpp/stability.hpp"
#include "nlkpp/twsystem.hpp"

namespace nlkpp {

using json = nlohmann::ordered_json;

namespace {

struct Params {
  std::string out_dir;
  double a = 0.7;
  double s = 0.0;  // 0: 2 s_min
  double eps = 0.05;
  double delta = 0.0;
  int modes = 64;
  std::string delta_grid;
  double sigma_max = 0.0;
  std::string eps_list = "1e-2,3e-3,1e-3";
  int nmax = 4;
  double h = 0.05;
  std::string form = "gl";
  double mu = 32.0;
  double L = 1000.0;
  int N = 4096;
  double T = 50.0;
  double dt = 0.05;
  std::string ic = "front";
  std::string backend = "fourier";
  int stride = 0;
  bool plot_script = false;
  std::string dir;
};

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::validation, "invalid_parameter", what);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

class Output {
 public:
  explicit Output(const std::string& dir) : dir_(dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec || !std::filesystem::is_directory(dir_)) {
      throw Error(ErrorKind::validation, "output_not_writable",
                  "cannot create output directory " + dir_.string());
    }
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream os(path(name), std::ios::binary);
    os << text;
    if (!os) throw Error(ErrorKind::validation, "output_not_writable", "cannot write " + path(name));
  }

  void write_json(const std::string& name, const json& j) const { write(name, j.dump(2) + "\n"); }

 private:
  std::filesystem::path dir_;
};

KernelModel kernel(const Params& p) { return KernelModel::exponential(p.a); }

double speed_or_default(const Params& p, const CriticalPoint& cp, const KernelModel& m) {
  if (p.s != 0.0) return p.s;
  return 2.0 * tw_coeffs(cp, m, 1.0).s_min;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) invalid(std::string(name) + " must be positive");
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) invalid("bad number '" + item + "' in list");
    } catch (const std::logic_error&) {
      invalid("bad number '" + item + "' in list");
    }
  }
  return out;
}

json cmd_critical(const Params& p, const Output& o) {
  const KernelModel m = kernel(p);
  const CriticalPoint cp = critical_point(m);
  json j;
  j["a"] = p.a;
  j["k_c"] = cp.k_c;
  j["mu_c"] = cp.mu_c;
  j["phi_kc"] = cp.phi_kc;
  j["phi_2kc"] = cp.phi_2kc;
  j["zeta"] = cp.zeta;
  j["d_residual"] = cp.d_residual;
  j["dk_residual"] = cp.dk_residual;
  o.write_json("critical.json", j);
  return j;
}

json cmd_coeffs(const Params& p, const Output& o) {
  const KernelModel m = kernel(p);
  const CriticalPoint cp = critical_point(m);
  const double s = speed_or_default(p, cp, m);
  require_positive(s, "s");
  const AmplitudeCoeffs ac = amplitude_coeffs(cp, m);
  const OmegaReport om = omega_consistency(cp, m);
  const TWCoeffs tw = tw_coeffs(cp, m, s);
  const ModeVectors mv = mode_vectors(cp, m);

  json j;
  j["a"] = p.a;
  j["k_c"] = cp.k_c;
  j["mu_c"] = cp.mu_c;
  j["phi_kc"] = ac.phi_kc;
  j["zeta"] = ac.zeta;
  j["zeta_form_a"] = ac.zeta_form_a;
  j["omega"] = ac.omega;
  j["omega_routes"] = {{"closed_form", om.closed_form},
                       {"fourier_route", om.fourier_route},
                       {"elliptic_route", om.elliptic_route}};
  j["kappa0"] = ac.kappa0;
  j["kappa1"] = ac.kappa1;
  j["s"] = s;
  j["s_min"] = tw.s_min;
  j["alpha0"] = tw.alpha0;
  j["alpha1"] = tw.alpha1;
  j["alpha2"] = tw.alpha2;
  j["Delta"] = tw.Delta;
  j["chi_plus"] = tw.chi_plus;
  j["chi_minus"] = tw.chi_minus;

  json res;
  res["zeta_forms"] = ac.zeta_form_diff;
  res["alpha0_ratio"] = std::abs(tw.alpha0 / tw.alpha2 + ac.phi_kc / ac.zeta);
  res["alpha1_ratio"] = std::abs(tw.alpha1 / tw.alpha2 - s / ac.zeta);
  res["kappa0"] = std::abs(ac.kappa0 + ac.zeta * (1.0 + cp.k_c * cp.k_c) / cp.mu_c);
  res["omega_routes"] = om.max_diff;
  res["mode_vector_routes"] = mv.max_route_diff;
  if (tw.Delta > 0.0) {
    const JordanData jd = jordan_chain(cp, m, s);
    res["jordan_chain"] = jd.chain_residual;
    res["biorthogonality"] = jd.biorth_residual;
    j["e1_adjoint_defect"] = cjson(jd.e1s_defect);
  }
  j["residuals"] = res;
  o.write_json("coeffs.json", j);
  return j;
}

json cmd_periodic(const Params& p, const Output& o) {
  const KernelModel m = kernel(p);
  require_positive(p.eps, "eps");
  if (p.modes < 16) invalid("modes must be at least 16");
  const CriticalPoint cp = critical_point(m);
  const AmplitudeCoeffs ac = amplitude_coeffs(cp, m);
  const PeriodicSolution init = asymptotic_profile(cp, ac, m, p.eps, p.delta, p.modes);
  const PeriodicSolution ps = newton_refine(init, m);

  std::ostringstream cc;
  cc << "l,c_l\n";
  for (int l = 0; l <= ps.modes(); ++l) cc << l << "," << fmt(ps.coeffs[l]) << "\n";
  o.write("periodic_coeffs.csv", cc.str());
  const ProfileSamples prof = sample_profile(ps, 512);
  std::ostringstream pc;
  pc << "x,u\n";
  for (size_t i = 0; i < prof.x.size(); ++i) pc << fmt(prof.x[i]) << "," << fmt(prof.u[i]) << "\n";
  o.write("periodic_profile.csv", pc.str());

  json j;
  j["a"] = p.a;
  j["eps"] = p.eps;
  j["delta"] = p.delta;
  j["k"] = ps.k;
  j["mu"] = ps.mu;
  j["Gamma"] = ps.Gamma;
  j["modes"] = ps.modes();
  j["residual"] = ps.residual;
  j["iterations"] = ps.iterations;
  j["residual_history"] = ps.residual_history;
  j["c0"] = ps.coeffs[0];
  j["c1"] = ps.coeffs[1];
  j["c1_asymptotic"] = init.coeffs[1];
  j["c1_over_sqrt_Gamma"] = ps.Gamma > 0.0 ? ps.coeffs[1] / std::sqrt(ps.Gamma) : 0.0;
  j["highest_significant_mode"] = ps.highest_significant_mode();
  j["files"] = {"periodic_coeffs.csv", "periodic_profile.csv"};
  o.write_json("periodic.json", j);
  return j;
}

json cmd_stability(const Params& p, const Output& o) {
  const KernelModel m = kernel(p);
  require_positive(p.eps, "eps");
  if (p.sigma_max < 0.0) invalid("sigma-max must be non-negative");
  const CriticalPoint cp = critical_point(m);
  const AmplitudeCoeffs ac = amplitude_coeffs(cp, m);
  const double bound = std::sqrt(-cp.phi_kc * p.eps * p.eps / ac.zeta);

  double lo = 0.0, hi = 0.55 * bound;
  int n = 6;
  if (!p.delta_grid.empty()) {
    std::stringstream ss(p.delta_grid);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, c)) {
      invalid("delta-grid must be lo:hi:n");
    }
    try {
      lo = std::stod(a);
      hi = std::stod(b);
      n = std::stoi(c);
    } catch (const std::logic_error&) {
      invalid("delta-grid must be lo:hi:n");
    }
    if (n < 1 || hi < lo) invalid("delta-grid needs n >= 1 and hi >= lo");
  }
  const std::vector<double> sig =
      p.sigma_max > 0.0 ? sigma_grid(p.sigma_max) : default_sigma_grid(cp, ac, p.eps);

  std::ostringstream csv;
  csv << "delta,g_numeric,g_formula,unstable_numeric,unstable_formula\n";
  json rows = json::array();
  double G00 = 0.0, G00_num = 0.0, top0 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double d = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    const PeriodicSolution ps = refined_solution(cp, ac, m, p.eps, d, p.modes);
    const SidebandReport r = sideband_curvature(ps, cp, ac, m, sig, p.modes);
    csv << fmt(d) << "," << fmt(r.g_numeric) << "," << fmt(r.g_formula) << ","
        << int(r.unstable_numeric) << "," << int(r.unstable_formula) << "\n";
    if (i == 0) {
      G00 = r.G00;
      G00_num = r.G00_numeric;
      top0 = r.top_sigma0;
    }
  }
  o.write("stability.csv", csv.str());

  const BoundaryResult b = sideband_boundary(cp, ac, m, p.eps, p.modes, p.sigma_max);
  json j;
  j["a"] = p.a;
  j["eps"] = p.eps;
  j["sigmas"] = sig;
  j["existence_bound_delta2"] = bound * bound;
  j["boundary"] = {{"delta2", b.delta2},
                   {"delta2_formula", b.delta2_formula},
                   {"rel_error", b.rel_error},
                   {"evaluations", b.evaluations}};
  j["first_row"] = {{"delta", lo}, {"G00", G00}, {"G00_numeric", G00_num}, {"top_sigma0", top0}};
  j["files"] = {"stability.csv"};
  o.write_json("stability.json", j);
  return j;
}

json cmd_eigsplit(const Params& p, const Output& o) {
  const KernelModel m = kernel(p);
  const CriticalPoint cp = critical_point(m);
  const double s = speed_or_default(p, cp, m);
  require_positive(s, "s");
  if (p.nmax < 2) invalid("nmax must be at least 2");
  const std::vector<double> eps = parse_list(p.eps_list);
  if (eps.size() < 2) invalid("eps-list needs at least two values");
  for (double e : eps) require_positive(e, "eps");
  const TWCoeffs tw = tw_coeffs(cp, m, s);

  std::ostringstream csv;
  csv << "n,eps,eigenvalue_re,eigenvalue_im,class\n";
  json gaps = json::array();
  for (double e : eps) {
    const SpectralGapReport g = spectral_gap_check(cp, m, e, s, p.nmax);
    for (const auto& en : g.entries) {
      csv << en.n << "," << fmt(e) << "," << fmt(en.lambda.real()) << "," << fmt(en.lambda.imag())
          << "," << (en.central ? "central" : "hyperbolic") << "\n";
    }
    gaps.push_back({{"eps", e}, {"central_count", g.central_count}, {"d0", g.d0}, {"d1", g.d1}});
  }
  o.write("eigsplit.csv", csv.str());

  const SplittingFit sf = eigen_splitting(cp, m, s, eps);
  const InnerProductFit ip = inner_product_asymptotics(cp, m, s, eps);
  json j;
  j["a"] = p.a;
  j["s"] = s;
  j["s_min"] = tw.s_min;
  j["Delta"] = tw.Delta;
  j["chi_plus"] = tw.chi_plus;
  j["chi_minus"] = tw.chi_minus;
  j["splitting"] = {{"eps", sf.eps},
                    {"dev_plus", sf.dev_plus},
                    {"dev_minus", sf.dev_minus},
                    {"order_plus", sf.order_plus},
                    {"order_minus", sf.order_minus},
                    {"split_n0", sf.split0},
                    {"split_n2", sf.split2},
                    {"order_split_n0", sf.order_split0},
                    {"order_split_n2", sf.order_split2}};
  j["spectral_gap"] = gaps;
  j["inner_product"] = {{"slope_plus", ip.slope_plus},
                        {"slope_minus", ip.slope_minus},
                        {"predicted", ip.predicted},
                        {"rel_error", ip.rel_error_plus},
                        {"cross_scaled", ip.cross_scaled}};
  j["files"] = {"eigsplit.csv"};
  o.write_json("eigsplit.json", j);
  return j;
}

json cmd_front(const Params& p, const Output& o) {
  const KernelModel m = kernel(p);
  const CriticalPoint cp = critical_point(m);
  const double s = speed_or_default(p, cp, m);
  require_positive(p.h, "h");
  if (p.form != "gl" && p.form != "alpha") invalid("form must be gl or alpha");
  const ReducedODE ode =
      ReducedODE::make(cp, m, s, p.form == "gl" ? ODEForm::gl : ODEForm::alpha);
  ShootOptions so;
  so.h = p.h;
  const FrontProfile fp = shoot_heteroclinic(ode, so);

  std::ostringstream csv;
  csv << "Z,q,p\n";
  for (size_t i = 0; i < fp.Z.size(); ++i) {
    csv << fmt(fp.Z[i]) << "," << fmt(fp.q[i]) << "," << fmt(fp.p[i]) << "\n";
  }
  o.write("front.csv", csv.str());

  json fps = json::array();
  for (const auto& f : fixed_points(ode)) {
    json e = json::array();
    for (const auto& z : f.eig_closed) e.push_back(cjson(z));
    fps.push_back({{"name", f.name}, {"q", f.q}, {"p", f.p}, {"eigenvalues", e},
                   {"closed_vs_numeric", f.max_diff}});
  }
  json j;
  j["a"] = p.a;
  j["s"] = s;
  j["s_min"] = ode.s_min();
  j["form"] = p.form;
  j["h"] = fp.h;
  j["q_star"] = fp.q_star;
  j["chi_plus"] = fp.chi_plus;
  j["shoot_residual"] = fp.shoot_residual;
  j["monotone"] = fp.monotone;
  j["max_dVdZ"] = fp.max_dVdZ;
  j["dV_residual"] = fp.dV_residual;
  j["fixed_points"] = fps;
  j["files"] = {"front.csv"};
  o.write_json("front.json", j);
  return j;
}

json cmd_simulate(const Params& p, const Output& o) {
  const KernelModel m = kernel(p);
  require_positive(p.mu, "mu");
  require_positive(p.T, "T");
  require_positive(p.dt, "dt");
  if (p.stride < 0) invalid("stride must be non-negative");
  const Grid g = Grid::make(p.L, p.N);
  EvolveOptions eo;
  eo.T = p.T;
  eo.dt = p.dt;
  eo.stride = p.stride;
  eo.backend = parse_backend(p.backend);
  eo.ic = p.ic;
  const std::vector<double> u0 = initial_condition(g, p.ic, m, p.mu);
  const FieldSeries fs = evolve(g, u0, m, p.mu, eo);
  write_field_dump(fs, o.path("field"));
  if (p.plot_script) o.write("plot_field.py", plot_script("field.bin", fs));

  json j;
  j["a"] = p.a;
  j["mu"] = p.mu;
  j["L"] = g.L;
  j["N"] = g.N;
  j["T"] = p.T;
  j["dt"] = p.dt;
  j["stride"] = fs.stride;
  j["frames"] = fs.frames.size();
  j["backend"] = p.backend;
  j["ic"] = p.ic;
  const auto [mn, mx] = std::minmax_element(fs.frames.back().begin(), fs.frames.back().end());
  j["final_min"] = *mn;
  j["final_max"] = *mx;
  try {
    const FrontDiagnostics d = measure_front(fs);
    j["front"] = {{"eta", d.eta},
                  {"speed", d.speed},
                  {"final_position", d.position.back()},
                  {"position_monotone", d.position_monotone},
                  {"position_monotone_all", d.position_monotone_all},
                  {"transient", d.transient},
                  {"wake_amplitude", d.wake_amplitude},
                  {"wake_wavenumber", d.wake_wavenumber},
                  {"grid_mode", d.grid_mode},
                  {"wake_window", {d.wake_lo, d.wake_hi}}};
  } catch (const Error& e) {
    if (e.code() != "no_front") throw;
    j["front"] = {{"absent", e.code()}};
  }
  if (p.ic.rfind("modfront:", 0) == 0) {
    std::string rest = p.ic.substr(9);
    std::replace(rest.begin(), rest.end(), ':', ',');
    const std::vector<double> v = parse_list(rest);
    const CriticalPoint cp = critical_point(m);
    const AmplitudeCoeffs ac = amplitude_coeffs(cp, m);
    const double amp = v[0] * std::sqrt(cp.phi_kc / ac.omega);
    j["prediction"] = {{"speed", v[0] * v[1]},
                       {"wake_amplitude_envelope", amp},
                       {"wake_amplitude_cosine", 2.0 * amp},
                       {"wavenumber", cp.k_c}};
  }
  j["files"] = {"field.bin", "field.json"};
  if (p.plot_script) j["files"].push_back("plot_field.py");
  o.write_json("simulate.json", j);
  return j;
}

// Appends key=value pairs from a config file as flags unless the flag was
// given explicitly. Keys the subcommand does not define are ignored.
std::vector<std::string> merge_config(const std::vector<std::string>& args, const std::string& file,
                                      CLI::App* sub) {
  std::ifstream is(file);
  if (!is) throw Error(ErrorKind::validation, "config_unreadable", "cannot read config " + file);
  std::vector<std::string> out = args;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::validation, "invalid_config",
                  file + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    const std::string flag = "--" + key;
    const bool given = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
    if (given) continue;
    const CLI::Option* opt = sub ? sub->get_option_no_throw(flag) : nullptr;
    if (!opt) opt = sub && sub->get_parent() ? sub->get_parent()->get_option_no_throw(flag) : nullptr;
    if (!opt) continue;
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1") out.push_back(flag);
    } else {
      out.push_back(flag);
      out.push_back(value);
    }
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  Params p;
  const char* env = std::getenv("NLKPP_OUT_DIR");
  p.out_dir = env && *env ? env : ".";

  CLI::App app{"Turing patterns and modulated fronts of the nonlocal Fisher-KPP equation", "nlkpp"};
  app.fallthrough();
  app.require_subcommand(1);
  std::string config;
  app.add_option("--out", p.out_dir, "output directory (default $NLKPP_OUT_DIR or .)");
  app.add_option("--config", config, "key=value file; explicit flags take precedence");

  auto add_a = [&](CLI::App* c) { c->add_option("--a", p.a, "kernel shape parameter in (2/3, 1)"); };
  auto* critical = app.add_subcommand("critical", "critical wavenumber and parameter");
  add_a(critical);
  auto* coeffs = app.add_subcommand("coeffs", "amplitude and travelling-wave coefficients");
  add_a(coeffs);
  coeffs->add_option("--s", p.s, "front speed (default 2 s_min)");
  auto* periodic = app.add_subcommand("periodic", "Newton-refined stationary periodic state");
  add_a(periodic);
  periodic->add_option("--eps", p.eps);
  periodic->add_option("--delta", p.delta);
  periodic->add_option("--modes", p.modes);
  auto* stability = app.add_subcommand("stability", "sideband curvature and its boundary");
  add_a(stability);
  stability->add_option("--eps", p.eps);
  stability->add_option("--delta-grid", p.delta_grid, "lo:hi:n");
  stability->add_option("--sigma-max", p.sigma_max);
  stability->add_option("--modes", p.modes);
  auto* eigsplit = app.add_subcommand("eigsplit", "spatial-dynamics spectra and splitting");
  add_a(eigsplit);
  eigsplit->add_option("--s", p.s, "front speed (default 2 s_min)");
  eigsplit->add_option("--eps-list", p.eps_list, "comma-separated eps values");
  eigsplit->add_option("--nmax", p.nmax);
  auto* front = app.add_subcommand("front", "heteroclinic envelope front");
  front->set_help_flag("--help", "Print this help message and exit");
  add_a(front);
  front->add_option("--s", p.s, "front speed (default 2 s_min)");
  front->add_option("--h", p.h, "RK4 step");
  front->add_option("--form", p.form, "gl or alpha");
  auto* simulate = app.add_subcommand("simulate", "direct simulation of the PDE");
  add_a(simulate);
  simulate->add_option("--mu", p.mu);
  simulate->add_option("--L", p.L);
  simulate->add_option("--N", p.N);
  simulate->add_option("--T", p.T);
  simulate->add_option("--dt", p.dt);
  simulate->add_option("--ic", p.ic, "const:<v> | cosine:<k>:<amp> | front | modfront:<eps>:<s>");
  simulate->add_option("--backend", p.backend, "fourier or elliptic");
  simulate->add_option("--stride", p.stride, "steps between stored frames (0: at most 500 frames)");
  simulate->add_flag("--plot-script", p.plot_script, "also write plot_field.py");
  auto* report = app.add_subcommand("report", "summary of the outputs in a directory");
  report->add_option("--dir", p.dir, "directory to summarise (default: output directory)");

  std::vector<std::string> args = args_in;
  try {
    CLI::App* chosen = nullptr;
    for (size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--out" || args[i] == "--config") {
        ++i;
        continue;
      }
      if (args[i].rfind("-", 0) == 0) continue;
      chosen = app.get_subcommand_no_throw(args[i]);
      if (!chosen) throw Error(ErrorKind::validation, "unknown_subcommand",
                               "unknown subcommand '" + args[i] + "'");
      break;
    }
    for (size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) {
        config = args[i + 1];
        args.erase(args.begin() + i, args.begin() + i + 2);
        break;
      }
      if (args[i].rfind("--config=", 0) == 0) {
        config = args[i].substr(9);
        args.erase(args.begin() + i);
        break;
      }
    }
    if (!config.empty()) args = merge_config(args, config, chosen);
    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      throw Error(ErrorKind::validation, "invalid_parameter", e.what());
    }

    json result;
    if (report->parsed()) {
      const std::string text = build_report(p.dir.empty() ? p.out_dir : p.dir);
      Output(p.out_dir).write("summary.json", text + "\n");
      out << text << "\n";
      return 0;
    }
    const Output o(p.out_dir);
    if (critical->parsed()) result = cmd_critical(p, o);
    else if (coeffs->parsed()) result = cmd_coeffs(p, o);
    else if (periodic->parsed()) result = cmd_periodic(p, o);
    else if (stability->parsed()) result = cmd_stability(p, o);
    else if (eigsplit->parsed()) result = cmd_eigsplit(p, o);
    else if (front->parsed()) result = cmd_front(p, o);
    else if (simulate->parsed()) result = cmd_simulate(p, o);
    out << result.dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    err << "error [" << e.code() << "]: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error [internal]: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace nlkpp

#include "nlkpp/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "fft.hpp"
#include "nlkpp/coefficients.hpp"
#include "nlkpp/error.hpp"
#include "nlkpp/fit.hpp"
#include "nlkpp/front.hpp"

namespace nlkpp {

using cplx = std::complex<double>;
constexpr double kPi = std::numbers::pi;

Grid Grid::make(double L, int N) {
  if (!(L > 0.0) || !std::isfinite(L) || N < 256 || (N & (N - 1)) != 0) {
    std::ostringstream os;
    os << "grid needs L > 0 and N a power of two >= 256 (got L = " << L << ", N = " << N << ")";
    throw Error(ErrorKind::validation, "invalid_grid", os.str());
  }
  return Grid{L, N};
}

double Grid::k(int j) const { return 2.0 * kPi * j / L; }

Backend parse_backend(const std::string& s) {
  if (s == "fourier") return Backend::fourier;
  if (s == "elliptic") return Backend::elliptic;
  throw Error(ErrorKind::validation, "invalid_backend", "backend must be fourier or elliptic");
}

std::string to_string(Backend b) { return b == Backend::fourier ? "fourier" : "elliptic"; }

namespace {

// Multiplier(s) applied to u_hat: one for "fourier", the v and w pieces
// separately for "elliptic".
struct Multiplier {
  std::vector<double> a, b;
  bool split = false;

  Multiplier(const Grid& g, const KernelModel& m, Backend backend) {
    const int nb = g.N / 2 + 1;
    a.resize(nb);
    if (backend == Backend::elliptic) {
      if (!m.is_exponential()) {
        throw Error(ErrorKind::precondition, "kernel_not_exponential",
                    "elliptic backend requires the exponential kernel");
      }
      split = true;
      b.resize(nb);
      const double a2 = m.a() * m.a();
      for (int j = 0; j < nb; ++j) {
        const double k2 = g.k(j) * g.k(j);
        a[j] = 3.0 * a2 / (a2 + k2);
        b[j] = -2.0 / (1.0 + k2);
      }
    } else {
      for (int j = 0; j < nb; ++j) a[j] = m.fourier(g.k(j), 0);
    }
  }

  cplx apply(int j, cplx u) const { return split ? a[j] * u + b[j] * u : a[j] * u; }
  double max_abs() const {
    double mx = 0.0;
    for (size_t j = 0; j < a.size(); ++j) mx = std::max(mx, std::abs(split ? a[j] + b[j] : a[j]));
    return mx;
  }
};

}  // namespace

std::vector<double> nonlocal_apply(const Grid& g, const std::vector<double>& u,
                                   const KernelModel& m, Backend backend) {
  const Multiplier mult(g, m, backend);
  detail::RealFFT f(g.N);
  std::copy(u.begin(), u.end(), f.real());
  f.forward();
  auto* U = f.spec();
  for (int j = 0; j < f.bins(); ++j) U[j] = mult.apply(j, U[j]) / double(g.N);
  f.inverse();
  return std::vector<double>(f.real(), f.real() + g.N);
}

namespace {

// mu (u_hat - (u (phi * u))_hat) with the product formed on a 3N/2 grid.
class Nonlinear {
 public:
  Nonlinear(const Grid& g, const Multiplier& mult, double mu)
      : N_(g.N), Np_(3 * g.N / 2), mult_(mult), mu_(mu), fu_(Np_), fw_(Np_) {}

  void operator()(const std::vector<cplx>& uh, std::vector<cplx>& out) {
    auto* U = fu_.spec();
    auto* W = fw_.spec();
    const int nb = fu_.bins();
    for (int j = 0; j < nb; ++j) {
      if (j < N_ / 2) {
        U[j] = uh[j];
        W[j] = mult_.apply(j, uh[j]);
      } else {
        U[j] = 0.0;
        W[j] = 0.0;
      }
    }
    fu_.inverse();
    fw_.inverse();
    double* u = fu_.real();
    const double* w = fw_.real();
    for (int i = 0; i < Np_; ++i) u[i] *= w[i];
    fu_.forward();
    for (int j = 0; j <= N_ / 2; ++j) {
      const cplx p = j < N_ / 2 ? U[j] / double(Np_) : cplx(0.0);
      out[j] = mu_ * (uh[j] - p);
    }
  }

 private:
  int N_, Np_;
  const Multiplier& mult_;
  double mu_;
  detail::RealFFT fu_, fw_;
};

}  // namespace

FieldSeries evolve(const Grid& g, const std::vector<double>& u0, const KernelModel& m, double mu,
                   const EvolveOptions& opts) {
  if (static_cast<int>(u0.size()) != g.N) {
    throw Error(ErrorKind::validation, "invalid_field", "initial field size differs from N");
  }
  if (!(opts.dt > 0.0) || !(opts.T > 0.0)) {
    throw Error(ErrorKind::validation, "invalid_time", "dt and T must be positive");
  }
  const Multiplier mult(g, m, opts.backend);
  double sup0 = 0.0;
  for (double v : u0) {
    if (!std::isfinite(v)) throw Error(ErrorKind::validation, "invalid_field", "non-finite u0");
    sup0 = std::max(sup0, std::abs(v));
  }
  const double envelope = opts.dt * mu * mult.max_abs() * std::max(1.0, sup0);
  if (!(envelope < 2.7)) {
    std::ostringstream os;
    os << "dt mu max|phi_hat| max(1, sup|u0|) = " << envelope
       << " >= 2.7: explicit part of the scheme is unstable";
    throw Error(ErrorKind::validation, "dt_unstable", os.str());
  }
  const double bound = 10.0 * sup0 + 10.0;

  const int nb = g.N / 2 + 1;
  const double h = opts.dt;
  std::vector<double> E(nb), E2(nb), Q(nb), f1(nb), f2(nb), f3(nb);
  constexpr int kContour = 32;
  for (int j = 0; j < nb; ++j) {
    const double L = -g.k(j) * g.k(j);
    E[j] = std::exp(h * L);
    E2[j] = std::exp(0.5 * h * L);
    cplx q = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    for (int r = 0; r < kContour; ++r) {
      const cplx z = h * L + std::polar(1.0, kPi * (r + 0.5) / kContour);
      const cplx ez = std::exp(z), z3 = z * z * z;
      q += (std::exp(0.5 * z) - 1.0) / z;
      a1 += (-4.0 - z + ez * (4.0 - 3.0 * z + z * z)) / z3;
      a2 += (2.0 + z + ez * (z - 2.0)) / z3;
      a3 += (-4.0 - 3.0 * z - z * z + ez * (4.0 - z)) / z3;
    }
    Q[j] = h * (q / double(kContour)).real();
    f1[j] = h * (a1 / double(kContour)).real();
    f2[j] = h * (a2 / double(kContour)).real();
    f3[j] = h * (a3 / double(kContour)).real();
  }

  detail::RealFFT f(g.N);
  std::vector<cplx> v(nb), a(nb), b(nb), c(nb), Nv(nb), Na(nb), Nb(nb), Nc(nb);
  std::copy(u0.begin(), u0.end(), f.real());
  f.forward();
  for (int j = 0; j < nb; ++j) v[j] = f.spec()[j] / double(g.N);
  v[nb - 1] = 0.0;

  Nonlinear nl(g, mult, mu);
  const long nsteps = std::lround(opts.T / h);
  const int stride =
      opts.stride > 0 ? opts.stride : static_cast<int>(std::max<long>(1, (nsteps + 498) / 499));

  FieldSeries out;
  out.grid = g;
  out.a = m.is_exponential() ? m.a() : std::nan("");
  out.mu = mu;
  out.dt = h;
  out.stride = stride;
  out.backend = opts.backend;
  out.ic = opts.ic;

  auto physical = [&](const std::vector<cplx>& vh) {
    std::copy(vh.begin(), vh.end(), f.spec());
    f.inverse();
    return std::vector<double>(f.real(), f.real() + g.N);
  };
  auto store = [&](long step) {
    auto u = physical(v);
    for (double x : u) {
      if (!std::isfinite(x)) {
        std::ostringstream os;
        os << "non-finite value at t = " << step * h;
        throw Error(ErrorKind::numerical, "non_finite", os.str());
      }
      if (std::abs(x) > bound) {
        std::ostringstream os;
        os << "sup|u| exceeded " << bound << " at t = " << step * h;
        throw Error(ErrorKind::numerical, "blow_up", os.str());
      }
    }
    out.times.push_back(step * h);
    out.frames.push_back(std::move(u));
  };

  store(0);
  for (long step = 1; step <= nsteps; ++step) {
    nl(v, Nv);
    for (int j = 0; j < nb; ++j) a[j] = E2[j] * v[j] + Q[j] * Nv[j];
    nl(a, Na);
    for (int j = 0; j < nb; ++j) b[j] = E2[j] * v[j] + Q[j] * Na[j];
    nl(b, Nb);
    for (int j = 0; j < nb; ++j) c[j] = E2[j] * a[j] + Q[j] * (2.0 * Nb[j] - Nv[j]);
    nl(c, Nc);
    for (int j = 0; j < nb; ++j) {
      v[j] = E[j] * v[j] + Nv[j] * f1[j] + 2.0 * (Na[j] + Nb[j]) * f2[j] + Nc[j] * f3[j];
    }
    if (step % stride == 0 || step == nsteps) store(step);
  }
  return out;
}

std::vector<double> initial_condition(const Grid& g, const std::string& spec,
                                      const KernelModel& m, double mu) {
  std::vector<std::string> parts;
  {
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
  }
  auto num = [&](size_t i) {
    if (i >= parts.size()) {
      throw Error(ErrorKind::validation, "invalid_ic", "missing value in initial condition " + spec);
    }
    try {
      size_t pos = 0;
      const double v = std::stod(parts[i], &pos);
      if (pos != parts[i].size()) throw std::invalid_argument(parts[i]);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::validation, "invalid_ic", "bad number in initial condition " + spec);
    }
  };
  std::vector<double> u(g.N, 1.0);
  const std::string kind = parts.empty() ? "" : parts[0];
  if (kind == "const") {
    std::fill(u.begin(), u.end(), num(1));
  } else if (kind == "cosine") {
    const double k = num(1), amp = num(2);
    const double kp = g.k(static_cast<int>(std::lround(k * g.L / (2.0 * kPi))));
    for (int j = 0; j < g.N; ++j) u[j] = 1.0 + amp * std::cos(kp * g.x(j));
  } else if (kind == "front") {
    const CriticalPoint cp = critical_point(m);
    // Edges smoothed over one pattern period: sharper edges leave
    // high-wavenumber residue that the unstable state amplifies everywhere.
    const double c = 0.5 * g.L, w = 0.05 * g.L, ell = 2.0 * kPi / cp.k_c;
    for (int j = 0; j < g.N; ++j) {
      const double x = g.x(j) - c;
      const double env = 0.5 * (std::tanh((x + w) / ell) - std::tanh((x - w) / ell));
      u[j] = 1.0 + 0.5 * env * std::cos(cp.k_c * x);
    }
  } else if (kind == "modfront") {
    const double eps = num(1), s = num(2);
    const CriticalPoint cp = critical_point(m);
    if (std::abs(mu - (cp.mu_c + eps * eps)) > 1e-9 * cp.mu_c) {
      std::ostringstream os;
      os << "modfront seed at eps = " << eps << " needs mu = mu_c + eps^2 = "
         << cp.mu_c + eps * eps;
      throw Error(ErrorKind::validation, "invalid_ic", os.str());
    }
    const AmplitudeCoeffs ac = amplitude_coeffs(cp, m);
    const FrontProfile fp = shoot_heteroclinic(ReducedODE::make(cp, m, s));
    const ModulatedFront mf = assemble_modulated_front(fp, cp, ac, eps, 0.0);
    const double c = 0.5 * g.L, off = 0.125 * g.L;
    for (int j = 0; j < g.N; ++j) {
      const double x = g.x(j) - c;
      u[j] = 1.0 + 2.0 * eps * mf.envelope(eps * (std::abs(x) - off)) * std::cos(cp.k_c * x);
    }
  } else {
    throw Error(ErrorKind::validation, "invalid_ic",
                "initial condition must be const:<v>, cosine:<k>:<amp>, front or "
                "modfront:<eps>:<s> (got " + spec + ")");
  }
  return u;
}

namespace {

double rightmost_above(const FieldSeries& s, const std::vector<double>& u, double eta) {
  const Grid& g = s.grid;
  for (int j = g.N - 1; j >= g.N / 2; --j) {
    if (std::abs(u[j] - 1.0) > eta) return g.x(j);
  }
  return std::nan("");
}

}  // namespace

std::vector<double> window(const FieldSeries& s, double x0, double len) {
  const Grid& g = s.grid;
  const auto& u = s.frames.back();
  std::vector<double> out;
  const int j0 = static_cast<int>(std::ceil(x0 / g.dx()));
  const int j1 = static_cast<int>(std::ceil((x0 + len) / g.dx()));
  for (int j = j0; j < j1; ++j) out.push_back(u[((j % g.N) + g.N) % g.N]);
  return out;
}

FrontDiagnostics measure_front(const FieldSeries& s) {
  const Grid& g = s.grid;
  FrontDiagnostics d;
  d.grid_mode = 2.0 * kPi / g.L;
  const auto& last = s.frames.back();
  double dev = 0.0;
  for (int j = g.N / 2; j < g.N; ++j) dev = std::max(dev, std::abs(last[j] - 1.0));
  const double x_f0 = rightmost_above(s, last, 0.5 * dev);
  if (!(dev > 0.0) || std::isnan(x_f0) || x_f0 <= 0.5 * g.L + 4.0 * g.dx()) {
    throw Error(ErrorKind::precondition, "no_front", "no deviation from u = 1 to track");
  }
  d.wake_lo = 0.5 * g.L;
  d.wake_hi = 0.5 * g.L + 0.5 * (x_f0 - 0.5 * g.L);
  const auto wake = window(s, d.wake_lo, d.wake_hi - d.wake_lo);
  const auto [mn, mx] = std::minmax_element(wake.begin(), wake.end());
  d.wake_amplitude = 0.5 * (*mx - *mn);
  d.eta = 0.5 * d.wake_amplitude;
  if (!(d.eta > 0.0)) throw Error(ErrorKind::precondition, "no_front", "flat wake");

  bool any = false;
  for (size_t i = 0; i < s.frames.size(); ++i) {
    double x = rightmost_above(s, s.frames[i], d.eta);
    if (std::isnan(x)) {
      x = 0.5 * g.L;
    } else {
      any = true;
    }
    d.times.push_back(s.times[i]);
    d.position.push_back(x);
  }
  if (!any) throw Error(ErrorKind::precondition, "no_front", "|u - 1| never exceeds eta");
  d.transient = 0.1 * s.times.back();
  d.position_monotone = true;
  d.position_monotone_all = true;
  for (size_t i = 1; i < d.position.size(); ++i) {
    if (d.position[i] >= d.position[i - 1]) continue;
    d.position_monotone_all = false;
    if (d.times[i - 1] >= d.transient) d.position_monotone = false;
  }
  const size_t n = d.position.size();
  const size_t i0 = n - std::max<size_t>(2, n / 3);
  d.speed = linear_fit({d.times.begin() + i0, d.times.end()},
                       {d.position.begin() + i0, d.position.end()})
                .slope;

  // Hann-windowed wake, zero padded to the full domain length.
  double mean = 0.0;
  for (double v : wake) mean += v;
  mean /= wake.size();
  detail::RealFFT f(g.N);
  std::fill(f.real(), f.real() + g.N, 0.0);
  const size_t nw = std::min<size_t>(wake.size(), g.N);
  for (size_t i = 0; i < nw; ++i) {
    const double hann = 0.5 - 0.5 * std::cos(2.0 * kPi * i / (nw - 1));
    f.real()[i] = hann * (wake[i] - mean);
  }
  f.forward();
  int best = 1;
  for (int j = 1; j < f.bins(); ++j) {
    if (std::abs(f.spec()[j]) > std::abs(f.spec()[best])) best = j;
  }
  d.wake_wavenumber = g.k(best);
  return d;
}

std::string write_field_dump(const FieldSeries& s, const std::string& stem) {
  const std::string bin = stem + ".bin", side = stem + ".json";
  std::ofstream os(bin, std::ios::binary);
  if (!os) throw Error(ErrorKind::validation, "output_not_writable", "cannot write " + bin);
  for (const auto& fr : s.frames) {
    for (double v : fr) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
      char buf[8];
      std::memcpy(buf, &bits, 8);
      os.write(buf, 8);
    }
  }
  if (!os) throw Error(ErrorKind::validation, "output_not_writable", "write failed for " + bin);
  nlohmann::ordered_json j;
  j["L"] = s.grid.L;
  j["N"] = s.grid.N;
  j["dt"] = s.dt;
  j["stride"] = s.stride;
  j["frames"] = s.frames.size();
  j["times"] = s.times;
  j["a"] = s.a;
  j["mu"] = s.mu;
  j["backend"] = to_string(s.backend);
  j["ic"] = s.ic;
  j["layout"] = "float64 little-endian, row-major frames x N";
  j["data"] = bin.substr(bin.find_last_of('/') == std::string::npos ? 0 : bin.find_last_of('/') + 1);
  std::ofstream js(side);
  if (!js) throw Error(ErrorKind::validation, "output_not_writable", "cannot write " + side);
  js << j.dump(2) << "\n";
  return side;
}

std::string plot_script(const std::string& dump_path, const FieldSeries& s) {
  std::ostringstream os;
  os << "# space-time plot of " << dump_path << "\n"
     << "import numpy as np\n"
     << "import matplotlib.pyplot as plt\n"
     << "u = np.fromfile('" << dump_path << "', dtype='<f8').reshape(" << s.frames.size() << ", "
     << s.grid.N << ")\n"
     << "plt.imshow(u, aspect='auto', origin='lower', extent=[0, " << s.grid.L << ", "
     << s.times.front() << ", " << s.times.back() << "])\n"
     << "plt.xlabel('x'); plt.ylabel('t'); plt.colorbar(label='u')\n"
     << "plt.savefig('" << dump_path << ".png', dpi=150)\n";
  return os.str();
}

}  // namespace nlkpp

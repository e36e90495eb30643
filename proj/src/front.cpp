#include "nlkpp/front.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "nlkpp/error.hpp"

namespace nlkpp {

using cplx = std::complex<double>;

ReducedODE ReducedODE::make(const CriticalPoint& cp, const KernelModel& m, double s, ODEForm form) {
  const AmplitudeCoeffs ac = amplitude_coeffs(cp, m);
  const TWCoeffs tw = tw_coeffs(cp, m, s);
  ReducedODE o;
  o.form = form;
  o.s = s;
  o.phi = cp.phi_kc;
  o.zeta = ac.zeta;
  o.omega = ac.omega;
  o.alpha0 = tw.alpha0;
  o.alpha1 = tw.alpha1;
  o.alpha2 = tw.alpha2;
  o.c3 = ac.omega * (1.0 + cp.k_c * cp.k_c) * tw.alpha2 / (cp.mu_c * ac.kappa0);
  return o;
}

double ReducedODE::lin() const { return form == ODEForm::gl ? phi / zeta : -alpha0 / alpha2; }
double ReducedODE::damp() const { return form == ODEForm::gl ? s / zeta : alpha1 / alpha2; }
double ReducedODE::cub() const { return form == ODEForm::gl ? -omega / zeta : c3 / alpha2; }

double ReducedODE::dp(double q, double p) const {
  return lin() * q - damp() * p + cub() * q * q * q;
}

cplx ReducedODE::dp(cplx q, cplx p) const {
  return lin() * q - damp() * p + cub() * q * std::norm(q);
}

double ReducedODE::lyapunov(double q, double p) const {
  return 0.5 * zeta * p * p - 0.5 * phi * q * q + 0.25 * omega * q * q * q * q;
}

namespace {

// Real 4D field in (Re q, Im q, Re p, Im p).
Eigen::Vector4d field4(const ReducedODE& ode, const Eigen::Vector4d& y) {
  const cplx q(y(0), y(1)), p(y(2), y(3));
  const cplx f = ode.dp(q, p);
  return Eigen::Vector4d(y(2), y(3), f.real(), f.imag());
}

std::vector<cplx> sorted(std::vector<cplx> v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return v;
}

}  // namespace

std::vector<FixedPoint> fixed_points(const ReducedODE& ode) {
  const double s = ode.s, z = ode.zeta, phi = ode.phi;
  const double qs = ode.q_star();
  std::vector<FixedPoint> out;
  auto fill_numeric = [&](FixedPoint& fp) {
    const double h = 1e-6;
    Eigen::Matrix4d J;
    const Eigen::Vector4d y0(fp.q, 0.0, fp.p, 0.0);
    for (int j = 0; j < 4; ++j) {
      Eigen::Vector4d yp = y0, ym = y0;
      yp(j) += h;
      ym(j) -= h;
      J.col(j) = (field4(ode, yp) - field4(ode, ym)) / (2.0 * h);
    }
    Eigen::EigenSolver<Eigen::Matrix4d> es(J, false);
    fp.eig_numeric.assign(es.eigenvalues().data(), es.eigenvalues().data() + 4);
    fp.eig_numeric = sorted(fp.eig_numeric);
    fp.eig_closed = sorted(fp.eig_closed);
    fp.max_diff = 0.0;
    for (int i = 0; i < 4; ++i) {
      fp.max_diff = std::max(fp.max_diff, std::abs(fp.eig_numeric[i] - fp.eig_closed[i]));
    }
  };

  FixedPoint o;
  o.name = "origin";
  {
    const cplx r = std::sqrt(cplx(s * s + 4.0 * phi * z));
    const cplx l1 = (-s + r) / (2.0 * z), l2 = (-s - r) / (2.0 * z);
    o.eig_closed = {l1, l1, l2, l2};
    o.eig_planar = {l1.real(), l2.real()};
  }
  fill_numeric(o);
  out.push_back(o);

  for (double sign : {1.0, -1.0}) {
    FixedPoint f;
    f.name = sign > 0 ? "q_star" : "minus_q_star";
    f.q = sign * qs;
    const double r = std::sqrt(s * s - 8.0 * phi * z);
    const double lu = (-s + r) / (2.0 * z), ls = (-s - r) / (2.0 * z);
    f.eig_closed = {0.0, -s / z, lu, ls};
    f.eig_planar = {lu, ls};
    fill_numeric(f);
    out.push_back(f);
  }
  return out;
}

std::pair<cplx, cplx> rk4_step_complex(const ReducedODE& ode, cplx q, cplx p, double h) {
  const cplx k1q = p, k1p = ode.dp(q, p);
  const cplx k2q = p + 0.5 * h * k1p, k2p = ode.dp(q + 0.5 * h * k1q, p + 0.5 * h * k1p);
  const cplx k3q = p + 0.5 * h * k2p, k3p = ode.dp(q + 0.5 * h * k2q, p + 0.5 * h * k2p);
  const cplx k4q = p + h * k3p, k4p = ode.dp(q + h * k3q, p + h * k3p);
  return {q + h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q),
          p + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)};
}

FrontProfile shoot_heteroclinic(const ReducedODE& ode, const ShootOptions& opts) {
  const double s_min = ode.s_min();
  if (!(ode.s > s_min)) {
    std::ostringstream os;
    os << "speed s = " << ode.s << " must exceed s_min = " << s_min
       << " for a monotone front";
    throw Error(ErrorKind::precondition, "speed_below_min", os.str());
  }
  const double s = ode.s;
  const double a = ode.lin(), b = ode.damp(), c = ode.cub();
  const double qs = ode.q_star();
  const double lu = 0.5 * (-b + std::sqrt(b * b - 8.0 * a));
  const double chi = 0.5 * (-b + std::sqrt(b * b + 4.0 * a));
  const double z_max = opts.z_max > 0.0 ? opts.z_max : 40.0 / std::abs(chi);
  const double h = opts.h;
  const double eta = opts.eta_rel * qs;
  const double p_box = 2.0 * qs * s / ode.zeta;

  FrontProfile fp;
  fp.s = s;
  fp.h = h;
  fp.q_star = qs;
  fp.chi_plus = chi;

  // Near q* the orbit grows from eta by a factor ~1e8; integrating the
  // deviation d = q - q* (with the fixed point cancelled exactly) keeps
  // rounding in q* from being amplified along the unstable direction.
  // Switch to q once the orbit is halfway down.
  auto rk4 = [h](auto&& f, double& x, double& y) {
    const auto [a1, b1] = f(x, y);
    const auto [a2, b2] = f(x + 0.5 * h * a1, y + 0.5 * h * b1);
    const auto [a3, b3] = f(x + 0.5 * h * a2, y + 0.5 * h * b2);
    const auto [a4, b4] = f(x + h * a3, y + h * b3);
    x += h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    y += h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
  };
  auto dev_rhs = [&](double d, double pp) {
    return std::pair{pp, -2.0 * a * d + 3.0 * c * qs * d * d + c * d * d * d - b * pp};
  };
  auto rhs = [&](double qq, double pp) { return std::pair{pp, ode.dp(qq, pp)}; };

  double d = -eta, p = -eta * lu, q = qs + d;
  bool near_qs = true;
  double Z = 0.0;
  fp.Z.push_back(Z);
  fp.q.push_back(q);
  fp.p.push_back(p);
  while (std::hypot(q, p) >= opts.tol) {
    if (Z > z_max) {
      std::ostringstream os;
      os << "orbit did not reach the origin by Z = " << z_max << " (|(q,p)| = "
         << std::hypot(q, p) << ")";
      throw Error(ErrorKind::numerical, "shoot_not_converged", os.str());
    }
    if (near_qs) {
      rk4(dev_rhs, d, p);
      q = qs + d;
      if (q < 0.5 * qs) near_qs = false;
    } else {
      rk4(rhs, q, p);
    }
    Z += h;
    if (!(std::abs(q) <= 2.0 * qs && std::abs(p) <= p_box)) {
      std::ostringstream os;
      os << "orbit left the box |q| <= " << 2.0 * qs << ", |p| <= " << p_box << " at Z = " << Z;
      throw Error(ErrorKind::numerical, "orbit_escaped", os.str());
    }
    fp.Z.push_back(Z);
    fp.q.push_back(q);
    fp.p.push_back(p);
  }
  fp.shoot_residual = std::hypot(q, p);

  fp.monotone = true;
  const size_t n = fp.q.size();
  for (size_t i = 1; i < n; ++i) {
    if (fp.q[i] > fp.q[i - 1]) fp.monotone = false;
  }
  fp.max_dVdZ = -INFINITY;
  for (size_t i = 0; i + 1 < n; ++i) {
    const double dV = (ode.lyapunov(fp.q[i + 1], fp.p[i + 1]) - ode.lyapunov(fp.q[i], fp.p[i])) / h;
    fp.max_dVdZ = std::max(fp.max_dVdZ, dV);
  }
  if (ode.form == ODEForm::gl) {
    for (size_t i = 1; i + 1 < n; ++i) {
      const double dV =
          (ode.lyapunov(fp.q[i + 1], fp.p[i + 1]) - ode.lyapunov(fp.q[i - 1], fp.p[i - 1])) /
          (2.0 * h);
      fp.dV_residual = std::max(fp.dV_residual, std::abs(dV + s * fp.p[i] * fp.p[i]));
    }
  }
  return fp;
}

ModulatedFront::ModulatedFront(FrontProfile fp, const CriticalPoint& cp, const AmplitudeCoeffs& ac,
                               double eps, double delta, double x0)
    : fp_(std::move(fp)), eps_(eps), k_(cp.k_c + delta), x0_(x0) {
  const double gamma = (cp.phi_kc * eps * eps + ac.zeta * delta * delta) / ac.omega;
  scale_ = std::sqrt(std::max(gamma, 0.0)) / (eps * fp_.q_star);
  // Z origin at the half-amplitude crossing.
  const double half = 0.5 * fp_.q_star;
  z_shift_ = fp_.Z.front();
  for (size_t i = 1; i < fp_.q.size(); ++i) {
    if (fp_.q[i] <= half) {
      const double t = (fp_.q[i - 1] - half) / (fp_.q[i - 1] - fp_.q[i]);
      z_shift_ = fp_.Z[i - 1] + t * (fp_.Z[i] - fp_.Z[i - 1]);
      break;
    }
  }
}

double ModulatedFront::envelope(double Zc) const {
  const double Z = Zc + z_shift_;
  double q;
  if (Z <= fp_.Z.front()) {
    q = fp_.q_star;
  } else if (Z >= fp_.Z.back()) {
    q = fp_.q.back() * std::exp(fp_.chi_plus * (Z - fp_.Z.back()));
  } else {
    const double r = (Z - fp_.Z.front()) / fp_.h;
    const size_t i = std::min(static_cast<size_t>(r), fp_.Z.size() - 2);
    const double t = r - static_cast<double>(i);
    q = (1.0 - t) * fp_.q[i] + t * fp_.q[i + 1];
  }
  return scale_ * q;
}

double ModulatedFront::operator()(double t, double x) const {
  const double Z = eps_ * (x - x0_ - eps_ * fp_.s * t);
  return 1.0 + 2.0 * eps_ * envelope(Z) * std::cos(k_ * x);
}

ModulatedFront assemble_modulated_front(const FrontProfile& fp, const CriticalPoint& cp,
                                        const AmplitudeCoeffs& ac, double eps, double delta,
                                        double x0) {
  if (!(eps > 0.0) || !(delta * delta < -cp.phi_kc * eps * eps / ac.zeta)) {
    std::ostringstream os;
    os << "(eps, delta) = (" << eps << ", " << delta << ") outside the existence band";
    throw Error(ErrorKind::precondition, "outside_existence_region", os.str());
  }
  return ModulatedFront(fp, cp, ac, eps, delta, x0);
}

}  // namespace nlkpp

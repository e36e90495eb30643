#include "nlkpp/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlkpp/error.hpp"

namespace nlkpp {

double lambda_exact(const CriticalPoint& cp, const KernelModel& m, double eps, double delta) {
  const double k = cp.k_c + delta;
  return -k * k - (cp.mu_c + eps * eps) * m.fourier(k, 0);
}

namespace {

double omega_closed(double k, double mu, double phi, double phi2) {
  return mu * phi * (mu * (phi + phi2) / (4.0 * k * k + mu * phi2) + 2.0 * (1.0 + phi));
}

double cond(const Mat3& A) {
  Eigen::JacobiSVD<Mat3> svd(A);
  const auto& sv = svd.singularValues();
  if (sv(2) == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / sv(2);
}

Mat3 assemble_mc(double a, double mu) {
  const double a2 = a * a;
  Mat3 M;
  M << 0.0, -mu, -mu,
       3.0 * a2, -a2, 0.0,
       -2.0, 0.0, -1.0;
  return M;
}

}  // namespace

AmplitudeCoeffs amplitude_coeffs(const CriticalPoint& cp, const KernelModel& m) {
  const double k = cp.k_c, mu = cp.mu_c;
  const double denom = 4.0 * k * k + mu * cp.phi_2kc;
  if (std::abs(denom) < 1e-12) {
    throw Error(ErrorKind::precondition, "h2_violation",
                "4k_c^2 + mu_c phi_hat(2k_c) = 0: second harmonic is resonant");
  }
  AmplitudeCoeffs ac;
  ac.phi_kc = cp.phi_kc;
  ac.omega = omega_closed(k, mu, cp.phi_kc, cp.phi_2kc);
  ac.zeta = 1.0 + 0.5 * mu * cp.phi_dd_kc;
  if (m.is_exponential()) {
    const double a2 = m.a() * m.a(), k2 = k * k;
    const double pa = a2 + k2, pb = 1.0 + k2;
    ac.zeta_form_a = 4.0 * k2 * mu * (3.0 * a2 / (pa * pa * pa) - 2.0 / (pb * pb * pb));
    ac.zeta_form_diff = std::abs(ac.zeta_form_a - ac.zeta);
    ac.kappa0 = -4.0 * k2 * pb * (3.0 * a2 / (pa * pa * pa) - 2.0 / (pb * pb * pb));
    ac.kappa1 = -(1.0 + 5.0 * k2) / mu +
                m.fourier_v(k) * (a2 + 5.0 * a2 * k2 - 3.0 * k2 + k2 * k2) / (pa * pa) +
                m.fourier_w(k);
  } else {
    ac.zeta_form_a = std::numeric_limits<double>::quiet_NaN();
  }
  if (!(ac.zeta > 0.0)) {
    throw Error(ErrorKind::precondition, "h2_violation", "zeta <= 0");
  }
  if (!(ac.omega < 0.0)) {
    std::ostringstream os;
    os << "omega = " << ac.omega << " >= 0: bifurcation is not supercritical";
    throw Error(ErrorKind::precondition, "h2_violation", os.str());
  }
  return ac;
}

TWCoeffs tw_coeffs(const CriticalPoint& cp, const KernelModel& m, double s) {
  const double a2 = m.a() * m.a();
  const double k2 = cp.k_c * cp.k_c;
  TWCoeffs tw;
  tw.s = s;
  tw.alpha0 = 2.0 * k2 - 3.0 * a2 * k2 - a2;
  tw.alpha1 = (1.0 + k2) * (a2 + k2) * s;
  tw.alpha2 = 4.0 * k2 * (1.0 + a2 + 3.0 * k2);
  tw.Delta = tw.alpha1 * tw.alpha1 - 4.0 * tw.alpha0 * tw.alpha2;
  const double zeta = 1.0 + 0.5 * cp.mu_c * cp.phi_dd_kc;
  tw.s_min = std::sqrt(-4.0 * cp.phi_kc * zeta);
  if (tw.Delta >= 0.0) {
    const double r = std::sqrt(tw.Delta);
    tw.chi_plus = (-tw.alpha1 + r) / (2.0 * tw.alpha2);
    tw.chi_minus = (-tw.alpha1 - r) / (2.0 * tw.alpha2);
  } else {
    tw.chi_plus = tw.chi_minus = std::numeric_limits<double>::quiet_NaN();
  }
  return tw;
}

Vec3 quad_n(const Vec3& U) { return Vec3(U(0) * (U(1) + U(2)), 0.0, 0.0); }

Vec3 quad_cross(const Vec3& X, const Vec3& Y) {
  return quad_n(X + Y) - quad_n(X) - quad_n(Y);
}

ModeVectors mode_vectors(const CriticalPoint& cp, const KernelModel& m) {
  const double a = m.a(), a2 = a * a;
  const double k = cp.k_c, k2 = k * k, mu = cp.mu_c;
  const double phi = cp.phi_kc;
  const double pa = a2 + k2, pb = 1.0 + k2;

  ModeVectors mv;
  mv.k_c = k;
  mv.M_c = assemble_mc(a, mu);
  mv.M_r << 0.0, -1.0, -1.0,
            0.0, 0.0, 0.0,
            0.0, 0.0, 0.0;

  mv.E = Vec3(1.0, m.fourier_v(k), m.fourier_w(k));
  mv.P1 = Vec3(1.0, -mu / pa, -mu / pb);
  const double denom2 = 4.0 * k2 + mu * cp.phi_2kc;
  mv.E2 = -phi / denom2 * Vec3(1.0, m.fourier_v(2.0 * k), m.fourier_w(2.0 * k));
  mv.E0 = -(phi / mu) * Vec3(1.0, 3.0, -2.0);
  mv.E1 = Vec3(1.0, 3.0 * a2 * (pa - 1.0) / (pa * pa), -2.0 * k2 / (pb * pb));

  const Mat3 L0 = mv.L(0), L2 = mv.L(2), L1 = mv.L(1);
  for (const auto& [name, Lj] : {std::pair{"L_0", L0}, std::pair{"L_2", L2}}) {
    const double c = cond(Lj);
    if (!(c < 1e12)) {
      std::ostringstream os;
      os << name << " is numerically singular (condition number " << c << ")";
      throw Error(ErrorKind::numerical, "resonance", os.str());
    }
  }
  const Vec3 NE = quad_n(mv.E);
  mv.E0_solve = L0.partialPivLu().solve(NE);
  mv.E2_solve = L2.partialPivLu().solve(NE);
  // L_1 is singular; pin the first component to 1 and solve in the
  // least-squares sense (the system is consistent since E . P1 = 0).
  Eigen::Matrix<double, 4, 3> A;
  A.topRows<3>() = L1;
  A.row(3) << 1.0, 0.0, 0.0;
  Eigen::Vector4d rhs;
  rhs << mv.E, 1.0;
  mv.E1_solve = A.colPivHouseholderQr().solve(rhs);

  mv.max_route_diff = std::max({(mv.E0 - mv.E0_solve).cwiseAbs().maxCoeff(),
                                (mv.E2 - mv.E2_solve).cwiseAbs().maxCoeff(),
                                (mv.E1 - mv.E1_solve).cwiseAbs().maxCoeff()});
  if (mv.max_route_diff > 1e-10) {
    std::ostringstream os;
    os << "closed-form mode vectors differ from direct solves by " << mv.max_route_diff;
    throw Error(ErrorKind::numerical, "route_mismatch", os.str());
  }

  mv.Etilde0 = quad_cross(mv.E0, mv.E);
  mv.Etilde2 = quad_cross(mv.E2, mv.E);
  return mv;
}

OmegaReport omega_routes(const CriticalPoint& cp, const KernelModel& m, double mu) {
  const double k = cp.k_c;
  const double phi = m.fourier(k, 0), phi2 = m.fourier(2.0 * k, 0), phi0 = m.fourier(0.0, 0);
  OmegaReport r;
  r.closed_form = omega_closed(k, mu, phi, phi2);

  // Second-order Fourier modes of v: e^{2ix} and constant components.
  const double e20 = mu * phi / (-4.0 * k * k - mu * phi2);
  const double e11 = -2.0 * phi / phi0;
  r.fourier_route = 2.0 * (-(mu / 2.0) * (e20 * phi2 + e20 * phi) -
                           (mu / 2.0) * (e11 * phi + e11 * phi0));

  if (m.is_exponential()) {
    const double a = m.a(), k2 = k * k;
    const Mat3 Mc = assemble_mc(a, mu);
    // Kernel and cokernel of L_1 taken numerically (smallest singular
    // pair), each scaled to first component 1.
    Eigen::JacobiSVD<Mat3> svd(Mc - k2 * Mat3::Identity(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vec3 E = svd.matrixV().col(2) / svd.matrixV()(0, 2);
    const Vec3 P1 = svd.matrixU().col(2) / svd.matrixU()(0, 2);
    const Vec3 NE = quad_n(E);
    const Vec3 E0 = Mc.partialPivLu().solve(NE);
    const Vec3 E2 = (Mc - 4.0 * k2 * Mat3::Identity()).partialPivLu().solve(NE);
    r.elliptic_route = -mu * mu * (quad_cross(E2, E) + 2.0 * quad_cross(E0, E)).dot(P1);
  } else {
    r.elliptic_route = std::numeric_limits<double>::quiet_NaN();
  }
  r.max_diff = std::abs(r.closed_form - r.fourier_route);
  if (std::isfinite(r.elliptic_route)) {
    r.max_diff = std::max({r.max_diff, std::abs(r.closed_form - r.elliptic_route),
                           std::abs(r.fourier_route - r.elliptic_route)});
  }
  return r;
}

OmegaReport omega_consistency(const CriticalPoint& cp, const KernelModel& m, double tol) {
  OmegaReport r = omega_routes(cp, m, cp.mu_c);
  if (!(r.max_diff <= tol)) {
    std::ostringstream os;
    os << "omega routes disagree: closed " << r.closed_form << ", Fourier " << r.fourier_route
       << ", elliptic " << r.elliptic_route;
    throw Error(ErrorKind::numerical, "omega_inconsistent", os.str());
  }
  return r;
}

}  // namespace nlkpp

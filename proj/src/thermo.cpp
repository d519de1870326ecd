// EOS implementations. The Peng-Robinson branch keeps every iteration protocol
// (Newton starts, bisection brackets, tolerances) fixed so results are
// reproducible bit-for-bit across runs.
#include "gpr1d/thermo.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gpr1d::thermo {

namespace {

const double kSqrt2 = std::sqrt(2.0);

[[noreturn]] void fail(const std::string& what) { throw EosError(what); }

void require(bool ok, const char* what) {
  if (!ok) fail(what);
}

// Real roots of a monic polynomial (leading coefficient 1, coeffs c are the
// remaining ones, highest order first) via the companion-matrix eigenvalues.
// The matrix is balanced first (Parlett-Reinsch, powers of two) so roots of
// widely different magnitude keep full relative accuracy through the QR; the
// imaginary-part filter is loose enough to keep nearly-double real roots,
// whose eigenvalue noise scales with the square root of machine epsilon.
template <int N>
std::vector<double> monic_real_roots(const std::array<double, N>& c) {
  Eigen::Matrix<double, N, N> comp = Eigen::Matrix<double, N, N>::Zero();
  for (int i = 0; i < N; ++i) comp(0, i) = -c[static_cast<size_t>(i)];
  for (int i = 1; i < N; ++i) comp(i, i - 1) = 1.0;
  for (bool again = true; again;) {
    again = false;
    for (int i = 0; i < N; ++i) {
      double cn = 0.0, rn = 0.0;
      for (int j = 0; j < N; ++j) {
        if (j == i) continue;
        cn += std::abs(comp(j, i));
        rn += std::abs(comp(i, j));
      }
      if (cn == 0.0 || rn == 0.0) continue;
      const double s = cn + rn;
      double f = 1.0;
      double g = rn / 2.0;
      while (cn < g) {
        f *= 2.0;
        cn *= 4.0;
      }
      g = rn * 2.0;
      while (cn > g) {
        f /= 2.0;
        cn /= 4.0;
      }
      if ((cn + rn) / f < 0.95 * s) {
        again = true;
        for (int j = 0; j < N; ++j) comp(i, j) /= f;
        for (int j = 0; j < N; ++j) comp(j, i) *= f;
      }
    }
  }
  Eigen::EigenSolver<Eigen::Matrix<double, N, N>> es(comp, false);
  std::vector<double> out;
  for (int i = 0; i < N; ++i) {
    std::complex<double> z = es.eigenvalues()(i);
    if (std::abs(z.imag()) < 1e-6 * std::max(1.0, std::abs(z.real())))
      out.push_back(z.real());
  }
  return out;
}

}  // namespace

Eos make_ideal(double gamma, double cv) {
  require(gamma > 1.0 && cv > 0.0, "ideal gas requires gamma > 1 and c_v > 0");
  Eos e;
  e.kind = EosKind::Ideal;
  e.gamma = gamma;
  e.cv = cv;
  e.R = (gamma - 1.0) * cv;
  return e;
}

Eos make_stiffened(double gamma, double cv, double p_inf) {
  require(gamma > 1.0 && cv > 0.0 && p_inf >= 0.0,
          "stiffened gas requires gamma > 1, c_v > 0, p_inf >= 0");
  Eos e;
  e.kind = EosKind::Stiffened;
  e.gamma = gamma;
  e.cv = cv;
  e.p_inf = p_inf;
  e.R = (gamma - 1.0) * cv;
  return e;
}

Eos make_peng_robinson(double rho_c, double p_c, double T_c, double M,
                       double omega, double cv) {
  require(rho_c > 0.0 && p_c > 0.0 && T_c > 0.0 && M > 0.0 && cv > 0.0,
          "Peng-Robinson requires positive rho_c, p_c, T_c, M, c_v");
  Eos e;
  e.kind = EosKind::PengRobinson;
  e.rho_c = rho_c;
  e.p_c = p_c;
  e.T_c = T_c;
  e.M = M;
  e.omega = omega;
  e.cv = cv;
  e.R = kGasConstant / M;
  e.b = 0.07780 * e.R * T_c / p_c;
  e.a0 = 0.45724 * e.R * e.R * T_c * T_c / p_c;
  e.kappa = 0.37464 + 1.54226 * omega - 0.26992 * omega * omega;
  return e;
}

namespace pr {

double attraction(const Eos& e, double T) {
  double f = 1.0 + e.kappa * (1.0 - std::sqrt(T / e.T_c));
  return e.a0 * f * f;
}

double attraction_dT(const Eos& e, double T) {
  double sq = std::sqrt(T / e.T_c);
  return -e.a0 * e.kappa * (1.0 + e.kappa * (1.0 - sq)) / (sq * e.T_c);
}

double attraction_d2T(const Eos& e, double T) {
  return e.a0 * e.kappa * (1.0 + e.kappa) / (2.0 * e.T_c * e.T_c) *
         std::pow(T / e.T_c, -1.5);
}

double volume_integral(const Eos& e, double v) {
  double b = e.b;
  return std::log((v + (1.0 - kSqrt2) * b) / (v + (1.0 + kSqrt2) * b)) /
         (2.0 * kSqrt2 * b);
}

namespace {
double denom(const Eos& e, double v) {
  return v * v + 2.0 * e.b * v - e.b * e.b;
}
}  // namespace

}  // namespace pr

double pressure_Tv(const Eos& e, double T, double v) {
  switch (e.kind) {
    case EosKind::Ideal:
      return e.R * T / v;
    case EosKind::Stiffened:
      return e.R * T / v - e.p_inf;
    case EosKind::PengRobinson:
      require(v > e.b, "specific volume at or below the covolume pole");
      return e.R * T / (v - e.b) - pr::attraction(e, T) / pr::denom(e, v);
  }
  fail("unreachable");
}

double dp_dT(const Eos& e, double T, double v) {
  switch (e.kind) {
    case EosKind::Ideal:
    case EosKind::Stiffened:
      return e.R / v;
    case EosKind::PengRobinson:
      return e.R / (v - e.b) - pr::attraction_dT(e, T) / pr::denom(e, v);
  }
  fail("unreachable");
}

double dp_dv(const Eos& e, double T, double v) {
  switch (e.kind) {
    case EosKind::Ideal:
    case EosKind::Stiffened:
      return -e.R * T / (v * v);
    case EosKind::PengRobinson: {
      double d = pr::denom(e, v);
      return -e.R * T / ((v - e.b) * (v - e.b)) +
             pr::attraction(e, T) * (2.0 * v + 2.0 * e.b) / (d * d);
    }
  }
  fail("unreachable");
}

double internal_energy_Tv(const Eos& e, double T, double v) {
  switch (e.kind) {
    case EosKind::Ideal:
      return e.cv * T;
    case EosKind::Stiffened:
      return e.cv * T + e.p_inf * v;
    case EosKind::PengRobinson:
      return e.cv * T + (pr::attraction(e, T) - T * pr::attraction_dT(e, T)) *
                            pr::volume_integral(e, v);
  }
  fail("unreachable");
}

double cv_actual(const Eos& e, double T, double v) {
  if (e.kind != EosKind::PengRobinson) return e.cv;
  return e.cv - T * pr::attraction_d2T(e, T) * pr::volume_integral(e, v);
}

double entropy_Tv(const Eos& e, double T, double v) {
  switch (e.kind) {
    case EosKind::Ideal:
    case EosKind::Stiffened:
      return e.cv * std::log(T) + e.R * std::log(v);
    case EosKind::PengRobinson:
      return e.cv * std::log(T) + e.R * std::log(v - e.b) -
             pr::attraction_dT(e, T) * pr::volume_integral(e, v);
  }
  fail("unreachable");
}

double enthalpy_Tv(const Eos& e, double T, double v) {
  return internal_energy_Tv(e, T, v) + pressure_Tv(e, T, v) * v;
}

double gibbs_Tv(const Eos& e, double T, double v) {
  return internal_energy_Tv(e, T, v) + pressure_Tv(e, T, v) * v -
         T * entropy_Tv(e, T, v);
}

double sound_speed_sq_Tv(const Eos& e, double T, double v) {
  double dpT = dp_dT(e, T, v);
  return -v * v * dp_dv(e, T, v) + T * v * v * dpT * dpT / cv_actual(e, T, v);
}

double temperature_from_rho_p(const Eos& e, double rho, double p) {
  require(rho > 0.0, "temperature_from_rho_p: rho must be positive");
  double v = 1.0 / rho;
  switch (e.kind) {
    case EosKind::Ideal:
      return p * v / e.R;
    case EosKind::Stiffened:
      return (p + e.p_inf) * v / e.R;
    case EosKind::PengRobinson: {
      require(v > e.b, "temperature_from_rho_p: density above the covolume pole");
      double T = std::max(p * v / e.R, 100.0);
      for (int i = 0; i < 200; ++i) {
        double f = pressure_Tv(e, T, v) - p;
        double T2 = T - f / dp_dT(e, T, v);
        if (T2 <= 0.0) T2 = T / 2.0;
        if (std::abs(T2 - T) < 1e-14 * T) return T2;
        T = T2;
      }
      return T;
    }
  }
  fail("unreachable");
}

double temperature_from_rho_eps(const Eos& e, double rho, double eps) {
  require(rho > 0.0, "temperature_from_rho_eps: rho must be positive");
  double v = 1.0 / rho;
  switch (e.kind) {
    case EosKind::Ideal: {
      double T = eps / e.cv;
      require(T > 0.0, "temperature_from_rho_eps: energy below the EOS floor");
      return T;
    }
    case EosKind::Stiffened: {
      double T = (eps - e.p_inf * v) / e.cv;
      require(T > 0.0, "temperature_from_rho_eps: energy below the EOS floor");
      return T;
    }
    case EosKind::PengRobinson: {
      require(v > e.b, "temperature_from_rho_eps: density above the covolume pole");
      double T = std::max(eps / e.cv, 50.0);
      for (int i = 0; i < 200; ++i) {
        double f = internal_energy_Tv(e, T, v) - eps;
        double T2 = T - f / cv_actual(e, T, v);
        if (T2 <= 0.0) T2 = T / 2.0;
        if (std::abs(T2 - T) < 1e-14 * T) return T2;
        T = T2;
      }
      return T;
    }
  }
  fail("unreachable");
}

double pressure(const Eos& e, double rho, double eps) {
  require(rho > 0.0, "pressure: rho must be positive");
  switch (e.kind) {
    case EosKind::Ideal:
      return (e.gamma - 1.0) * rho * eps;
    case EosKind::Stiffened:
      return (e.gamma - 1.0) * rho * eps - e.gamma * e.p_inf;
    case EosKind::PengRobinson: {
      double T = temperature_from_rho_eps(e, rho, eps);
      return pressure_Tv(e, T, 1.0 / rho);
    }
  }
  fail("unreachable");
}

double internal_energy(const Eos& e, double rho, double p) {
  require(rho > 0.0, "internal_energy: rho must be positive");
  switch (e.kind) {
    case EosKind::Ideal:
      return p / ((e.gamma - 1.0) * rho);
    case EosKind::Stiffened:
      return (p + e.gamma * e.p_inf) / ((e.gamma - 1.0) * rho);
    case EosKind::PengRobinson: {
      double T = temperature_from_rho_p(e, rho, p);
      return internal_energy_Tv(e, T, 1.0 / rho);
    }
  }
  fail("unreachable");
}

double temperature(const Eos& e, double rho, double eps) {
  return temperature_from_rho_eps(e, rho, eps);
}

double sound_speed(const Eos& e, double rho, double p) {
  double T = temperature_from_rho_p(e, rho, p);
  double c2 = sound_speed_sq_Tv(e, T, 1.0 / rho);
  if (!(c2 > 0.0)) {
    std::ostringstream os;
    os << "spinodal state: c_s^2 = " << c2 << " at rho = " << rho
       << ", p = " << p;
    throw SpinodalError(os.str());
  }
  return std::sqrt(c2);
}

double enthalpy(double rho, double p, double eps) { return eps + p / rho; }

double gibbs(const Eos& e, double rho, double T, double p) {
  double v = 1.0 / rho;
  return internal_energy_Tv(e, T, v) + p * v - T * entropy_Tv(e, T, v);
}

std::vector<double> volume_roots(const Eos& e, double T, double p) {
  require(T > 0.0 && p > 0.0, "volume_roots: T and p must be positive");
  if (e.kind != EosKind::PengRobinson) return {e.R * T / (p + e.p_inf)};
  double A = pr::attraction(e, T) * p / ((e.R * T) * (e.R * T));
  double B = e.b * p / (e.R * T);
  // Z^3 + c0 Z^2 + c1 Z + c2 = 0
  std::array<double, 3> c = {-(1.0 - B), A - 3.0 * B * B - 2.0 * B,
                             -(A * B - B * B - B * B * B)};
  std::vector<double> out;
  for (double z : monic_real_roots<3>(c))
    if (z > B) out.push_back(z * e.R * T / p);
  std::sort(out.begin(), out.end());
  require(!out.empty(), "volume_roots: no admissible root of the cubic");
  return out;
}

SpinodalVolumes spinodal_volumes(const Eos& e, double T) {
  if (e.kind != EosKind::PengRobinson)
    throw SpinodalError("spinodal_volumes: EOS has no two-phase dome");
  // dp/dv = 0  <=>  RT (v^2+2bv-b^2)^2 = 2 a (v+b) (v-b)^2, a quartic in v.
  double RT = e.R * T;
  double a = pr::attraction(e, T);
  double b = e.b;
  std::array<double, 5> q = {RT,
                             4.0 * b * RT - 2.0 * a,
                             2.0 * b * b * RT + 2.0 * a * b,
                             -4.0 * b * b * b * RT + 2.0 * a * b * b,
                             b * b * b * b * RT - 2.0 * a * b * b * b};
  std::array<double, 4> monic;
  for (int i = 0; i < 4; ++i) monic[static_cast<size_t>(i)] = q[static_cast<size_t>(i + 1)] / q[0];
  auto poly = [&q](double v) {
    return (((q[0] * v + q[1]) * v + q[2]) * v + q[3]) * v + q[4];
  };
  auto dpoly = [&q](double v) {
    return ((4.0 * q[0] * v + 3.0 * q[1]) * v + 2.0 * q[2]) * v + q[3];
  };
  std::vector<double> roots;
  for (double v : monic_real_roots<4>(monic)) {
    if (v <= b) continue;
    for (int k = 0; k < 2; ++k) {
      double d = dpoly(v);
      if (d != 0.0) v -= poly(v) / d;
    }
    if (v > b) roots.push_back(v);
  }
  std::sort(roots.begin(), roots.end());
  if (roots.size() != 2) {
    std::ostringstream os;
    os << "spinodal_volumes: isotherm at T = " << T << " has "
       << roots.size() << " extrema (supercritical or no dome)";
    throw SpinodalError(os.str());
  }
  return {roots[0], roots[1]};
}

double saturation_pressure(const Eos& e, double T) {
  if (e.kind != EosKind::PengRobinson)
    throw EosError("saturation_pressure: unsupported EOS (no vapor dome)");
  if (T >= e.T_c) {
    std::ostringstream os;
    os << "saturation_pressure: T = " << T << " is supercritical (T_c = "
       << e.T_c << ")";
    throw EosError(os.str());
  }
  SpinodalVolumes ex = spinodal_volumes(e, T);
  double plo = std::max(pressure_Tv(e, T, ex.v_pmin), 1e-8 * e.p_c);
  double phi = pressure_Tv(e, T, ex.v_pmax);

  auto gdiff = [&](double p) {
    std::vector<double> r = volume_roots(e, T, p);
    return gibbs_Tv(e, T, r.front()) - gibbs_Tv(e, T, r.back());
  };

  double lo = plo * (1.0 + 1e-12), hi = phi * (1.0 - 1e-12);
  double flo = gdiff(lo), fhi = gdiff(hi);
  if (!(flo * fhi < 0.0)) {
    std::ostringstream os;
    os << "saturation_pressure: no Gibbs sign change in [" << lo << ", " << hi
       << "] at T = " << T;
    throw EosError(os.str());
  }
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    double fm = gdiff(mid);
    if (fm * flo <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
    if (hi - lo < 1e-15 * mid) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace gpr1d::thermo

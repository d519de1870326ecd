// Interphase mass/heat flux closure from gas-kinetic half-space analysis.
#include "gpr1d/phase_model.hpp"

#include <atomic>
#include <cmath>
#include <string>

namespace gpr1d::phase_model {

namespace {

std::atomic<long long> g_clamp_events{0};

constexpr double kSigmaMin = 1e-4;

[[noreturn]] void fail(const std::string& msg) { throw thermo::EosError(msg); }

}  // namespace

double condensation_coefficient_raw(double rho_l, double rho_v, double rho_c) {
  if (!(rho_l > 0.0) || !(rho_v > 0.0) || !(rho_c > 0.0))
    fail("condensation coefficient requires positive densities");
  const double nu_l = 1.0 / rho_l - 1.0 / (3.0 * rho_c);
  const double nu_v = 1.0 / rho_v - 1.0 / (3.0 * rho_c);
  if (!(nu_l > 0.0))
    fail("liquid density exceeds the packing limit of the condensation model");
  if (!(nu_v > 0.0))
    fail("vapor density exceeds the packing limit of the condensation model");
  const double r = std::cbrt(nu_l / nu_v);
  if (r == 1.0) return 0.0;  // equal free volumes: vanishing coefficient
  return (1.0 - r) * std::exp(-0.5 / (r - 1.0));
}

double condensation_coefficient(double rho_l, double rho_v, double rho_c) {
  const double raw = condensation_coefficient_raw(rho_l, rho_v, rho_c);
  if (raw > kSigmaMin && raw <= 1.0) return raw;
  g_clamp_events.fetch_add(1, std::memory_order_relaxed);
  if (raw <= kSigmaMin) return kSigmaMin;
  return 1.0;
}

long long clamp_events() { return g_clamp_events.load(std::memory_order_relaxed); }

void reset_clamp_events() { g_clamp_events.store(0, std::memory_order_relaxed); }

std::array<double, 3> k_coefficients(double sigma_c) {
  if (!(sigma_c > 0.0)) fail("condensation coefficient must be positive");
  const double sp = std::sqrt(M_PI);
  const double k1 =
      9.0 / 8.0 * sp * (0.5 + 16.0 / (9.0 * M_PI)) - sp * (1.0 - sigma_c) / sigma_c;
  const double k2 = 0.5 * sp * (0.5 + 52.0 / (25.0 * M_PI));
  const double k3 = 0.25 * sp * (0.5 + 8.0 / (5.0 * M_PI));
  return {k1, k2, k3};
}

OnsagerClosure onsager_coefficients(double sigma_c, double rho_v, double T_l,
                                    double R, double p_sat) {
  const auto k = k_coefficients(sigma_c);
  const double det = k[0] * k[1] - k[2] * k[2];
  if (det == 0.0) fail("singular kinetic coefficient matrix");
  OnsagerClosure c;
  c.sigma_c = sigma_c;
  c.k1 = k[0];
  c.k2 = k[1];
  c.k3 = k[2];
  c.p_sat = p_sat;
  const double s = std::sqrt(2.0 * T_l);
  c.L_mm = k[1] / det * rho_v * std::sqrt(2.0 * T_l / R);
  c.L_me = k[2] / det * rho_v * T_l * s;
  c.L_ee = k[0] / det * p_sat * T_l * s;
  return c;
}

InterfacialFluxes closure_fluxes(const thermo::Eos& eos, double T_l, double p_l,
                                 double T_v, double p_v) {
  if (eos.kind != thermo::EosKind::PengRobinson)
    fail("interphase closure requires the cubic equation of state");
  const double v_l = thermo::volume_roots(eos, T_l, p_l).front();
  const double v_v = thermo::volume_roots(eos, T_v, p_v).back();
  const double g_l = thermo::gibbs_Tv(eos, T_l, v_l);
  const double g_v = thermo::gibbs_Tv(eos, T_v, v_v);
  const double h_v = thermo::internal_energy_Tv(eos, T_v, v_v) + p_v * v_v;

  InterfacialFluxes f;
  f.F_m = (-g_v + h_v) / T_v - (-g_l + h_v) / T_l;
  f.F_e = 1.0 / T_v - 1.0 / T_l;
  const double sigma_c =
      condensation_coefficient(1.0 / v_l, 1.0 / v_v, eos.rho_c);
  const double p_sat = thermo::saturation_pressure(eos, T_l);
  f.closure = onsager_coefficients(sigma_c, 1.0 / v_v, T_l, eos.R, p_sat);
  f.mdot = f.closure.L_mm * f.F_m + f.closure.L_me * f.F_e;
  f.q_v = f.closure.L_me * f.F_m + f.closure.L_ee * f.F_e;
  f.chi = f.mdot * f.F_m + f.q_v * f.F_e;
  return f;
}

}  // namespace gpr1d::phase_model

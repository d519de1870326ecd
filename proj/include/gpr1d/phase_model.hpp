// Kinetic-theory interphase closure: condensation coefficient, its gas-kinetic
// integral coefficients, and the Onsager flux pair (mass and vapor heat flux)
// driven by chemical-potential and temperature jumps.
#pragma once

#include <array>

#include "gpr1d/thermo.hpp"

namespace gpr1d::phase_model {

struct OnsagerClosure {
  double sigma_c = 0.0;          // condensation coefficient after clamping
  double k1 = 0.0, k2 = 0.0, k3 = 0.0;
  double L_mm = 0.0, L_me = 0.0, L_ee = 0.0;  // L_em == L_me by construction
  double p_sat = 0.0;            // saturation pressure at the liquid temperature
};

struct InterfacialFluxes {
  double mdot = 0.0;   // interfacial mass flux
  double q_v = 0.0;    // vapor-side interfacial heat flux
  double chi = 0.0;    // entropy production of the interface, F^T L F
  double F_m = 0.0;    // chemical-potential driving force
  double F_e = 0.0;    // thermal driving force
  OnsagerClosure closure;
};

// Raw condensation coefficient (1 - r) exp(-1/(2(r - 1))) with
// r = (nu_l / nu_v)^{1/3}, nu_x = 1/rho_x - 1/(3 rho_c).
double condensation_coefficient_raw(double rho_l, double rho_v, double rho_c);
// Clamped to (1e-4, 1]; out-of-range evaluations bump a diagnostic counter.
double condensation_coefficient(double rho_l, double rho_v, double rho_c);
long long clamp_events();
void reset_clamp_events();

// {k1, k2, k3}; requires sigma_c > 0.
std::array<double, 3> k_coefficients(double sigma_c);

OnsagerClosure onsager_coefficients(double sigma_c, double rho_v, double T_l,
                                    double R, double p_sat);

// Driving forces and fluxes between bulk sides at (T_l, p_l) and (T_v, p_v).
// Liquid density is the smallest-volume EOS root, vapor the largest.
InterfacialFluxes closure_fluxes(const thermo::Eos&, double T_l, double p_l,
                                 double T_v, double p_v);

}  // namespace gpr1d::phase_model

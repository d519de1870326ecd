// State algebra of the hyperbolic heat-conduction flow model: primitive and
// conserved conversions, total-energy potential, physical flux, signal speeds,
// relaxation source, and the alpha/tau/theta material calibration.
#pragma once

#include <array>

#include "gpr1d/thermo.hpp"

namespace gpr1d::gpr_core {

struct StateError : SolverError {
  using SolverError::SolverError;
};

enum class TauModel { Kinetic, Thermomass, Fixed };

// Per-phase material: EOS, stiff-limit conductivity, and the relaxation
// calibration frozen at the reference state (rho0, T0).
struct Material {
  thermo::Eos eos;
  double lambda = 0.0;  // W/(m K)
  double rho0 = 0.0;
  double T0 = 0.0;
  TauModel tau_model = TauModel::Kinetic;
  double tau_given = 0.0;  // input for TauModel::Fixed
  // Derived at setup:
  double cs0 = 0.0;      // sound speed at (rho0, T0)
  double tau_ref = 0.0;  // relaxation time at the reference state
  double alpha = 0.0;
  double alpha2 = 0.0;
};

// Relaxation-time closures (pointwise forms).
double tau_kinetic(double lambda, double rho, double cv, double cs, double T,
                   double T0, double rho0);
double tau_thermomass(double lambda, double rho, double cv, double cp, double T);

// alpha = sqrt(lambda rho0 / (tau T0)); the inverse identity
// alpha^2 tau T0 / rho0 == lambda holds by construction.
double derive_alpha(double lambda, double rho0, double T0, double tau);

Material make_material(const thermo::Eos&, double lambda, double rho0, double T0,
                       TauModel tau_model = TauModel::Kinetic,
                       double tau_given = 0.0);

struct Prim {
  double rho = 0.0, u = 0.0, p = 0.0, j = 0.0;
};
// Densities of the conserved quantities: mass, momentum, total energy,
// thermal impulse.
struct Cons {
  double rho = 0.0, mom = 0.0, E = 0.0, J = 0.0;
};

double temperature(const Material&, const Prim&);
// e = eps + u^2/2 + alpha^2 j^2 / 2 (specific total energy).
double total_energy(const Material&, const Prim&, double T);
Cons to_cons(const Material&, const Prim&);
Prim to_prim(const Material&, const Cons&);  // throws StateError when inadmissible

double heat_flux(const Material&, double T, double j);       // q = alpha^2 T j
double c_h(const Material&, double rho, double T);           // (alpha/rho) sqrt(T/cv)
double max_signal_speed(const Material&, const Prim&, double T);  // |u|+max(cs,ch)

// (rho u, rho u^2 + p, (rho e + p) u + q, rho j u + T)
std::array<double, 4> physical_flux(const Material&, const Prim&, double T,
                                    double e_total);

double theta(const Material&, double rho, double T);  // tau_ref alpha^2 (rho/rho0)(T0/T)
double tau_H(const Material&, double rho, double T);  // theta / alpha^2 = rho lambda/(T alpha^2)
double relaxation_source(const Material&, double rho_j, double rho, double T);  // -rho j/tau_H
double entropy_production(const Material&, double j);  // sigma = alpha^4 j^2 / lambda

}  // namespace gpr1d::gpr_core

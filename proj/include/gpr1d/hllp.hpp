// Two-phase interfacial Riemann solvers: a four-wave fan (two acoustic outer
// waves, an undercompressive phase boundary) closed by the kinetic-theory
// interphase fluxes. Two variants: a 2x2 Newton in (mdot*, q*_v) against the
// full thermodynamic jump system, and a scalar iteration in mdot* against a
// reduced system with an energy correction after convergence.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gpr1d/errors.hpp"
#include "gpr1d/gpr_core.hpp"
#include "gpr1d/phase_model.hpp"

namespace gpr1d::hllp {

struct NonconvergenceError : SolverError {
  using SolverError::SolverError;
};

enum class SolverKind { Mq, M };

// Bulk side of the interface Riemann problem, liquid-left frame.
struct PhaseState {
  gpr_core::Prim w;
  double T = 0.0;
  double cs = 0.0;  // acoustic sound speed for the Davis estimates
  double e = 0.0;   // specific total energy
  double q = 0.0;   // heat flux alpha^2 T j
};

PhaseState phase_state(const gpr_core::Material&, const gpr_core::Prim&);

// Star region mechanical state for a prescribed interfacial mass flux.
struct MechanicalStars {
  double s_l = 0.0, s_v = 0.0;    // outer wave speeds
  double m_l = 0.0, m_v = 0.0;    // outer-wave mass fluxes rho (u - s)
  double s_sharp = 0.0;           // phase-boundary speed
  double rho_l = 0.0, rho_v = 0.0;
  double u_l = 0.0, u_v = 0.0;
  double p_l = 0.0, p_v = 0.0;
  bool ok = false;  // star densities positive and s_l < s^# < s_v
};

MechanicalStars solve_mechanical(const PhaseState& l, const PhaseState& v,
                                 double mdot_star, double delta_p_sigma);

// Linear energy system across both outer waves and the phase boundary.
struct EnergyStars {
  double e_l = 0.0, e_v = 0.0;  // specific total star energies
  double q_l = 0.0;             // liquid-side interfacial heat flux
};

EnergyStars energy_stars(const MechanicalStars&, double mdot_star, double q_v_star,
                         double delta_p_sigma, const PhaseState& l,
                         const PhaseState& v);

struct InterfaceSolution {
  gpr_core::Prim star_l, star_v;  // (rho*, u*, p*, j*) on each side
  double T_l = 0.0, T_v = 0.0;    // star temperatures
  double e_l = 0.0, e_v = 0.0;    // specific total star energies
  double s_l = 0.0, s_v = 0.0;    // outer wave speeds
  double s_sharp = 0.0;           // phase-boundary speed
  double mdot = 0.0;              // interfacial mass flux
  double q_v = 0.0, q_l = 0.0;    // interfacial heat fluxes
  double delta_T = 0.0;           // thermal-impulse jump defect, a posteriori
  double chi = 0.0;               // interfacial entropy production
  double delta_p_sigma = 0.0;     // surface-tension pressure jump (input)
  double F_m = 0.0, F_e = 0.0;    // closure driving forces at the accepted state
  double sigma_c = 0.0;
  int iterations = 0;
  double residual = 0.0;          // scaled fixed-point residual at acceptance
  bool fallback_used = false;     // EOS temperature fallback at accepted iterate
};

InterfaceSolution solve_hllp_mq(const gpr_core::Material& liquid,
                                const gpr_core::Material& vapor,
                                const gpr_core::Prim& q_l, const gpr_core::Prim& q_v,
                                double delta_p_sigma);
InterfaceSolution solve_hllp_m(const gpr_core::Material& liquid,
                               const gpr_core::Material& vapor,
                               const gpr_core::Prim& q_l, const gpr_core::Prim& q_v,
                               double delta_p_sigma);
InterfaceSolution solve(SolverKind, const gpr_core::Material& liquid,
                        const gpr_core::Material& vapor, const gpr_core::Prim& q_l,
                        const gpr_core::Prim& q_v, double delta_p_sigma);

// Scaled defect of every jump relation at a solution: |sum of terms| divided
// by the largest term magnitude. The first 7 are mechanical, the next 5
// thermodynamic; the last 2 are the constitutive heat-flux identities, which
// only the mq variant enforces (the reduced solver reports them as
// diagnostics).
struct JumpResiduals {
  std::vector<std::pair<std::string, double>> entries;
  double max_mechanical = 0.0;
  double max_thermodynamic = 0.0;
  double max_constitutive = 0.0;
};

JumpResiduals jump_residuals(const gpr_core::Material& liquid,
                             const gpr_core::Material& vapor, const PhaseState& l,
                             const PhaseState& v, const InterfaceSolution&);

}  // namespace gpr1d::hllp

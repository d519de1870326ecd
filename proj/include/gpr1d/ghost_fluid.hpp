// Sharp-interface plumbing for one phase boundary on a uniform 1D grid:
// face location, state gathering with orientation handling, star-state
// mapping back to the physical frame, interface advection, and refill of
// cells that change phase.
#pragma once

#include <array>
#include <span>

#include "gpr1d/hllp.hpp"

namespace gpr1d::ghost_fluid {

enum class Side { Left, Right };

struct InterfaceTrack {
  double x_gamma = 0.0;
  Side liquid_side = Side::Left;
  double last_speed = 0.0;  // most recent phase-boundary speed (diagnostic)
};

// Index of the face separating left-phase from right-phase cells: cells
// [0, f) lie left of the interface, [f, n) right of it; a cell center exactly
// on x_gamma belongs to the right side. Throws when the interface is not
// strictly interior (f outside [1, n-1]).
int interface_face(double x_gamma, double x0, double dx, int n);

gpr_core::Prim mirrored(const gpr_core::Prim&);

// Interface Riemann solution mapped to the physical frame: the star state
// seen by the left-side phase and by the right-side phase, plus the physical
// boundary speed. `canonical` keeps the full liquid-left solver record.
struct PhysicalInterface {
  gpr_core::Prim star_left, star_right;
  double T_left = 0.0, T_right = 0.0;
  double e_left = 0.0, e_right = 0.0;
  // Interfacial heat fluxes of the accepted solution, in the physical frame.
  // These balance the solution's energy jump relations exactly; the value the
  // constitutive law gives at (T*, j*) coincides for the two-flux solver but
  // not for the mechanical-only one, whose j* comes from the impulse jumps.
  double q_left = 0.0, q_right = 0.0;
  double s_sharp = 0.0;
  hllp::InterfaceSolution canonical;
};

// Gathers the two adjacent cell states (already decoded to primitives),
// mirrors into the liquid-left frame when the liquid sits right, solves, and
// maps the stars back.
PhysicalInterface solve_interface(hllp::SolverKind, const gpr_core::Material& liquid,
                                  const gpr_core::Material& vapor,
                                  const gpr_core::Prim& left_cell,
                                  const gpr_core::Prim& right_cell, Side liquid_side,
                                  double delta_p_sigma);

// x_gamma += s^# dt with the interface CFL guard |s^#| dt <= dx/2.
void advect_interface(InterfaceTrack&, double s_sharp, double dt, double dx);

// Overwrites cells whose side flipped (face moved f_old -> f_new) with the
// star conserved state of their new phase. Returns the number of refilled
// cells and the conservation defect sum (U_new - U_old) dx per component.
struct RefillResult {
  int cells = 0;
  std::array<long double, 4> delta{};
};

RefillResult fill_phase_change_cells(std::span<double> rho, std::span<double> mom,
                                     std::span<double> E, std::span<double> J,
                                     int f_old, int f_new,
                                     const std::array<double, 4>& star_left_cons,
                                     const std::array<double, 4>& star_right_cons,
                                     double dx);

}  // namespace gpr1d::ghost_fluid

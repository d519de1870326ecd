// Interface tracking and ghost-state plumbing for one phase boundary.
#include "gpr1d/ghost_fluid.hpp"

#include <cmath>
#include <sstream>

#include "gpr1d/errors.hpp"

namespace gpr1d::ghost_fluid {

int interface_face(double x_gamma, double x0, double dx, int n) {
  int f = static_cast<int>(std::ceil((x_gamma - x0) / dx - 0.5));
  // Settle float edge cases directly against the cell centers so the face and
  // the center classification can never disagree.
  while (f < n && x0 + (f + 0.5) * dx < x_gamma) ++f;
  while (f > 0 && x0 + (f - 0.5) * dx >= x_gamma) --f;
  if (f < 1 || f > n - 1) {
    std::ostringstream os;
    os << "interface at x=" << x_gamma
       << " reached the boundary region (face " << f << " of " << n << " cells)";
    throw SolverError(os.str());
  }
  return f;
}

gpr_core::Prim mirrored(const gpr_core::Prim& w) { return {w.rho, -w.u, w.p, -w.j}; }

PhysicalInterface solve_interface(hllp::SolverKind kind,
                                  const gpr_core::Material& liquid,
                                  const gpr_core::Material& vapor,
                                  const gpr_core::Prim& left_cell,
                                  const gpr_core::Prim& right_cell, Side liquid_side,
                                  double dps) {
  PhysicalInterface out;
  if (liquid_side == Side::Left) {
    out.canonical = hllp::solve(kind, liquid, vapor, left_cell, right_cell, dps);
    out.star_left = out.canonical.star_l;
    out.star_right = out.canonical.star_v;
    out.T_left = out.canonical.T_l;
    out.T_right = out.canonical.T_v;
    out.e_left = out.canonical.e_l;
    out.e_right = out.canonical.e_v;
    out.q_left = out.canonical.q_l;
    out.q_right = out.canonical.q_v;
    out.s_sharp = out.canonical.s_sharp;
  } else {
    // Liquid on the right: mirror into the liquid-left frame, solve, and
    // mirror the star states back. Scalars are frame-invariant.
    out.canonical = hllp::solve(kind, liquid, vapor, mirrored(right_cell),
                                mirrored(left_cell), dps);
    out.star_left = mirrored(out.canonical.star_v);
    out.star_right = mirrored(out.canonical.star_l);
    out.T_left = out.canonical.T_v;
    out.T_right = out.canonical.T_l;
    out.e_left = out.canonical.e_v;
    out.e_right = out.canonical.e_l;
    out.q_left = -out.canonical.q_v;
    out.q_right = -out.canonical.q_l;
    out.s_sharp = -out.canonical.s_sharp;
  }
  return out;
}

void advect_interface(InterfaceTrack& track, double s_sharp, double dt, double dx) {
  if (!(std::abs(s_sharp) * dt <= 0.5 * dx)) {
    std::ostringstream os;
    os << "interface CFL guard violated: |s#| dt = " << std::abs(s_sharp) * dt
       << " exceeds dx/2 = " << 0.5 * dx;
    throw SolverError(os.str());
  }
  track.x_gamma += s_sharp * dt;
  track.last_speed = s_sharp;
}

RefillResult fill_phase_change_cells(std::span<double> rho, std::span<double> mom,
                                     std::span<double> E, std::span<double> J,
                                     int f_old, int f_new,
                                     const std::array<double, 4>& star_left_cons,
                                     const std::array<double, 4>& star_right_cons,
                                     double dx) {
  RefillResult res;
  const bool grew_left = f_new > f_old;  // cells joined the left phase
  const int lo = grew_left ? f_old : f_new;
  const int hi = grew_left ? f_new : f_old;
  const auto& star = grew_left ? star_left_cons : star_right_cons;
  for (int i = lo; i < hi; ++i) {
    res.delta[0] += (static_cast<long double>(star[0]) - rho[i]) * dx;
    res.delta[1] += (static_cast<long double>(star[1]) - mom[i]) * dx;
    res.delta[2] += (static_cast<long double>(star[2]) - E[i]) * dx;
    res.delta[3] += (static_cast<long double>(star[3]) - J[i]) * dx;
    rho[i] = star[0];
    mom[i] = star[1];
    E[i] = star[2];
    J[i] = star[3];
    ++res.cells;
  }
  return res;
}

}  // namespace gpr1d::ghost_fluid

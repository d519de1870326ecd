// Single-phase HLL numerical flux for the homogeneous system at interior cell
// faces, with Davis-type speed bounds extended by the thermo-acoustic speed.
#pragma once

#include <array>

#include "gpr1d/gpr_core.hpp"

namespace gpr1d::bulk_riemann {

// One side of a face: primitive state plus the derived quantities the flux
// needs. Star ghosts prescribe (T, e) explicitly, so they are stored rather
// than recomputed from the EOS.
struct FaceState {
  gpr_core::Prim w;
  double T = 0.0;  // temperature entering the thermal-impulse flux
  double e = 0.0;  // specific total energy
  double q = 0.0;  // heat flux alpha^2 T j
  double a = 0.0;  // local signal bound max(c_s, c_h)
};

FaceState face_state(const gpr_core::Material&, const gpr_core::Prim&);
// (T, e) prescribed (interfacial star states); c_s still bounds via the EOS.
FaceState face_state_frozen(const gpr_core::Material&, const gpr_core::Prim&,
                            double T, double e);

std::array<double, 4> physical_flux(const FaceState&);
std::array<double, 4> conserved(const FaceState&);

// Two-wave HLL with s_L = min(u_L - a_L, u_R - a_R), s_R symmetric.
std::array<double, 4> hll_flux(const FaceState& L, const FaceState& R);
std::array<double, 4> hll_flux(const gpr_core::Material&, const gpr_core::Prim& L,
                               const gpr_core::Prim& R);

}  // namespace gpr1d::bulk_riemann

// HLL flux assembly for the homogeneous part of the system.
#include "gpr1d/bulk_riemann.hpp"

#include <algorithm>
#include <cmath>

#include "gpr1d/thermo.hpp"

namespace gpr1d::bulk_riemann {

FaceState face_state(const gpr_core::Material& m, const gpr_core::Prim& w) {
  FaceState fs;
  fs.w = w;
  const double v = 1.0 / w.rho;
  fs.T = thermo::temperature_from_rho_p(m.eos, w.rho, w.p);
  const double eps = thermo::internal_energy_Tv(m.eos, fs.T, v);
  fs.e = eps + 0.5 * w.u * w.u + 0.5 * m.alpha2 * w.j * w.j;
  fs.q = gpr_core::heat_flux(m, fs.T, w.j);
  fs.a = std::max(std::sqrt(thermo::sound_speed_sq_Tv(m.eos, fs.T, v)),
                  gpr_core::c_h(m, w.rho, fs.T));
  return fs;
}

FaceState face_state_frozen(const gpr_core::Material& m, const gpr_core::Prim& w,
                            double T, double e) {
  FaceState fs;
  fs.w = w;
  fs.T = T;
  fs.e = e;
  fs.q = gpr_core::heat_flux(m, T, w.j);
  // Acoustic bound from the EOS at (rho, p); thermal bound at the held T.
  const double T_eos = thermo::temperature_from_rho_p(m.eos, w.rho, w.p);
  fs.a = std::max(std::sqrt(thermo::sound_speed_sq_Tv(m.eos, T_eos, 1.0 / w.rho)),
                  gpr_core::c_h(m, w.rho, T));
  return fs;
}

std::array<double, 4> physical_flux(const FaceState& s) {
  const double rho = s.w.rho, u = s.w.u, p = s.w.p, j = s.w.j;
  return {rho * u, rho * u * u + p, (rho * s.e + p) * u + s.q, rho * j * u + s.T};
}

std::array<double, 4> conserved(const FaceState& s) {
  const double rho = s.w.rho;
  return {rho, rho * s.w.u, rho * s.e, rho * s.w.j};
}

std::array<double, 4> hll_flux(const FaceState& L, const FaceState& R) {
  const double s_l = std::min(L.w.u - L.a, R.w.u - R.a);
  const double s_r = std::max(L.w.u + L.a, R.w.u + R.a);
  const auto f_l = physical_flux(L);
  if (s_l >= 0.0) return f_l;
  const auto f_r = physical_flux(R);
  if (s_r <= 0.0) return f_r;
  const auto u_l = conserved(L);
  const auto u_r = conserved(R);
  std::array<double, 4> f{};
  const double inv = 1.0 / (s_r - s_l);
  for (int c = 0; c < 4; ++c)
    f[c] = (s_r * f_l[c] - s_l * f_r[c] + s_l * s_r * (u_r[c] - u_l[c])) * inv;
  return f;
}

std::array<double, 4> hll_flux(const gpr_core::Material& m, const gpr_core::Prim& L,
                               const gpr_core::Prim& R) {
  return hll_flux(face_state(m, L), face_state(m, R));
}

}  // namespace gpr1d::bulk_riemann

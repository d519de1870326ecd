// Classical reference model for validating the hyperbolic heat-conduction
// limit: compressible Euler advanced with the same MUSCL/RK4/HLL machinery,
// plus operator-split explicit Fourier diffusion of the internal energy.
#pragma once

#include <vector>

#include "gpr1d/field_solver.hpp"
#include "gpr1d/gpr_core.hpp"
#include "gpr1d/thermo.hpp"

namespace gpr1d::reference_fourier {

// Three-equation Euler + Fourier solver on a uniform 1D grid. Only ideal and
// stiffened equations of state are supported (constant c_p = c_v + R). The
// thermal impulse plays no role here; Prim.j is ignored on input and reported
// as zero.
class EulerFourierSim {
 public:
  EulerFourierSim(const thermo::Eos&, double lambda, int cells, double x_min,
                  double x_max, field_solver::Boundary left,
                  field_solver::Boundary right);

  void init_uniform(const gpr_core::Prim&);
  void init_riemann(const gpr_core::Prim& left, const gpr_core::Prim& right,
                    double x_split);

  // min(convective CFL bound, parabolic bound dx^2 / (2 d_alpha)) with
  // d_alpha = lambda / (rho_min c_p).
  double compute_dt(double cfl) const;
  void step(double dt);  // hyperbolic RK4 update, then diffuse(dt)
  void diffuse(double dt);
  long run(double t_end, double cfl);

  int cells() const { return n_; }
  double dx() const { return dx_; }
  double x_min() const { return x0_; }
  double x_center(int i) const { return x0_ + (i + 0.5) * dx_; }
  double time() const { return time_; }
  long steps() const { return steps_; }
  double lambda() const { return lambda_; }
  const thermo::Eos& eos() const { return eos_; }

  gpr_core::Prim primitive(int i) const;  // j = 0
  double temperature(int i) const;
  // Fourier flux -lambda dT/dx, centered in the interior and one-sided at
  // the ends.
  double heat_flux(int i) const;

 private:
  struct Prim3 {
    double rho, u, p;
  };

  Prim3 decode(const double* rho, const double* mom, const double* E,
               int i, double* T_out) const;
  Prim3 ghost_prim(const field_solver::Boundary&, const Prim3& interior) const;
  void rhs(const double* rho, const double* mom, const double* E,
           double* k_rho, double* k_mom, double* k_E);

  thermo::Eos eos_;
  double lambda_ = 0.0;
  double cp_ = 0.0;
  int n_ = 0;
  double x0_ = 0.0, dx_ = 0.0;
  field_solver::Boundary bc_l_, bc_r_;

  std::vector<double> rho_, mom_, E_;
  double time_ = 0.0;
  long steps_ = 0;

  // Scratch, reused across stages.
  mutable std::vector<double> w_[3], T_;
  std::vector<double> slope_[3], flux_[3];
  std::vector<double> k_[4][3], cand_[3], Tdiff_, Fd_;
};

}  // namespace gpr1d::reference_fourier

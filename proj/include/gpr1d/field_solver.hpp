// 1D finite-volume driver: MUSCL-minmod reconstruction, HLL fluxes, classical
// RK4 with per-stage relaxation of the thermal impulse, boundary conditions,
// and the sharp-interface hook for two-phase runs.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gpr1d/bulk_riemann.hpp"
#include "gpr1d/ghost_fluid.hpp"
#include "gpr1d/gpr_core.hpp"
#include "gpr1d/hllp.hpp"
#include "gpr1d/relax_integrator.hpp"

namespace gpr1d::field_solver {

enum class BcKind { Transmissive, Reflective, HeatFluxWall, Inflow };

struct Boundary {
  BcKind kind = BcKind::Transmissive;
  double T_wall = 0.0;
  double h = 0.0;  // heat transmission coefficient, > 0 for HeatFluxWall
  gpr_core::Prim inflow{};
};

// Running conservation bookkeeping (mass, momentum, energy). The identity
//   totals(t) - initial = boundary + interface_imbalance + refill
// holds to accumulator precision; the thermal impulse is excluded since its
// relaxation source is not conservative.
struct ConservationLedger {
  std::array<long double, 3> initial{};
  std::array<long double, 3> boundary{};              // net wall-flux integral
  std::array<long double, 3> interface_imbalance{};   // dual-flux mismatch integral
  std::array<long double, 3> refill{};                // phase-change overwrite defect
};

struct TwoPhaseSetup {
  gpr_core::Material liquid, vapor;
  ghost_fluid::InterfaceTrack track;
  hllp::SolverKind solver = hllp::SolverKind::Mq;
  double delta_p_sigma = 0.0;
};

class Simulation {
 public:
  Simulation(const gpr_core::Material&, int cells, double x_min, double x_max,
             Boundary left, Boundary right,
             relax_integrator::SourceIntegrator integrator);
  Simulation(const TwoPhaseSetup&, int cells, double x_min, double x_max,
             Boundary left, Boundary right,
             relax_integrator::SourceIntegrator integrator);

  void init_uniform(const gpr_core::Prim&);
  void init_riemann(const gpr_core::Prim& left, const gpr_core::Prim& right,
                    double x_split);
  // Cell-center sampled initial data, one primitive state per cell.
  void init_profile(const std::vector<gpr_core::Prim>& cells);
  // Two-phase initial data split at the tracked interface position.
  void init_two_phase(const gpr_core::Prim& left, const gpr_core::Prim& right);

  double compute_dt(double cfl) const;
  void step(double dt);
  long run(double t_end, double cfl);

  int cells() const { return n_; }
  double dx() const { return dx_; }
  double x_min() const { return x0_; }
  double x_center(int i) const { return x0_ + (i + 0.5) * dx_; }
  double time() const { return time_; }
  long steps() const { return steps_; }
  bool two_phase() const { return two_phase_; }
  bool is_left_phase(int i) const { return i < face_; }
  bool is_liquid(int i) const { return is_left_phase(i) == liquid_left_; }
  const gpr_core::Material& material(int i) const {
    return mats_[is_left_phase(i) ? 0 : 1];
  }
  std::array<double, 4> conserved(int i) const {
    return {rho_[i], mom_[i], E_[i], J_[i]};
  }
  gpr_core::Prim primitive(int i) const;
  double temperature(int i) const;

  const ConservationLedger& ledger() const { return ledger_; }
  std::array<long double, 3> totals() const;
  // Max over components of the bookkeeping-identity defect, relative.
  double conservation_defect() const;
  const std::optional<hllp::InterfaceSolution>& last_interface() const {
    return last_sol_;
  }
  double x_gamma() const { return track_.x_gamma; }
  double last_s_sharp() const { return track_.last_speed; }
  long interface_solves() const { return interface_solves_; }
  long refill_events() const { return refill_events_; }
  long refill_cells() const { return refill_cells_; }
  double mass_transfer_integral() const { return static_cast<double>(mdot_dt_); }
  double min_chi() const { return min_chi_; }

 private:
  struct StageRecord {
    std::array<double, 4> wall_l{}, wall_r{};    // wall-face fluxes
    std::array<double, 4> gamma_l{}, gamma_r{};  // dual interface-face fluxes
  };

  void allocate();
  void reset_ledger();
  gpr_core::Prim decode(const double* rho, const double* mom, const double* E,
                        const double* J, int i, double* T_out) const;
  gpr_core::Prim ghost_prim(const Boundary&, const gpr_core::Prim& interior) const;
  void rhs(const double* rho, const double* mom, const double* E, const double* J,
           double* k_rho, double* k_mom, double* k_E, double* k_J, StageRecord&);
  void relax_into(const double* J_base, double dt_stage,
                  const std::vector<double>& tau_H, std::vector<double>& J_cand) const;
  void prepare_interface();

  std::array<gpr_core::Material, 2> mats_;  // [0] left-side phase, [1] right-side
  bool two_phase_ = false;
  bool liquid_left_ = true;
  hllp::SolverKind ikind_ = hllp::SolverKind::Mq;
  double dps_ = 0.0;
  ghost_fluid::InterfaceTrack track_;
  int n_ = 0;
  double x0_ = 0.0, dx_ = 0.0;
  Boundary bc_l_, bc_r_;
  relax_integrator::SourceIntegrator integ_;

  std::vector<double> rho_, mom_, E_, J_;
  double time_ = 0.0;
  long steps_ = 0;

  // Per-step interface data, frozen across RK stages.
  int face_ = 0;  // first right-side cell; equals n for single-phase runs
  ghost_fluid::PhysicalInterface pif_;
  bulk_riemann::FaceState star_fs_left_, star_fs_right_;
  std::array<double, 4> star_cons_left_{}, star_cons_right_{};

  // Scratch buffers reused across stages.
  mutable std::vector<double> w_[4], T_, tauH_;
  std::vector<double> slope_[4], flux_[4];
  std::vector<double> k_[4][4], cand_[4], tauH1_;

  ConservationLedger ledger_;
  std::optional<hllp::InterfaceSolution> last_sol_;
  long interface_solves_ = 0, refill_events_ = 0, refill_cells_ = 0;
  long double mdot_dt_ = 0.0;
  double min_chi_ = 0.0;
  bool min_chi_set_ = false;
};

// |u| + max(c_s, c_h) building block for CFL bounds.
double signal_speed(double u, double c_s, double c_h);

}  // namespace gpr1d::field_solver

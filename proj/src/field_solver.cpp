// Finite-volume driver implementation. The interface Riemann problem is
// solved once per step and its star data frozen across the four RK stages;
// conservation bookkeeping uses long double accumulators so the identity
// totals - initial = boundary + imbalance + refill holds to roundoff.
#include "gpr1d/field_solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gpr1d/errors.hpp"
#include "gpr1d/thermo.hpp"

namespace gpr1d::field_solver {

double signal_speed(double u, double c_s, double c_h) {
  return std::abs(u) + std::max(c_s, c_h);
}

namespace {

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

std::array<double, 4> prim_array(const gpr_core::Prim& w) {
  return {w.rho, w.u, w.p, w.j};
}

// Simpson-consistent RK4 stage weights for the flux time integrals.
constexpr double kStageWeight[4] = {1.0 / 6.0, 2.0 / 6.0, 2.0 / 6.0, 1.0 / 6.0};

void validate_boundary(const Boundary& b, const char* side) {
  if (b.kind == BcKind::HeatFluxWall && !(b.h > 0.0)) {
    std::ostringstream os;
    os << side << " boundary: heat-flux wall requires h > 0";
    throw ConfigError(os.str());
  }
  if (b.kind == BcKind::HeatFluxWall && !(b.T_wall > 0.0)) {
    std::ostringstream os;
    os << side << " boundary: heat-flux wall requires T_wall > 0";
    throw ConfigError(os.str());
  }
}

}  // namespace

Simulation::Simulation(const gpr_core::Material& m, int cells, double x_min,
                       double x_max, Boundary left, Boundary right,
                       relax_integrator::SourceIntegrator integrator)
    : mats_{m, m},
      two_phase_(false),
      n_(cells),
      x0_(x_min),
      bc_l_(left),
      bc_r_(right),
      integ_(integrator) {
  if (cells < 4) throw ConfigError("grid needs at least 4 cells");
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
    throw ConfigError("domain bounds must be finite with x_max > x_min");
  validate_boundary(bc_l_, "left");
  validate_boundary(bc_r_, "right");
  dx_ = (x_max - x_min) / cells;
  face_ = n_;  // no interface: every cell is "left phase"
  allocate();
}

Simulation::Simulation(const TwoPhaseSetup& s, int cells, double x_min,
                       double x_max, Boundary left, Boundary right,
                       relax_integrator::SourceIntegrator integrator)
    : two_phase_(true),
      ikind_(s.solver),
      dps_(s.delta_p_sigma),
      track_(s.track),
      n_(cells),
      x0_(x_min),
      bc_l_(left),
      bc_r_(right),
      integ_(integrator) {
  if (cells < 4) throw ConfigError("grid needs at least 4 cells");
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
    throw ConfigError("domain bounds must be finite with x_max > x_min");
  validate_boundary(bc_l_, "left");
  validate_boundary(bc_r_, "right");
  dx_ = (x_max - x_min) / cells;
  liquid_left_ = track_.liquid_side == ghost_fluid::Side::Left;
  mats_[0] = liquid_left_ ? s.liquid : s.vapor;
  mats_[1] = liquid_left_ ? s.vapor : s.liquid;
  face_ = ghost_fluid::interface_face(track_.x_gamma, x0_, dx_, n_);
  allocate();
}

void Simulation::allocate() {
  const size_t n = static_cast<size_t>(n_);
  rho_.assign(n, 0.0);
  mom_.assign(n, 0.0);
  E_.assign(n, 0.0);
  J_.assign(n, 0.0);
  for (int c = 0; c < 4; ++c) {
    w_[c].assign(n, 0.0);
    slope_[c].assign(n, 0.0);
    flux_[c].assign(n + 1, 0.0);
    cand_[c].assign(n, 0.0);
    for (int s = 0; s < 4; ++s) k_[s][c].assign(n, 0.0);
  }
  T_.assign(n, 0.0);
  tauH_.assign(n, 0.0);
  tauH1_.assign(n, 0.0);
}

void Simulation::reset_ledger() {
  ledger_ = ConservationLedger{};
  auto t = totals();
  for (int c = 0; c < 3; ++c) ledger_.initial[c] = t[c];
  time_ = 0.0;
  steps_ = 0;
  interface_solves_ = refill_events_ = refill_cells_ = 0;
  mdot_dt_ = 0.0;
  min_chi_ = 0.0;
  min_chi_set_ = false;
  last_sol_.reset();
}

void Simulation::init_uniform(const gpr_core::Prim& w) {
  for (int i = 0; i < n_; ++i) {
    gpr_core::Cons u = gpr_core::to_cons(material(i), w);
    rho_[i] = u.rho;
    mom_[i] = u.mom;
    E_[i] = u.E;
    J_[i] = u.J;
  }
  reset_ledger();
}

void Simulation::init_profile(const std::vector<gpr_core::Prim>& cells) {
  if (static_cast<int>(cells.size()) != n_)
    throw ConfigError("init_profile: profile size does not match the grid");
  for (int i = 0; i < n_; ++i) {
    gpr_core::Cons u = gpr_core::to_cons(material(i), cells[i]);
    rho_[i] = u.rho;
    mom_[i] = u.mom;
    E_[i] = u.E;
    J_[i] = u.J;
  }
  reset_ledger();
}

void Simulation::init_riemann(const gpr_core::Prim& left,
                              const gpr_core::Prim& right, double x_split) {
  for (int i = 0; i < n_; ++i) {
    const gpr_core::Prim& w = x_center(i) < x_split ? left : right;
    gpr_core::Cons u = gpr_core::to_cons(material(i), w);
    rho_[i] = u.rho;
    mom_[i] = u.mom;
    E_[i] = u.E;
    J_[i] = u.J;
  }
  reset_ledger();
}

void Simulation::init_two_phase(const gpr_core::Prim& left,
                                const gpr_core::Prim& right) {
  if (!two_phase_)
    throw ConfigError("init_two_phase requires a two-phase simulation");
  for (int i = 0; i < n_; ++i) {
    const gpr_core::Prim& w = i < face_ ? left : right;
    gpr_core::Cons u = gpr_core::to_cons(mats_[i < face_ ? 0 : 1], w);
    rho_[i] = u.rho;
    mom_[i] = u.mom;
    E_[i] = u.E;
    J_[i] = u.J;
  }
  reset_ledger();
}

gpr_core::Prim Simulation::decode(const double* rho, const double* mom,
                                  const double* E, const double* J, int i,
                                  double* T_out) const {
  const gpr_core::Material& mat = mats_[i < face_ ? 0 : 1];
  try {
    const double r = rho[i];
    if (!(r > 0.0) || !std::isfinite(r))
      throw gpr_core::StateError("non-positive or non-finite density");
    const double u = mom[i] / r;
    const double j = J[i] / r;
    const double eps =
        E[i] / r - 0.5 * u * u - 0.5 * mat.alpha2 * j * j;
    const double T = thermo::temperature_from_rho_eps(mat.eos, r, eps);
    if (T_out) *T_out = T;
    return {r, u, thermo::pressure_Tv(mat.eos, T, 1.0 / r), j};
  } catch (const Error& e) {
    std::ostringstream os;
    os << "cell " << i << " (x=" << x_center(i)
       << "): state decode failed: " << e.what();
    throw SolverError(os.str());
  }
}

gpr_core::Prim Simulation::ghost_prim(const Boundary& b,
                                      const gpr_core::Prim& interior) const {
  switch (b.kind) {
    case BcKind::Transmissive:
      return interior;
    case BcKind::Reflective:
    case BcKind::HeatFluxWall:
      return ghost_fluid::mirrored(interior);
    case BcKind::Inflow:
      return b.inflow;
  }
  throw ConfigError("unknown boundary kind");
}

void Simulation::rhs(const double* rho, const double* mom, const double* E,
                     const double* J, double* k_rho, double* k_mom, double* k_E,
                     double* k_J, StageRecord& rec) {
  const int n = n_;

  for (int i = 0; i < n; ++i) {
    double T = 0.0;
    gpr_core::Prim w = decode(rho, mom, E, J, i, &T);
    w_[0][i] = w.rho;
    w_[1][i] = w.u;
    w_[2][i] = w.p;
    w_[3][i] = w.j;
    T_[i] = T;
    tauH_[i] = gpr_core::tau_H(mats_[i < face_ ? 0 : 1], w.rho, T);
  }

  const gpr_core::Prim in_l{w_[0][0], w_[1][0], w_[2][0], w_[3][0]};
  const gpr_core::Prim in_r{w_[0][n - 1], w_[1][n - 1], w_[2][n - 1],
                            w_[3][n - 1]};
  const std::array<double, 4> gl = prim_array(ghost_prim(bc_l_, in_l));
  const std::array<double, 4> gr = prim_array(ghost_prim(bc_r_, in_r));
  const std::array<double, 4> star_l = prim_array(pif_.star_left);
  const std::array<double, 4> star_r = prim_array(pif_.star_right);

  // Minmod slopes on (rho, u, p, j); ghosts carry zero slope, and neighbors
  // across the phase boundary are replaced by the frozen star states.
  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < 4; ++c) {
      const double wc = w_[c][i];
      double wm = i == 0 ? gl[c] : w_[c][i - 1];
      double wp = i == n - 1 ? gr[c] : w_[c][i + 1];
      if (two_phase_) {
        if (i == face_ - 1)
          wp = star_l[c];
        else if (i == face_)
          wm = star_r[c];
      }
      slope_[c][i] = minmod(wc - wm, wp - wc);
    }
  }

  auto recon = [&](int cell, double side) {
    return gpr_core::Prim{w_[0][cell] + side * 0.5 * slope_[0][cell],
                          w_[1][cell] + side * 0.5 * slope_[1][cell],
                          w_[2][cell] + side * 0.5 * slope_[2][cell],
                          w_[3][cell] + side * 0.5 * slope_[3][cell]};
  };

  for (int k = 0; k <= n; ++k) {
    std::array<double, 4> F;
    try {
      if (k == 0 && bc_l_.kind == BcKind::HeatFluxWall) {
        // Impermeable wall: no mass or momentum-advection flux. The energy
        // flux is the prescribed wall heat exchange using cell (not
        // reconstructed) values; the thermal-impulse flux reduces to T.
        F = {0.0, w_[2][0], w_[0][0] * bc_l_.h * (bc_l_.T_wall - T_[0]),
             T_[0]};
      } else if (k == n && bc_r_.kind == BcKind::HeatFluxWall) {
        F = {0.0, w_[2][n - 1],
             w_[0][n - 1] * bc_r_.h * (T_[n - 1] - bc_r_.T_wall), T_[n - 1]};
      } else if (two_phase_ && k == face_) {
        // Dual interface flux: each side sees its own star ghost. The left
        // flux is stored in flux_; the right one is substituted in the
        // update loop for cell face_.
        bulk_riemann::FaceState fsl =
            bulk_riemann::face_state(mats_[0], recon(face_ - 1, +1.0));
        rec.gamma_l = bulk_riemann::hll_flux(fsl, star_fs_left_);
        bulk_riemann::FaceState fsr =
            bulk_riemann::face_state(mats_[1], recon(face_, -1.0));
        rec.gamma_r = bulk_riemann::hll_flux(star_fs_right_, fsr);
        F = rec.gamma_l;
      } else {
        const gpr_core::Material& mat = mats_[k < face_ ? 0 : 1];
        const gpr_core::Prim wl =
            k == 0 ? gpr_core::Prim{gl[0], gl[1], gl[2], gl[3]}
                   : recon(k - 1, +1.0);
        const gpr_core::Prim wr =
            k == n ? gpr_core::Prim{gr[0], gr[1], gr[2], gr[3]}
                   : recon(k, -1.0);
        F = bulk_riemann::hll_flux(mat, wl, wr);
      }
    } catch (const Error& e) {
      std::ostringstream os;
      os << "face " << k << " (x=" << x0_ + k * dx_
         << "): flux evaluation failed: " << e.what();
      throw SolverError(os.str());
    }
    for (int c = 0; c < 4; ++c) flux_[c][k] = F[c];
  }

  for (int c = 0; c < 4; ++c) {
    rec.wall_l[c] = flux_[c][0];
    rec.wall_r[c] = flux_[c][n];
  }

  const double inv_dx = 1.0 / dx_;
  for (int i = 0; i < n; ++i) {
    std::array<double, 4> FL{flux_[0][i], flux_[1][i], flux_[2][i],
                             flux_[3][i]};
    if (two_phase_ && i == face_) FL = rec.gamma_r;
    k_rho[i] = -(flux_[0][i + 1] - FL[0]) * inv_dx;
    k_mom[i] = -(flux_[1][i + 1] - FL[1]) * inv_dx;
    k_E[i] = -(flux_[2][i + 1] - FL[2]) * inv_dx;
    k_J[i] = -(flux_[3][i + 1] - FL[3]) * inv_dx;
  }
}

void Simulation::relax_into(const double* J_base, double dt_stage,
                            const std::vector<double>& tau_H,
                            std::vector<double>& J_cand) const {
  if (integ_ == relax_integrator::SourceIntegrator::SemiAnalytic) {
    for (int i = 0; i < n_; ++i)
      J_cand[i] = relax_integrator::semi_analytic_update(J_base[i], J_cand[i],
                                                         dt_stage, tau_H[i]);
  } else {
    for (int i = 0; i < n_; ++i) {
      const int m = relax_integrator::stable_substeps(dt_stage, tau_H[i]);
      J_cand[i] =
          relax_integrator::explicit_update(J_cand[i], dt_stage, tau_H[i], m);
    }
  }
}

void Simulation::prepare_interface() {
  face_ = ghost_fluid::interface_face(track_.x_gamma, x0_, dx_, n_);
  double Tl = 0.0, Tr = 0.0;
  const gpr_core::Prim wl =
      decode(rho_.data(), mom_.data(), E_.data(), J_.data(), face_ - 1, &Tl);
  const gpr_core::Prim wr =
      decode(rho_.data(), mom_.data(), E_.data(), J_.data(), face_, &Tr);
  const gpr_core::Material& liq = mats_[liquid_left_ ? 0 : 1];
  const gpr_core::Material& vap = mats_[liquid_left_ ? 1 : 0];
  pif_ = ghost_fluid::solve_interface(ikind_, liq, vap, wl, wr,
                                      track_.liquid_side, dps_);
  star_fs_left_ = bulk_riemann::face_state_frozen(mats_[0], pif_.star_left,
                                                  pif_.T_left, pif_.e_left);
  star_fs_right_ = bulk_riemann::face_state_frozen(mats_[1], pif_.star_right,
                                                   pif_.T_right, pif_.e_right);
  // Star fluxes carry the heat flux the interface solution balanced its
  // energy jumps with, so the adjacent cells are drained exactly the energy
  // the phase-transition closure accounted for.
  star_fs_left_.q = pif_.q_left;
  star_fs_right_.q = pif_.q_right;
  star_cons_left_ = bulk_riemann::conserved(star_fs_left_);
  star_cons_right_ = bulk_riemann::conserved(star_fs_right_);
  last_sol_ = pif_.canonical;
  ++interface_solves_;
  if (!min_chi_set_ || pif_.canonical.chi < min_chi_) {
    min_chi_ = pif_.canonical.chi;
    min_chi_set_ = true;
  }
}

void Simulation::step(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw SolverError("step requires a positive finite dt");
  if (two_phase_) prepare_interface();

  StageRecord rec[4];

  // Stage 1 evaluates at U_n; its relaxation times also drive the final
  // relaxation, so they are copied aside before later stages overwrite them.
  rhs(rho_.data(), mom_.data(), E_.data(), J_.data(), k_[0][0].data(),
      k_[0][1].data(), k_[0][2].data(), k_[0][3].data(), rec[0]);
  tauH1_ = tauH_;

  auto build_candidate = [&](int stage, double c) {
    const double f = c * dt;
    for (int i = 0; i < n_; ++i) {
      cand_[0][i] = rho_[i] + f * k_[stage][0][i];
      cand_[1][i] = mom_[i] + f * k_[stage][1][i];
      cand_[2][i] = E_[i] + f * k_[stage][2][i];
      cand_[3][i] = J_[i] + f * k_[stage][3][i];
    }
  };

  build_candidate(0, 0.5);
  relax_into(J_.data(), 0.5 * dt, tauH1_, cand_[3]);
  rhs(cand_[0].data(), cand_[1].data(), cand_[2].data(), cand_[3].data(),
      k_[1][0].data(), k_[1][1].data(), k_[1][2].data(), k_[1][3].data(),
      rec[1]);

  build_candidate(1, 0.5);
  relax_into(J_.data(), 0.5 * dt, tauH_, cand_[3]);
  rhs(cand_[0].data(), cand_[1].data(), cand_[2].data(), cand_[3].data(),
      k_[2][0].data(), k_[2][1].data(), k_[2][2].data(), k_[2][3].data(),
      rec[2]);

  build_candidate(2, 1.0);
  relax_into(J_.data(), dt, tauH_, cand_[3]);
  rhs(cand_[0].data(), cand_[1].data(), cand_[2].data(), cand_[3].data(),
      k_[3][0].data(), k_[3][1].data(), k_[3][2].data(), k_[3][3].data(),
      rec[3]);

  const double w1 = dt / 6.0, w2 = dt / 3.0;
  for (int i = 0; i < n_; ++i) {
    cand_[0][i] = rho_[i] + w1 * (k_[0][0][i] + k_[3][0][i]) +
                  w2 * (k_[1][0][i] + k_[2][0][i]);
    cand_[1][i] = mom_[i] + w1 * (k_[0][1][i] + k_[3][1][i]) +
                  w2 * (k_[1][1][i] + k_[2][1][i]);
    cand_[2][i] = E_[i] + w1 * (k_[0][2][i] + k_[3][2][i]) +
                  w2 * (k_[1][2][i] + k_[2][2][i]);
    cand_[3][i] = J_[i] + w1 * (k_[0][3][i] + k_[3][3][i]) +
                  w2 * (k_[1][3][i] + k_[2][3][i]);
  }
  relax_into(J_.data(), dt, tauH1_, cand_[3]);
  rho_.swap(cand_[0]);
  mom_.swap(cand_[1]);
  E_.swap(cand_[2]);
  J_.swap(cand_[3]);

  for (int c = 0; c < 3; ++c) {
    long double bsum = 0.0L, isum = 0.0L;
    for (int s = 0; s < 4; ++s) {
      bsum += static_cast<long double>(kStageWeight[s]) *
              (static_cast<long double>(rec[s].wall_l[c]) -
               static_cast<long double>(rec[s].wall_r[c]));
      isum += static_cast<long double>(kStageWeight[s]) *
              (static_cast<long double>(rec[s].gamma_r[c]) -
               static_cast<long double>(rec[s].gamma_l[c]));
    }
    ledger_.boundary[c] += static_cast<long double>(dt) * bsum;
    if (two_phase_)
      ledger_.interface_imbalance[c] += static_cast<long double>(dt) * isum;
  }

  if (two_phase_) {
    mdot_dt_ += static_cast<long double>(pif_.canonical.mdot) *
                static_cast<long double>(dt);
    ghost_fluid::advect_interface(track_, pif_.s_sharp, dt, dx_);
    const int f_new = ghost_fluid::interface_face(track_.x_gamma, x0_, dx_, n_);
    if (f_new != face_) {
      ghost_fluid::RefillResult res = ghost_fluid::fill_phase_change_cells(
          rho_, mom_, E_, J_, face_, f_new, star_cons_left_, star_cons_right_,
          dx_);
      for (int c = 0; c < 3; ++c) ledger_.refill[c] += res.delta[c];
      ++refill_events_;
      refill_cells_ += res.cells;
      face_ = f_new;
    }
  }

  time_ += dt;
  ++steps_;
}

double Simulation::compute_dt(double cfl) const {
  if (!(cfl > 0.0) || cfl > 1.0)
    throw ConfigError("cfl must lie in (0, 1]");
  double smax = 0.0;
  for (int i = 0; i < n_; ++i) {
    double T = 0.0;
    gpr_core::Prim w =
        decode(rho_.data(), mom_.data(), E_.data(), J_.data(), i, &T);
    const double s =
        gpr_core::max_signal_speed(mats_[i < face_ ? 0 : 1], w, T);
    if (!std::isfinite(s))
      throw SolverError("non-finite signal speed while sizing the time step");
    smax = std::max(smax, s);
  }
  if (!(smax > 0.0))
    throw SolverError("vanishing maximum signal speed while sizing the time step");
  double dt = cfl * dx_ / smax;
  if (two_phase_) {
    const double sp = std::abs(track_.last_speed);
    if (sp > 0.0) dt = std::min(dt, 0.5 * dx_ / sp);
  }
  return dt;
}

long Simulation::run(double t_end, double cfl) {
  if (!(t_end >= 0.0) || !std::isfinite(t_end))
    throw ConfigError("t_end must be non-negative and finite");
  const long start = steps_;
  while (time_ < t_end * (1.0 - 1e-12)) {
    const double dt = std::min(compute_dt(cfl), t_end - time_);
    if (!(dt > 0.0)) throw SolverError("time step collapsed to zero");
    step(dt);
  }
  return steps_ - start;
}

gpr_core::Prim Simulation::primitive(int i) const {
  double T = 0.0;
  return decode(rho_.data(), mom_.data(), E_.data(), J_.data(), i, &T);
}

double Simulation::temperature(int i) const {
  double T = 0.0;
  decode(rho_.data(), mom_.data(), E_.data(), J_.data(), i, &T);
  return T;
}

std::array<long double, 3> Simulation::totals() const {
  std::array<long double, 3> t{};
  for (int i = 0; i < n_; ++i) {
    t[0] += static_cast<long double>(rho_[i]);
    t[1] += static_cast<long double>(mom_[i]);
    t[2] += static_cast<long double>(E_[i]);
  }
  for (auto& v : t) v *= static_cast<long double>(dx_);
  return t;
}

double Simulation::conservation_defect() const {
  const auto tot = totals();
  std::array<long double, 3> l1{};
  for (int i = 0; i < n_; ++i) {
    l1[0] += std::abs(static_cast<long double>(rho_[i]));
    l1[1] += std::abs(static_cast<long double>(mom_[i]));
    l1[2] += std::abs(static_cast<long double>(E_[i]));
  }
  double worst = 0.0;
  for (int c = 0; c < 3; ++c) {
    l1[c] *= static_cast<long double>(dx_);
    const long double expected = ledger_.initial[c] + ledger_.boundary[c] +
                                 ledger_.interface_imbalance[c] +
                                 ledger_.refill[c];
    const long double scale =
        std::max({std::abs(tot[c]), std::abs(ledger_.initial[c]), l1[c],
                  static_cast<long double>(1e-300)});
    worst = std::max(worst, static_cast<double>(std::abs(tot[c] - expected) / scale));
  }
  return worst;
}

}  // namespace gpr1d::field_solver

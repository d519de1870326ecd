// Euler + operator-split Fourier diffusion reference implementation.
#include "gpr1d/reference_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gpr1d/errors.hpp"

namespace gpr1d::reference_fourier {

namespace {

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

}  // namespace

EulerFourierSim::EulerFourierSim(const thermo::Eos& eos, double lambda,
                                 int cells, double x_min, double x_max,
                                 field_solver::Boundary left,
                                 field_solver::Boundary right)
    : eos_(eos),
      lambda_(lambda),
      n_(cells),
      x0_(x_min),
      bc_l_(left),
      bc_r_(right) {
  if (eos.kind == thermo::EosKind::PengRobinson)
    throw ConfigError(
        "the Euler-Fourier reference model requires an ideal or stiffened "
        "equation of state");
  if (!(lambda >= 0.0)) throw ConfigError("lambda must be non-negative");
  if (cells < 4) throw ConfigError("grid needs at least 4 cells");
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
    throw ConfigError("domain bounds must be finite with x_max > x_min");
  if (bc_l_.kind == field_solver::BcKind::HeatFluxWall && !(bc_l_.h > 0.0))
    throw ConfigError("left boundary: heat-flux wall requires h > 0");
  if (bc_r_.kind == field_solver::BcKind::HeatFluxWall && !(bc_r_.h > 0.0))
    throw ConfigError("right boundary: heat-flux wall requires h > 0");
  dx_ = (x_max - x_min) / cells;
  cp_ = eos_.cv + eos_.R;

  const size_t n = static_cast<size_t>(n_);
  rho_.assign(n, 0.0);
  mom_.assign(n, 0.0);
  E_.assign(n, 0.0);
  for (int c = 0; c < 3; ++c) {
    w_[c].assign(n, 0.0);
    slope_[c].assign(n, 0.0);
    flux_[c].assign(n + 1, 0.0);
    cand_[c].assign(n, 0.0);
    for (int s = 0; s < 4; ++s) k_[s][c].assign(n, 0.0);
  }
  T_.assign(n, 0.0);
  Tdiff_.assign(n, 0.0);
  Fd_.assign(n + 1, 0.0);
}

void EulerFourierSim::init_uniform(const gpr_core::Prim& w) {
  const double eps = thermo::internal_energy(eos_, w.rho, w.p);
  for (int i = 0; i < n_; ++i) {
    rho_[i] = w.rho;
    mom_[i] = w.rho * w.u;
    E_[i] = w.rho * (eps + 0.5 * w.u * w.u);
  }
  time_ = 0.0;
  steps_ = 0;
}

void EulerFourierSim::init_riemann(const gpr_core::Prim& left,
                                   const gpr_core::Prim& right,
                                   double x_split) {
  const double eps_l = thermo::internal_energy(eos_, left.rho, left.p);
  const double eps_r = thermo::internal_energy(eos_, right.rho, right.p);
  for (int i = 0; i < n_; ++i) {
    const bool is_left = x_center(i) < x_split;
    const gpr_core::Prim& w = is_left ? left : right;
    const double eps = is_left ? eps_l : eps_r;
    rho_[i] = w.rho;
    mom_[i] = w.rho * w.u;
    E_[i] = w.rho * (eps + 0.5 * w.u * w.u);
  }
  time_ = 0.0;
  steps_ = 0;
}

EulerFourierSim::Prim3 EulerFourierSim::decode(const double* rho,
                                               const double* mom,
                                               const double* E, int i,
                                               double* T_out) const {
  try {
    const double r = rho[i];
    if (!(r > 0.0) || !std::isfinite(r))
      throw gpr_core::StateError("non-positive or non-finite density");
    const double u = mom[i] / r;
    const double eps = E[i] / r - 0.5 * u * u;
    const double T = thermo::temperature_from_rho_eps(eos_, r, eps);
    if (T_out) *T_out = T;
    return {r, u, thermo::pressure_Tv(eos_, T, 1.0 / r)};
  } catch (const Error& e) {
    std::ostringstream os;
    os << "cell " << i << " (x=" << x_center(i)
       << "): state decode failed: " << e.what();
    throw SolverError(os.str());
  }
}

EulerFourierSim::Prim3 EulerFourierSim::ghost_prim(
    const field_solver::Boundary& b, const Prim3& interior) const {
  switch (b.kind) {
    case field_solver::BcKind::Transmissive:
      return interior;
    case field_solver::BcKind::Reflective:
    case field_solver::BcKind::HeatFluxWall:
      return {interior.rho, -interior.u, interior.p};
    case field_solver::BcKind::Inflow:
      return {b.inflow.rho, b.inflow.u, b.inflow.p};
  }
  throw ConfigError("unknown boundary kind");
}

void EulerFourierSim::rhs(const double* rho, const double* mom,
                          const double* E, double* k_rho, double* k_mom,
                          double* k_E) {
  const int n = n_;
  for (int i = 0; i < n; ++i) {
    Prim3 w = decode(rho, mom, E, i, nullptr);
    w_[0][i] = w.rho;
    w_[1][i] = w.u;
    w_[2][i] = w.p;
  }

  const Prim3 gl = ghost_prim(bc_l_, {w_[0][0], w_[1][0], w_[2][0]});
  const Prim3 gr =
      ghost_prim(bc_r_, {w_[0][n - 1], w_[1][n - 1], w_[2][n - 1]});
  const double gla[3] = {gl.rho, gl.u, gl.p};
  const double gra[3] = {gr.rho, gr.u, gr.p};

  for (int i = 0; i < n; ++i) {
    for (int c = 0; c < 3; ++c) {
      const double wc = w_[c][i];
      const double wm = i == 0 ? gla[c] : w_[c][i - 1];
      const double wp = i == n - 1 ? gra[c] : w_[c][i + 1];
      slope_[c][i] = minmod(wc - wm, wp - wc);
    }
  }

  auto recon = [&](int cell, double side) {
    return Prim3{w_[0][cell] + side * 0.5 * slope_[0][cell],
                 w_[1][cell] + side * 0.5 * slope_[1][cell],
                 w_[2][cell] + side * 0.5 * slope_[2][cell]};
  };
  auto phys = [&](const Prim3& w, double eps) {
    const double e = eps + 0.5 * w.u * w.u;
    return std::array<double, 3>{w.rho * w.u, w.rho * w.u * w.u + w.p,
                                 (w.rho * e + w.p) * w.u};
  };

  for (int k = 0; k <= n; ++k) {
    std::array<double, 3> F;
    try {
      if (k == 0 && bc_l_.kind == field_solver::BcKind::HeatFluxWall) {
        // Impermeable wall: pressure only; heat exchange is handled by the
        // diffusion substep.
        F = {0.0, w_[2][0], 0.0};
      } else if (k == n && bc_r_.kind == field_solver::BcKind::HeatFluxWall) {
        F = {0.0, w_[2][n - 1], 0.0};
      } else {
        const Prim3 wl = k == 0 ? gl : recon(k - 1, +1.0);
        const Prim3 wr = k == n ? gr : recon(k, -1.0);
        const double eps_l = thermo::internal_energy(eos_, wl.rho, wl.p);
        const double eps_r = thermo::internal_energy(eos_, wr.rho, wr.p);
        const double a_l = thermo::sound_speed(eos_, wl.rho, wl.p);
        const double a_r = thermo::sound_speed(eos_, wr.rho, wr.p);
        const double s_l = std::min(wl.u - a_l, wr.u - a_r);
        const double s_r = std::max(wl.u + a_l, wr.u + a_r);
        const auto FL = phys(wl, eps_l);
        const auto FR = phys(wr, eps_r);
        if (s_l >= 0.0) {
          F = FL;
        } else if (s_r <= 0.0) {
          F = FR;
        } else {
          const double UL[3] = {wl.rho, wl.rho * wl.u,
                                wl.rho * (eps_l + 0.5 * wl.u * wl.u)};
          const double UR[3] = {wr.rho, wr.rho * wr.u,
                                wr.rho * (eps_r + 0.5 * wr.u * wr.u)};
          for (int c = 0; c < 3; ++c)
            F[c] = (s_r * FL[c] - s_l * FR[c] + s_l * s_r * (UR[c] - UL[c])) /
                   (s_r - s_l);
        }
      }
    } catch (const Error& e) {
      std::ostringstream os;
      os << "face " << k << " (x=" << x0_ + k * dx_
         << "): flux evaluation failed: " << e.what();
      throw SolverError(os.str());
    }
    for (int c = 0; c < 3; ++c) flux_[c][k] = F[c];
  }

  const double inv_dx = 1.0 / dx_;
  for (int i = 0; i < n; ++i) {
    k_rho[i] = -(flux_[0][i + 1] - flux_[0][i]) * inv_dx;
    k_mom[i] = -(flux_[1][i + 1] - flux_[1][i]) * inv_dx;
    k_E[i] = -(flux_[2][i + 1] - flux_[2][i]) * inv_dx;
  }
}

void EulerFourierSim::diffuse(double dt) {
  if (lambda_ == 0.0) return;
  const int n = n_;

  double rho_min = rho_[0];
  for (int i = 1; i < n; ++i) rho_min = std::min(rho_min, rho_[i]);
  if (!(rho_min > 0.0)) throw SolverError("non-positive density in diffuse");
  const double d_alpha = lambda_ / (rho_min * cp_);
  if (!(dt <= (1.0 + 1e-9) * 0.5 * dx_ * dx_ / d_alpha))
    throw ConfigError("diffusion step exceeds the explicit parabolic bound");

  for (int i = 0; i < n; ++i)
    decode(rho_.data(), mom_.data(), E_.data(), i, &Tdiff_[i]);

  Fd_[0] = bc_l_.kind == field_solver::BcKind::HeatFluxWall
               ? rho_[0] * bc_l_.h * (bc_l_.T_wall - Tdiff_[0])
               : 0.0;
  Fd_[n] = bc_r_.kind == field_solver::BcKind::HeatFluxWall
               ? rho_[n - 1] * bc_r_.h * (Tdiff_[n - 1] - bc_r_.T_wall)
               : 0.0;
  for (int k = 1; k < n; ++k)
    Fd_[k] = -lambda_ * (Tdiff_[k] - Tdiff_[k - 1]) / dx_;

  const double f = dt / dx_;
  for (int i = 0; i < n; ++i) E_[i] -= f * (Fd_[i + 1] - Fd_[i]);
}

void EulerFourierSim::step(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw SolverError("step requires a positive finite dt");

  rhs(rho_.data(), mom_.data(), E_.data(), k_[0][0].data(), k_[0][1].data(),
      k_[0][2].data());
  auto build_candidate = [&](int stage, double c) {
    const double f = c * dt;
    for (int i = 0; i < n_; ++i) {
      cand_[0][i] = rho_[i] + f * k_[stage][0][i];
      cand_[1][i] = mom_[i] + f * k_[stage][1][i];
      cand_[2][i] = E_[i] + f * k_[stage][2][i];
    }
  };
  build_candidate(0, 0.5);
  rhs(cand_[0].data(), cand_[1].data(), cand_[2].data(), k_[1][0].data(),
      k_[1][1].data(), k_[1][2].data());
  build_candidate(1, 0.5);
  rhs(cand_[0].data(), cand_[1].data(), cand_[2].data(), k_[2][0].data(),
      k_[2][1].data(), k_[2][2].data());
  build_candidate(2, 1.0);
  rhs(cand_[0].data(), cand_[1].data(), cand_[2].data(), k_[3][0].data(),
      k_[3][1].data(), k_[3][2].data());

  const double w1 = dt / 6.0, w2 = dt / 3.0;
  for (int i = 0; i < n_; ++i) {
    rho_[i] += w1 * (k_[0][0][i] + k_[3][0][i]) + w2 * (k_[1][0][i] + k_[2][0][i]);
    mom_[i] += w1 * (k_[0][1][i] + k_[3][1][i]) + w2 * (k_[1][1][i] + k_[2][1][i]);
    E_[i] += w1 * (k_[0][2][i] + k_[3][2][i]) + w2 * (k_[1][2][i] + k_[2][2][i]);
  }

  diffuse(dt);

  time_ += dt;
  ++steps_;
}

double EulerFourierSim::compute_dt(double cfl) const {
  if (!(cfl > 0.0) || cfl > 1.0) throw ConfigError("cfl must lie in (0, 1]");
  double smax = 0.0;
  double rho_min = 0.0;
  for (int i = 0; i < n_; ++i) {
    Prim3 w = decode(rho_.data(), mom_.data(), E_.data(), i, nullptr);
    const double a = thermo::sound_speed(eos_, w.rho, w.p);
    smax = std::max(smax, std::abs(w.u) + a);
    rho_min = i == 0 ? w.rho : std::min(rho_min, w.rho);
  }
  if (!(smax > 0.0) || !std::isfinite(smax))
    throw SolverError("invalid maximum signal speed while sizing the time step");
  double dt = cfl * dx_ / smax;
  if (lambda_ > 0.0) {
    const double d_alpha = lambda_ / (rho_min * cp_);
    dt = std::min(dt, 0.5 * dx_ * dx_ / d_alpha);
  }
  return dt;
}

long EulerFourierSim::run(double t_end, double cfl) {
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

gpr_core::Prim EulerFourierSim::primitive(int i) const {
  Prim3 w = decode(rho_.data(), mom_.data(), E_.data(), i, nullptr);
  return {w.rho, w.u, w.p, 0.0};
}

double EulerFourierSim::temperature(int i) const {
  double T = 0.0;
  decode(rho_.data(), mom_.data(), E_.data(), i, &T);
  return T;
}

double EulerFourierSim::heat_flux(int i) const {
  if (lambda_ == 0.0) return 0.0;
  auto temp = [&](int k) { return temperature(k); };
  double dTdx;
  if (i == 0)
    dTdx = (temp(1) - temp(0)) / dx_;
  else if (i == n_ - 1)
    dTdx = (temp(n_ - 1) - temp(n_ - 2)) / dx_;
  else
    dTdx = (temp(i + 1) - temp(i - 1)) / (2.0 * dx_);
  return -lambda_ * dTdx;
}

}  // namespace gpr1d::reference_fourier
